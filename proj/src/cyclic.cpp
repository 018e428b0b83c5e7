#include "circleconv/cyclic.hpp"

#include <unsupported/Eigen/FFT>

namespace circleconv {

namespace {

// Eigen's forward transform uses exp(-2 pi i l t / N); for real input the
// conjugate gives the exp(+2 pi i l t / N) convention used throughout.
Eigen::VectorXcd forward(const Eigen::VectorXd& real) {
  Eigen::FFT<double> fft;
  Eigen::VectorXcd out;
  fft.fwd(out, real);
  return out;
}

}  // namespace

Eigen::VectorXcd dft(const CyclicMeasure& a) {
  if (a.modulus() == 1) return Eigen::VectorXcd::Ones(1);
  return forward(a.weights()).conjugate();
}

CyclicMeasure convolve_fft(const CyclicMeasure& a, const CyclicMeasure& b) {
  if (a.modulus() != b.modulus()) {
    throw std::invalid_argument("convolution of measures with moduli " + std::to_string(a.modulus()) +
                                " and " + std::to_string(b.modulus()));
  }
  if (a.modulus() == 1) return a;
  Eigen::FFT<double> fft;
  Eigen::VectorXcd fa, fb;
  fft.fwd(fa, a.weights());
  fft.fwd(fb, b.weights());
  const Eigen::VectorXcd prod = fa.cwiseProduct(fb);
  Eigen::VectorXd out;
  fft.inv(out, prod);
  return CyclicMeasure::from_computed(std::move(out));
}

}  // namespace circleconv
