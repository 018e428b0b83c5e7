#pragma once

// Text forms for digit measures and sequences, as accepted on the command line.
//
//   bernoulli:p=2,w=0.9;0.1          bernoulli:p=2,beta=0.1
//   markov:p=2,rows=0.9;0.1|0.5;0.5
//   product:p=2,fixed=1;4;9,digit=0,else=bernoulli(beta=0.5)     (fixed=squares also accepted)
//
//   pow:q=3   doubexp:b=2   poly:l=2   affine:r=1,s=3,q=6
//   rec:poly=1,-7,6;init=4,9   table:file=PATH   intertwine:(SPEC)|(SPEC)

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "circleconv/digit_measure.hpp"
#include "circleconv/sequence.hpp"

namespace circleconv {

/// Malformed text; the message quotes the offending token.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

DigitMeasure parse_measure(std::string_view text);
/// Canonical text that parses back to an equal measure.
std::string to_string(const DigitMeasure& m);

SequenceSpec parse_sequence(std::string_view text);
std::string to_string(const SequenceSpec& spec);

std::vector<BigInt> read_integer_table(const std::string& path);

std::int64_t parse_int(std::string_view token);
std::uint64_t parse_uint(std::string_view token);
double parse_real(std::string_view token);
BigInt parse_bigint(std::string_view token);
std::vector<BigInt> parse_bigint_list(std::string_view text, char sep = ',');
std::vector<double> parse_real_list(std::string_view text, char sep = ',');

/// Splits on `sep` outside parentheses.
std::vector<std::string> split_top_level(std::string_view text, char sep);

}  // namespace circleconv
