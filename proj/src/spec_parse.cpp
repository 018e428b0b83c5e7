#include "circleconv/spec_parse.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>

namespace circleconv {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::string_view what, std::string_view token) {
  throw ParseError(std::string(what) + ": '" + std::string(token) + "'");
}

std::string exact_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const Eigen::VectorXd& v, char sep) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += exact_real(v[i]);
  }
  return out;
}

std::string join(const std::vector<BigInt>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i].str();
  }
  return out;
}

// "kind:body" -> (kind, body)
std::pair<std::string_view, std::string_view> split_kind(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) fail("expected KIND:PARAMS", text);
  return {trim(text.substr(0, colon)), trim(text.substr(colon + 1))};
}

using Params = std::map<std::string, std::string, std::less<>>;

Params parse_params(std::string_view body, char sep, std::initializer_list<std::string_view> allowed) {
  Params out;
  for (const auto& item : split_top_level(body, sep)) {
    const std::string_view entry = trim(item);
    const auto eq = entry.find('=');
    if (eq == std::string_view::npos) fail("expected key=value", entry);
    const std::string key(trim(entry.substr(0, eq)));
    bool known = false;
    for (const auto a : allowed) known = known || a == key;
    if (!known) fail("unknown parameter", key);
    if (!out.emplace(key, std::string(trim(entry.substr(eq + 1)))).second) fail("repeated parameter", key);
  }
  return out;
}

const std::string& require(const Params& params, std::string_view key, std::string_view context) {
  const auto it = params.find(key);
  if (it == params.end()) fail("missing parameter " + std::string(key), context);
  return it->second;
}

unsigned parse_base(const Params& params, std::string_view context) {
  const auto p = parse_uint(require(params, "p", context));
  if (p < 2 || p > 1u << 16) fail("base must lie in [2, 65536]", require(params, "p", context));
  return static_cast<unsigned>(p);
}

Eigen::VectorXd parse_weights(std::string_view text) {
  const auto values = parse_real_list(text, ';');
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

// Digit law from the bernoulli parameters w= or beta=.
Eigen::VectorXd bernoulli_law(unsigned base, const Params& params, std::string_view context) {
  const bool has_w = params.contains("w");
  const bool has_beta = params.contains("beta");
  if (has_w == has_beta) fail("give exactly one of w= or beta=", context);
  if (has_w) {
    Eigen::VectorXd w = parse_weights(params.at("w"));
    if (w.size() != static_cast<Eigen::Index>(base)) fail("need p weights", params.at("w"));
    return w;
  }
  const double beta = parse_real(params.at("beta"));
  return std::get<Bernoulli>(DigitMeasure::bernoulli_beta(base, beta).kind()).weights;
}

}  // namespace

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (const char c : text) {
    if (c == '(') ++depth;
    if (c == ')' && --depth < 0) fail("unbalanced parenthesis", text);
    if (c == sep && depth == 0) {
      out.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (depth != 0) fail("unbalanced parenthesis", text);
  out.push_back(std::move(current));
  return out;
}

std::int64_t parse_int(std::string_view token) {
  token = trim(token);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) fail("not an integer", token);
  return v;
}

std::uint64_t parse_uint(std::string_view token) {
  token = trim(token);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    fail("not a nonnegative integer", token);
  }
  return v;
}

double parse_real(std::string_view token) {
  token = trim(token);
  const std::string s(token);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) fail("not a real number", token);
  return v;
}

BigInt parse_bigint(std::string_view token) {
  token = trim(token);
  const std::size_t start = !token.empty() && (token[0] == '-' || token[0] == '+') ? 1 : 0;
  if (token.size() == start) fail("not an integer", token);
  for (std::size_t i = start; i < token.size(); ++i) {
    if (token[i] < '0' || token[i] > '9') fail("not an integer", token);
  }
  BigInt v(std::string(token.substr(token[0] == '+' ? 1 : 0)));
  return v;
}

std::vector<BigInt> parse_bigint_list(std::string_view text, char sep) {
  std::vector<BigInt> out;
  for (const auto& item : split_top_level(text, sep)) out.push_back(parse_bigint(item));
  return out;
}

std::vector<double> parse_real_list(std::string_view text, char sep) {
  std::vector<double> out;
  for (const auto& item : split_top_level(text, sep)) out.push_back(parse_real(item));
  return out;
}

namespace {

DigitMeasure build_measure(std::string_view text) {
  const auto [kind, body] = split_kind(text);
  if (kind == "bernoulli") {
    const auto params = parse_params(body, ',', {"p", "w", "beta"});
    const unsigned p = parse_base(params, text);
    if (params.contains("beta")) return DigitMeasure::bernoulli_beta(p, parse_real(params.at("beta")));
    return DigitMeasure::bernoulli(bernoulli_law(p, params, text));
  }
  if (kind == "markov") {
    const auto params = parse_params(body, ',', {"p", "rows"});
    const unsigned p = parse_base(params, text);
    const auto rows = split_top_level(require(params, "rows", text), '|');
    if (rows.size() != p) fail("need p rows", params.at("rows"));
    Eigen::MatrixXd t(p, p);
    for (unsigned i = 0; i < p; ++i) {
      const Eigen::VectorXd row = parse_weights(rows[i]);
      if (row.size() != static_cast<Eigen::Index>(p)) fail("need p entries per row", rows[i]);
      t.row(i) = row.transpose();
    }
    return DigitMeasure::markov(std::move(t));
  }
  if (kind == "product") {
    const auto params = parse_params(body, ',', {"p", "fixed", "digit", "else"});
    const unsigned p = parse_base(params, text);
    ProductRule rule;
    const std::string& fixed = require(params, "fixed", text);
    if (fixed == "squares") {
      rule.squares = true;
    } else {
      for (const auto& item : split_top_level(fixed, ';')) {
        const auto position = parse_uint(item);
        if (position == 0) fail("positions are 1-based", item);
        rule.fixed_positions.push_back(position);
      }
    }
    rule.digit = static_cast<unsigned>(parse_uint(require(params, "digit", text)));
    const std::string_view other = trim(require(params, "else", text));
    const std::string_view prefix = "bernoulli(";
    if (!other.starts_with(prefix) || !other.ends_with(")")) fail("else must be bernoulli(...)", other);
    const auto inner = parse_params(other.substr(prefix.size(), other.size() - prefix.size() - 1), ',', {"w", "beta"});
    rule.other = bernoulli_law(p, inner, other);
    return DigitMeasure::product(p, std::move(rule));
  }
  fail("unknown measure kind", kind);
}

}  // namespace

std::string to_string(const DigitMeasure& m) {
  const std::string p = "p=" + std::to_string(m.base());
  return std::visit(
      [&](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Bernoulli>) {
          return "bernoulli:" + p + ",w=" + join(k.weights, ';');
        } else if constexpr (std::is_same_v<K, Markov>) {
          std::string rows;
          for (Eigen::Index i = 0; i < k.transition.rows(); ++i) {
            if (i) rows += '|';
            rows += join(k.transition.row(i).transpose(), ';');
          }
          return "markov:" + p + ",rows=" + rows;
        } else {
          std::string fixed = "squares";
          if (!k.squares) {
            fixed.clear();
            for (std::size_t i = 0; i < k.fixed_positions.size(); ++i) {
              if (i) fixed += ';';
              fixed += std::to_string(k.fixed_positions[i]);
            }
          }
          return "product:" + p + ",fixed=" + fixed + ",digit=" + std::to_string(k.digit) + ",else=bernoulli(w=" +
                 join(k.other, ';') + ")";
        }
      },
      m.kind());
}

std::vector<BigInt> read_integer_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open table file", path);
  std::vector<BigInt> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto t = trim(line);
    if (t.empty()) continue;
    try {
      out.push_back(parse_bigint(t));
    } catch (const ParseError&) {
      fail(path + " line " + std::to_string(number) + " is not an integer", t);
    }
  }
  return out;
}

DigitMeasure parse_measure(std::string_view text) {
  try {
    return build_measure(text);
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(e.what()) + " in '" + std::string(trim(text)) + "'");
  }
}

SequenceSpec parse_sequence(std::string_view text) {
  const auto [kind, body] = split_kind(text);
  SequenceSpec spec;
  if (kind == "pow") {
    const auto params = parse_params(body, ',', {"q"});
    spec.kind = PowerSeq{parse_int(require(params, "q", text))};
  } else if (kind == "doubexp") {
    const auto params = parse_params(body, ',', {"b"});
    spec.kind = DoubleExpSeq{parse_int(require(params, "b", text))};
  } else if (kind == "poly") {
    const auto params = parse_params(body, ',', {"l"});
    spec.kind = PolySeq{static_cast<unsigned>(parse_uint(require(params, "l", text)))};
  } else if (kind == "affine") {
    const auto params = parse_params(body, ',', {"r", "s", "q"});
    spec.kind = AffineExpSeq{parse_int(require(params, "r", text)), parse_int(require(params, "s", text)),
                             parse_int(require(params, "q", text))};
  } else if (kind == "rec") {
    const auto params = parse_params(body, ';', {"poly", "init"});
    spec.kind = RecursionSeq{RationalPolynomial::from_descending(parse_bigint_list(require(params, "poly", text))),
                             parse_bigint_list(require(params, "init", text))};
  } else if (kind == "table") {
    const auto params = parse_params(body, ',', {"file"});
    const std::string& path = require(params, "file", text);
    spec.kind = TableSeq{read_integer_table(path), path};
  } else if (kind == "intertwine") {
    IntertwineSeq parts;
    for (const auto& item : split_top_level(body, '|')) {
      const auto t = trim(item);
      if (t.size() < 2 || t.front() != '(' || t.back() != ')') fail("intertwine parts must be parenthesized", t);
      parts.parts.push_back(parse_sequence(t.substr(1, t.size() - 2)));
    }
    spec.kind = std::move(parts);
  } else {
    fail("unknown sequence kind", kind);
  }
  try {
    validate(spec);
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(e.what()) + " in '" + std::string(trim(text)) + "'");
  }
  return spec;
}

std::string to_string(const SequenceSpec& spec) {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PowerSeq>) {
          return "pow:q=" + std::to_string(k.q);
        } else if constexpr (std::is_same_v<K, DoubleExpSeq>) {
          return "doubexp:b=" + std::to_string(k.b);
        } else if constexpr (std::is_same_v<K, PolySeq>) {
          return "poly:l=" + std::to_string(k.ell);
        } else if constexpr (std::is_same_v<K, AffineExpSeq>) {
          return "affine:r=" + std::to_string(k.r) + ",s=" + std::to_string(k.s) + ",q=" + std::to_string(k.q);
        } else if constexpr (std::is_same_v<K, RecursionSeq>) {
          return "rec:poly=" + k.poly.to_descending_list() + ";init=" + join(k.init, ',');
        } else if constexpr (std::is_same_v<K, TableSeq>) {
          return "table:file=" + k.source;
        } else {
          std::string out = "intertwine:";
          for (std::size_t i = 0; i < k.parts.size(); ++i) {
            if (i) out += '|';
            out += "(" + to_string(k.parts[i]) + ")";
          }
          return out;
        }
      },
      spec.kind);
}

}  // namespace circleconv
