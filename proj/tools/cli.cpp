#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "circleconv/collision.hpp"
#include "circleconv/convlab.hpp"
#include "circleconv/digit_measure.hpp"
#include "circleconv/genericity.hpp"
#include "circleconv/json_io.hpp"
#include "circleconv/spec_parse.hpp"
#include "circleconv/sumset.hpp"

namespace circleconv::cli {

namespace {

using Values = std::map<std::string, std::string>;

struct Output {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  Json json;
  std::vector<std::string> trailer;  // CSV comment lines after the rows
};

struct Context {
  Caps caps;
  double log_scale = 1.0;  // multiplies entropies in nats
};

using Handler = std::function<Output(const Values&, const Context&)>;

// Options every command accepts; they shape the output, not the computation.
const std::vector<std::string> kCommonKeys{"format", "output", "sweep", "log-base"};

const std::string& get(const Values& v, const std::string& key) {
  const auto it = v.find(key);
  if (it == v.end() || it->second.empty()) throw ParseError("missing required option --" + key);
  return it->second;
}

bool has(const Values& v, const std::string& key) {
  const auto it = v.find(key);
  return it != v.end() && !it->second.empty();
}

unsigned get_unsigned(const Values& v, const std::string& key) {
  const auto value = parse_uint(get(v, key));
  if (value > 1u << 30) throw ParseError("--" + key + " is too large: '" + get(v, key) + "'");
  return static_cast<unsigned>(value);
}

std::string real(double x) { return format_real(x); }
std::string integer(std::uint64_t x) { return std::to_string(x); }

// ---- collision ----

Output collision_estimate(const Values& v, const Context& ctx) {
  const SequenceSpec seq = parse_sequence(get(v, "seq"));
  const auto base = parse_uint(get(v, "base"));
  if (base < 2) throw ParseError("--base must be at least 2: '" + get(v, "base") + "'");
  const unsigned top = has(v, "max-level") ? get_unsigned(v, "max-level") : largest_feasible_level(base, ctx.caps.count);
  CollisionReport report;
  report.object = "gamma";
  report.base = base;
  report.levels = gamma_estimates(seq, base, top, ctx.caps.count);
  Output out;
  out.header = {"n", "pairs", "gamma"};
  for (const auto& l : report.levels) out.rows.push_back({integer(l.n), integer(l.pairs), real(l.gamma)});
  out.json = to_json(report);
  return out;
}

Output collision_recursion(const Values& v, const Context&) {
  const auto q = parse_uint(get(v, "q"));
  AlgorithmOptions options;
  options.max_degree = get_unsigned(v, "max-degree");
  options.term_count = get_unsigned(v, "term-count");
  options.max_depth = get_unsigned(v, "max-depth");
  CollisionReport report;
  if (has(v, "terms") == has(v, "seq")) throw ParseError("give exactly one of --terms or --seq");
  if (has(v, "terms")) {
    const auto terms = parse_bigint_list(get(v, "terms"));
    report = reduced_exponent(terms, q, options);
  } else {
    report = reduced_exponent(parse_sequence(get(v, "seq")), q, options);
  }
  Output out;
  out.header = {"q", "relation", "gamma_prime", "gamma_prime_symbolic", "minimal_polynomial"};
  out.rows.push_back({integer(q), report.lower_bound ? ">=" : "=", real(report.exponent->value()),
                      report.exponent->symbolic(),
                      report.minimal_polynomial ? report.minimal_polynomial->to_string() : ""});
  for (const auto& w : report.warnings) out.trailer.push_back("warning: " + w);
  out.json = to_json(report);
  return out;
}

// ---- convolve ----

Output convolve_entropy(const Values& v, const Context& ctx) {
  const DigitMeasure m = parse_measure(get(v, "measure"));
  const std::vector<DigitMeasure> measures(get_unsigned(v, "copies"), m);
  ExperimentConfig config;
  config.depth = get_unsigned(v, "depth");
  config.report_k = get_unsigned(v, "report-k");
  config.tol = parse_real(get(v, "tol"));
  config.grid_cap = ctx.caps.grid;
  const auto rows = entropy_growth_experiment(measures, config);
  Output out;
  out.header = {"n", "H_norm", "I_k_norm", "ell_k", "subgroup_order"};
  Json records = Json::array();
  for (const auto& r : rows) {
    out.rows.push_back({integer(r.n), real(r.h_norm), real(r.i_k_norm), integer(r.ell_k), integer(r.subgroup_order)});
    records.push_back({{"n", r.n},
                       {"H_norm", real_json(r.h_norm)},
                       {"I_k_norm", real_json(r.i_k_norm)},
                       {"ell_k", r.ell_k},
                       {"subgroup_order", r.subgroup_order},
                       {"epsilon", real_json(r.epsilon * ctx.log_scale)},
                       {"top_entropy", real_json(r.top_entropy * ctx.log_scale)},
                       {"top_bound", real_json(r.top_bound * ctx.log_scale)},
                       {"bound_applies", r.bound_applies},
                       {"bound_holds", r.bound_holds}});
  }
  out.json = {{"rows", std::move(records)}};
  return out;
}

Output convolve_counterexample(const Values& v, const Context&) {
  std::vector<double> h;
  if (has(v, "h")) {
    h = parse_real_list(get(v, "h"));
  } else {
    const unsigned count = get_unsigned(v, "count");
    const double h0 = parse_real(get(v, "h0"));
    const double ratio = parse_real(get(v, "ratio"));
    for (unsigned i = 0; i < count; ++i) h.push_back(h0 * std::pow(ratio, i));
  }
  const unsigned base = get_unsigned(v, "base");
  const auto family = counterexample_family(h, base, parse_real(get(v, "tol")));
  Output out;
  out.header = {"n", "h", "beta", "coefficient_abs", "factor_ok", "product_abs"};
  Json rows = Json::array();
  double product = 1.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double beta = family.betas[i];
    const auto c = family.first_coefficients[i];
    product *= std::abs(c);
    const bool ok = std::abs(c - 1.0) <= 4.0 * std::numbers::pi * beta + 1e-12;
    out.rows.push_back({integer(i + 1), real(h[i]), real(beta), real(std::abs(c)), ok ? "1" : "0", real(product)});
    rows.push_back({{"n", i + 1},
                    {"h", real_json(h[i])},
                    {"beta", real_json(beta)},
                    {"coefficient_abs", real_json(std::abs(c))},
                    {"factor_ok", ok},
                    {"product_abs", real_json(product)}});
  }
  out.trailer.push_back("bound=" + real(family.bound) + (family.used_direct_product ? " (direct product)" : ""));
  if (!family.warning.empty()) out.trailer.push_back("warning: " + family.warning);
  out.json = {{"rows", std::move(rows)}, {"bound", real_json(family.bound)},
              {"used_direct_product", family.used_direct_product}, {"warning", family.warning}};
  return out;
}

// ---- genericity ----

WeylAverage weyl(const Values& v) {
  WeylAverage w{parse_sequence(get(v, "seq")), parse_int(get(v, "k")), parse_uint(get(v, "N"))};
  validate(w);
  return w;
}

Output genericity_mean(const Values& v, const Context& ctx) {
  const auto w = weyl(v);
  const auto mu = GridMeasure::from_digits(parse_measure(get(v, "measure")), get_unsigned(v, "depth"), ctx.caps.grid);
  const auto g = mean_g(mu, w);
  Output out;
  out.header = {"k", "N", "estimate_re", "estimate_im", "stderr"};
  out.rows.push_back({std::to_string(w.k), integer(w.terms), real(g.real()), real(g.imag()), "0"});
  out.json = {{"seq", get(v, "seq")}, {"k", w.k}, {"N", w.terms}, {"estimate_re", real_json(g.real())},
              {"estimate_im", real_json(g.imag())}, {"stderr", 0}, {"seed", nullptr}};
  return out;
}

Output genericity_second_moment(const Values& v, const Context& ctx) {
  const auto w = weyl(v);
  const auto mu = GridMeasure::from_digits(parse_measure(get(v, "measure")), get_unsigned(v, "depth"), ctx.caps.grid);
  const double value = second_moment_g(mu, w);
  Output out;
  out.header = {"k", "N", "value", "stderr"};
  out.rows.push_back({std::to_string(w.k), integer(w.terms), real(value), "0"});
  out.json = {{"seq", get(v, "seq")}, {"k", w.k}, {"N", w.terms}, {"value", real_json(value)},
              {"stderr", 0}, {"seed", nullptr}};
  return out;
}

Output genericity_sample(const Values& v, const Context&) {
  const auto w = weyl(v);
  const auto est = normality_estimate(parse_measure(get(v, "measure")), w, parse_uint(get(v, "samples")),
                                      parse_uint(get(v, "seed")), get_unsigned(v, "guard"));
  Output out;
  out.header = {"k", "N", "value", "stderr", "seed", "depth", "samples"};
  out.rows.push_back({std::to_string(w.k), integer(w.terms), real(est.mean), real(est.standard_error),
                      integer(est.seed), integer(est.depth), integer(est.samples)});
  out.json = {{"seq", get(v, "seq")}, {"k", w.k},       {"N", w.terms},         {"value", real_json(est.mean)},
              {"stderr", real_json(est.standard_error)}, {"seed", est.seed}, {"depth", est.depth},
              {"samples", est.samples}};
  return out;
}

// ---- sumset ----

Output sumset_entropy(const Values& v, const Context& ctx) {
  const unsigned base = get_unsigned(v, "base");
  const unsigned window = get_unsigned(v, "window");
  if (has(v, "budget") == has(v, "beta")) throw ParseError("give exactly one of --budget or --beta");
  const unsigned budget = has(v, "budget") ? get_unsigned(v, "budget") : digit_budget(parse_real(get(v, "beta")), window);
  const DigitSFT s(base, window, budget, ctx.caps.sft_states);
  const auto h = topological_entropy(s);
  Output out;
  out.header = {"N", "budget", "states", "entropy", "dim"};
  out.rows.push_back({integer(window), integer(s.budget()), integer(s.state_count()), real(h.entropy * ctx.log_scale),
                      real(h.dimension)});
  out.json = {{"base", base},
              {"N", window},
              {"budget", s.budget()},
              {"states", s.state_count()},
              {"entropy", real_json(h.entropy * ctx.log_scale)},
              {"dim", real_json(h.dimension)}};
  return out;
}

Output sumset_contain(const Values& v, const Context& ctx) {
  const auto r = sumset_containment_check(get_unsigned(v, "n"), parse_real(get(v, "beta")), get_unsigned(v, "m"),
                                          parse_real(get(v, "beta-prime")), get_unsigned(v, "base"),
                                          get_unsigned(v, "length"), ctx.caps.exhaustive);
  Output out;
  out.header = {"holds", "pairs_checked", "target_budget", "witness_x", "witness_y", "witness_offset", "witness_z"};
  std::vector<std::string> row{r.holds ? "1" : "0", integer(r.pairs_checked), integer(r.target_budget)};
  for (const auto& s : r.witness ? std::vector<std::string>{integer(r.witness->x), integer(r.witness->y),
                                                            integer(r.witness->offset), integer(r.witness->z)}
                                 : std::vector<std::string>(4)) {
    row.push_back(s);
  }
  out.rows.push_back(std::move(row));
  out.json = to_json(r);
  return out;
}

Output sumset_dimension_gap(const Values& v, const Context& ctx) {
  const auto it = v.find("dims");
  const std::vector<double> dims =
      it == v.end() || it->second.empty() ? std::vector<double>{} : parse_real_list(it->second);
  const auto r = dimension_gap_pipeline(dims, parse_real(get(v, "eps")), get_unsigned(v, "base"), ctx.caps.sft_states);
  Output out;
  out.header = {"i", "d", "found", "N", "budget", "beta", "dim", "measure_dim"};
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    const auto& e = r.entries[i];
    if (e.found) {
      out.rows.push_back({integer(i + 1), real(e.d), "1", integer(e.window), integer(e.budget), real(e.beta),
                          real(e.dimension), real(e.measure_dimension)});
    } else {
      out.rows.push_back({integer(i + 1), real(e.d), "0", "", "", "", "", ""});
    }
  }
  out.trailer.push_back("sum_beta=" + real(r.sum_beta) + " condition_holds=" + (r.condition_holds ? "1" : "0") +
                        " bound_dim=" + real(r.bound_dim) + " vacuous=" + (r.vacuous ? "1" : "0"));
  out.json = to_json(r);
  return out;
}

// ---- plumbing ----

struct Leaf {
  std::string group;
  std::string name;
  std::string help;
  std::string default_format;
  std::vector<std::tuple<std::string, std::string, std::string>> options;  // key, default, help
  Handler handler;
};

std::vector<Leaf> leaves() {
  const std::string measure_help = "digit measure, e.g. bernoulli:p=2,beta=0.1";
  const std::string seq_help = "sequence, e.g. pow:q=3 or rec:poly=1,-7,6;init=4,9";
  return {
      {"collision", "estimate", "brute-force collision counts and gamma_n = log(pairs)/(n log p)", "csv",
       {{"seq", "", seq_help}, {"base", "", "modulus base p"}, {"max-level", "", "largest level n (default: largest within the count cap)"}},
       collision_estimate},
      {"collision", "recursion", "reduced collision exponent of a linear recursion", "json",
       {{"terms", "", "comma-separated initial terms"},
        {"seq", "", seq_help},
        {"q", "", "modulus base q"},
        {"max-degree", "8", "largest recursion degree searched"},
        {"term-count", "720", "terms generated from --seq"},
        {"max-depth", "24", "recursion depth limit"}},
       collision_recursion},
      {"convolve", "entropy", "normalized entropy of n-fold convolutions on the depth-K grid", "csv",
       {{"measure", "", measure_help},
        {"copies", "64", "number of convolution factors"},
        {"depth", "12", "grid depth K"},
        {"report-k", "0", "digit count k for the I_k columns (0: K/2)"},
        {"tol", "0.05", "invariance tolerance for the subgroup proxy"}},
       convolve_entropy},
      {"convolve", "counterexample", "positive-entropy family whose convolutions keep a large Fourier coefficient", "csv",
       {{"h", "", "comma-separated normalized entropies"},
        {"count", "1000", "number of factors when --h is absent"},
        {"h0", "0.001", "first normalized entropy when --h is absent"},
        {"ratio", "0.5", "geometric ratio when --h is absent"},
        {"base", "2", "digit base p"},
        {"tol", "1e-12", "Fourier truncation tolerance"}},
       convolve_counterexample},
      {"genericity", "mean", "integral of the Weyl average against a grid measure", "json",
       {{"measure", "", measure_help}, {"depth", "12", "grid depth"}, {"seq", "", seq_help}, {"k", "1", "frequency"}, {"N", "", "number of terms"}},
       genericity_mean},
      {"genericity", "second-moment", "integral of |g_N|^2 against a grid measure", "json",
       {{"measure", "", measure_help}, {"depth", "12", "grid depth"}, {"seq", "", seq_help}, {"k", "1", "frequency"}, {"N", "", "number of terms"}},
       genericity_second_moment},
      {"genericity", "sample", "Monte-Carlo integral of |g_N|^2 against a digit measure", "json",
       {{"measure", "", measure_help},
        {"seq", "", seq_help},
        {"k", "1", "frequency"},
        {"N", "", "number of terms"},
        {"samples", "10000", "sample count"},
        {"seed", "0", "64-bit seed"},
        {"guard", "8", "guard digits below the coarsest phase"}},
       genericity_sample},
      {"sumset", "entropy", "topological entropy of the digit-constrained shift S(N, beta)", "csv",
       {{"base", "2", "digit base p"}, {"window", "", "window length N"}, {"budget", "", "nonzero digits allowed per window"}, {"beta", "", "density; budget = floor(beta N)"}},
       sumset_entropy},
      {"sumset", "contain", "exhaustive check of S(N, beta) + S(M, beta') within S(M, beta + beta' + 1/M)", "csv",
       {{"n", "", "window N"},
        {"beta", "", "density for N"},
        {"m", "", "window M, a multiple of N"},
        {"beta-prime", "", "density for M"},
        {"base", "2", "digit base p"},
        {"length", "", "word length L, a multiple of M"}},
       sumset_contain},
      {"sumset", "dimension-gap", "sets of given dimensions whose sum stays below full dimension", "json",
       {{"dims", "", "comma-separated dimensions in (0, 1)"}, {"eps", "0.1", "slack epsilon"}, {"base", "2", "digit base p"}},
       sumset_dimension_gap},
  };
}

const char* kFooter = R"(Measures:  bernoulli:p=P,w=W0;W1;...  bernoulli:p=P,beta=B  markov:p=P,rows=R;R|R;R
           product:p=P,fixed=I;J;...|squares,digit=D,else=bernoulli(beta=B)
Sequences: pow:q=Q  doubexp:b=B  poly:l=L  affine:r=R,s=S,q=Q  rec:poly=1,A,B;init=C0,C1
           table:file=PATH  intertwine:(SPEC)|(SPEC)
Common:    --format csv|json  --output PATH  --config PATH (key = value lines)
           --sweep KEY=A..B  --log-base e|B
Exit codes: 0 ok, 2 bad configuration, 3 cap exceeded or numeric failure.
Environment: CIRCLE_CONV_CAP overrides the grid and count caps.)";

// Appends "--key=value" for config-file keys not already on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::string line;
  std::vector<std::string> extra;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw ParseError("config line is not key = value: '" + trim(line) + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : args) given = given || a == flag || a.starts_with(flag + "=");
    if (!given) extra.push_back(flag + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

std::string join_row(const std::vector<std::string>& row) {
  std::string s;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) s += ',';
    s += row[i];
  }
  return s;
}

std::pair<std::string, std::vector<std::uint64_t>> parse_sweep(const std::string& text, const Values& values) {
  const auto eq = text.find('=');
  const auto dots = text.find("..");
  if (eq == std::string::npos || dots == std::string::npos || dots < eq) {
    throw ParseError("sweep must look like KEY=A..B: '" + text + "'");
  }
  const std::string key = text.substr(0, eq);
  if (!values.contains(key) || std::find(kCommonKeys.begin(), kCommonKeys.end(), key) != kCommonKeys.end()) {
    throw ParseError("sweep key is not an option of this command: '" + key + "'");
  }
  const auto lo = parse_uint(text.substr(eq + 1, dots - eq - 1));
  const auto hi = parse_uint(text.substr(dots + 2));
  if (lo > hi || hi - lo > 100000) throw ParseError("bad sweep range: '" + text + "'");
  std::vector<std::uint64_t> points;
  for (auto x = lo; x <= hi; ++x) points.push_back(x);
  return {key, points};
}

int execute(const Leaf& leaf, const Values& values, std::ostream& out) {
  Context ctx;
  ctx.caps = Caps::from_environment();
  const std::string& log_base = values.at("log-base");
  if (log_base != "e") {
    const double b = parse_real(log_base);
    if (!(b > 1.0)) throw ParseError("--log-base must be e or a number above 1: '" + log_base + "'");
    ctx.log_scale = 1.0 / std::log(b);
  }
  const std::string format = values.at("format").empty() ? leaf.default_format : values.at("format");
  if (format != "csv" && format != "json") throw ParseError("--format must be csv or json: '" + format + "'");

  std::string sweep_key;
  std::vector<std::uint64_t> points;
  if (!values.at("sweep").empty()) std::tie(sweep_key, points) = parse_sweep(values.at("sweep"), values);

  std::vector<Output> results;
  if (sweep_key.empty()) {
    results.push_back(leaf.handler(values, ctx));
  } else {
    for (const auto x : points) {
      Values point = values;
      point[sweep_key] = std::to_string(x);
      results.push_back(leaf.handler(point, ctx));
    }
  }

  // Echo of the effective configuration.
  Json options = Json::object();
  for (const auto& [k, val] : values) {
    if (k != "output" && k != "format" && !val.empty()) options[k] = val;
  }
  options["format"] = format;
  std::ostringstream text;
  if (format == "csv") {
    text << "# circle-conv " << leaf.group << ' ' << leaf.name;
    for (const auto& [k, val] : options.items()) text << " --" << k << '=' << val.get<std::string>();
    text << '\n';
    std::vector<std::string> header = results.front().header;
    if (!sweep_key.empty()) header.insert(header.begin(), sweep_key);
    text << join_row(header) << '\n';
    for (std::size_t i = 0; i < results.size(); ++i) {
      for (auto row : results[i].rows) {
        if (!sweep_key.empty()) row.insert(row.begin(), std::to_string(points[i]));
        text << join_row(row) << '\n';
      }
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
      for (const auto& t : results[i].trailer) {
        text << "# " << (sweep_key.empty() ? "" : sweep_key + "=" + std::to_string(points[i]) + " ") << t << '\n';
      }
    }
  } else {
    Json record{{"config", {{"command", {leaf.group, leaf.name}}, {"options", options}}}};
    if (sweep_key.empty()) {
      record["result"] = results.front().json;
    } else {
      Json list = Json::array();
      for (std::size_t i = 0; i < results.size(); ++i) list.push_back({{sweep_key, points[i]}, {"result", results[i].json}});
      record["results"] = std::move(list);
    }
    text << record.dump(2) << '\n';
  }

  const std::string& path = values.at("output");
  if (path.empty()) {
    out << text.str();
  } else {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ParseError("cannot open output file '" + path + "'");
    file << text.str();
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  const auto table = leaves();
  CLI::App app{"Finite, exact experiments on entropy of convolutions, collision exponents, genericity and sum sets.",
               "circle-conv"};
  app.footer(kFooter);
  app.require_subcommand(1);
  std::map<std::string, CLI::App*> groups;
  std::vector<std::pair<CLI::App*, Values>> bound;
  bound.reserve(table.size());
  for (const auto& leaf : table) {
    auto*& group = groups[leaf.group];
    if (!group) {
      group = app.add_subcommand(leaf.group, leaf.group + " experiments");
      group->require_subcommand(1);
    }
    auto* sub = group->add_subcommand(leaf.name, leaf.help);
    sub->set_help_flag("--help", "print this help and exit");  // leaves --h free for an option
    if (leaf.name == "dimension-gap") sub->alias("example103");
    bound.emplace_back(sub, Values{});
    Values& values = bound.back().second;
    for (const auto& [key, def, help] : leaf.options) values[key] = def;
    for (const auto& key : kCommonKeys) values[key] = "";
    values["log-base"] = "e";
    for (const auto& [key, def, help] : leaf.options) sub->add_option("--" + key, values[key], help);
    sub->add_option("--format", values["format"], "csv or json (default " + leaf.default_format + ")");
    sub->add_option("--output", values["output"], "write to this file instead of standard output");
    sub->add_option("--sweep", values["sweep"], "KEY=A..B: run once per integer value of option KEY");
    sub->add_option("--log-base", values["log-base"], "base for displayed entropies (e or a number)");
    sub->add_option("--config", "key = value file; explicit flags win");
  }

  try {
    std::vector<std::string> args = merge_config(raw_args);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (bool descended = true; descended;) {
      descended = false;
      for (const auto* s : target->get_subcommands()) {
        target = s;
        descended = true;
        break;
      }
    }
    out << target->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "circle-conv: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "circle-conv: " << e.what() << '\n';
    return 2;
  }

  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!bound[i].first->parsed()) continue;
    try {
      return execute(table[i], bound[i].second, out);
    } catch (const CapExceeded& e) {
      err << "circle-conv: cap exceeded: " << e.what() << '\n';
      return 3;
    } catch (const NumericError& e) {
      err << "circle-conv: numeric failure: " << e.what() << '\n';
      return 3;
    } catch (const std::logic_error& e) {
      err << "circle-conv: " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      err << "circle-conv: " << e.what() << '\n';
      return 3;
    }
  }
  err << "circle-conv: no command given\n";
  return 2;
}

}  // namespace circleconv::cli
