#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "../tools/cli.hpp"
#include "json.hpp"

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = circleconv::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> words(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Arguments recovered from the "# circle-conv group name --k=v ..." echo line.
std::vector<std::string> args_from_echo(const std::string& csv) {
  auto w = words(lines(csv).front());
  REQUIRE(w.size() >= 4);
  return {w.begin() + 2, w.end()};
}

std::vector<std::string> args_from_json(const nlohmann::ordered_json& j) {
  std::vector<std::string> args;
  for (const auto& c : j["config"]["command"]) args.push_back(c.get<std::string>());
  for (const auto& [k, v] : j["config"]["options"].items()) args.push_back("--" + k + "=" + v.get<std::string>());
  return args;
}

const std::vector<std::vector<std::string>> kCommands{
    {"collision", "estimate", "--seq", "pow:q=3", "--base", "2", "--max-level", "5"},
    {"collision", "recursion", "--terms", "4,9,39,219,1299,7779", "--q", "10"},
    {"collision", "recursion", "--seq", "rec:poly=1,-7,6;init=4,9", "--q", "10", "--format", "csv"},
    {"convolve", "entropy", "--measure", "bernoulli:p=2,beta=0.1", "--copies", "8", "--depth", "8"},
    {"convolve", "counterexample", "--count", "50"},
    {"genericity", "mean", "--measure", "bernoulli:p=2,beta=0.2", "--depth", "8", "--seq", "pow:q=3", "--N", "20"},
    {"genericity", "second-moment", "--measure", "markov:p=2,rows=0.9;0.1|0.5;0.5", "--depth", "8", "--seq", "poly:l=2", "--N", "15"},
    {"genericity", "sample", "--measure", "bernoulli:p=2,beta=0.3", "--seq", "pow:q=3", "--N", "10", "--samples", "500", "--seed", "9"},
    {"sumset", "entropy", "--window", "6", "--beta", "0.5"},
    {"sumset", "contain", "--n", "2", "--beta", "0.25", "--m", "4", "--beta-prime", "0.25", "--length", "8"},
    {"sumset", "dimension-gap", "--dims", "0.5", "--eps", "0.1"},
};

}  // namespace

TEST_CASE("documented command lines") {
  const auto est = run(kCommands[0]);
  CHECK(est.code == 0);
  const auto est_lines = lines(est.out);
  CHECK(est_lines.front().starts_with("# circle-conv collision estimate"));
  CHECK(est_lines[1] == "n,pairs,gamma");
  CHECK(est_lines.back() == "5,128,1.4");

  const auto rec = run(kCommands[1]);
  CHECK(rec.code == 0);
  const auto j = nlohmann::ordered_json::parse(rec.out);
  CHECK(j["result"]["gamma_prime"]["symbolic"] == "1 + log(2)/log(10)");

  const auto conv = run({"convolve", "entropy", "--measure", "bernoulli:p=2,beta=0.1", "--copies", "64", "--depth", "12"});
  CHECK(conv.code == 0);
  const auto conv_lines = lines(conv.out);
  CHECK(conv_lines[1].starts_with("n,H_norm,I_k_norm,ell_k,subgroup_order"));
  double previous = -1, last = 0;
  int rows = 0;
  for (std::size_t i = 2; i < conv_lines.size(); ++i) {
    if (conv_lines[i].starts_with("#")) continue;
    const auto comma = conv_lines[i].find(',');
    const double h = std::stod(conv_lines[i].substr(comma + 1));
    CHECK(h >= previous - 1e-9);
    previous = last = h;
    ++rows;
  }
  CHECK(rows == 64);
  CHECK(last >= 0.99);

  CHECK(run({"sumset", "example103", "--dims", "0.5"}).out == run({"sumset", "dimension-gap", "--dims", "0.5"}).out);
}

TEST_CASE("every command is deterministic and reproducible from its echo") {
  for (const auto& args : kCommands) {
    INFO(args[0], " ", args[1]);
    const auto first = run(args);
    REQUIRE(first.code == 0);
    CHECK(run(args).out == first.out);
    if (first.out.starts_with("#")) {
      CHECK(run(args_from_echo(first.out)).out == first.out);
    } else {
      const auto j = nlohmann::ordered_json::parse(first.out);
      CHECK(j.contains("result"));
      CHECK(run(args_from_json(j)).out == first.out);
    }
  }
}

TEST_CASE("json output") {
  auto args = kCommands[0];
  args.insert(args.end(), {"--format", "json"});
  const auto r = run(args);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["config"]["command"] == nlohmann::ordered_json::array({"collision", "estimate"}));
  CHECK(j["config"]["options"]["seq"] == "pow:q=3");
  CHECK(j["result"]["levels"].back()["pairs"] == 128);
  CHECK(run(args_from_json(j)).out == r.out);
}

TEST_CASE("sweeps run in order") {
  const auto r = run({"collision", "estimate", "--seq", "pow:q=3", "--max-level", "2", "--sweep", "base=2..4"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  CHECK(l[1] == "base,n,pairs,gamma");
  std::vector<std::string> firsts;
  for (std::size_t i = 2; i < l.size(); ++i)
    if (!l[i].starts_with("#")) firsts.push_back(l[i].substr(0, l[i].find(',')));
  CHECK(firsts == std::vector<std::string>{"2", "2", "3", "3", "4", "4"});
  CHECK(run(args_from_echo(r.out)).out == r.out);

  const auto js = run({"sumset", "entropy", "--window", "4", "--sweep", "budget=0..4", "--format", "json"});
  REQUIRE(js.code == 0);
  const auto j = nlohmann::ordered_json::parse(js.out);
  REQUIRE(j["results"].size() == 5);
  for (int b = 0; b <= 4; ++b) CHECK(j["results"][b]["budget"] == b);

  CHECK(run({"sumset", "entropy", "--window", "4", "--sweep", "budget=3..1"}).code == 2);
  CHECK(run({"sumset", "entropy", "--window", "4", "--sweep", "nothing=1..2"}).code == 2);
}

TEST_CASE("config files") {
  const std::string path = "cli_test.conf";
  {
    std::ofstream out(path);
    out << "# estimate settings\nseq = pow:q=3\nbase = 3   # overridden below\n\nmax-level = 5\n";
  }
  const auto r = run({"collision", "estimate", "--config", path, "--base", "2"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).back() == "5,128,1.4");
  CHECK(r.out == run(kCommands[0]).out);
  {
    std::ofstream out(path);
    out << "seq pow:q=3\n";
  }
  CHECK(run({"collision", "estimate", "--config", path}).code == 2);
  std::remove(path.c_str());
  CHECK(run({"collision", "estimate", "--config", path}).code == 2);
}

TEST_CASE("output files and display bases") {
  const std::string path = "cli_test_output.csv";
  const auto r = run({"sumset", "entropy", "--window", "2", "--budget", "1", "--output", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream contents;
  contents << in.rdbuf();
  CHECK(contents.str() == run({"sumset", "entropy", "--window", "2", "--budget", "1"}).out);
  std::remove(path.c_str());

  const auto nats = lines(run({"sumset", "entropy", "--window", "2", "--budget", "1"}).out).back();
  const auto bits = lines(run({"sumset", "entropy", "--window", "2", "--budget", "1", "--log-base", "2"}).out).back();
  CHECK(nats == "2,1,2,0.48121182506,0.694241913631");
  CHECK(bits == "2,1,2,0.694241913631,0.694241913631");
  CHECK(run({"sumset", "entropy", "--window", "2", "--budget", "1", "--log-base", "1"}).code == 2);
}

TEST_CASE("exit codes") {
  const auto bad_seq = run({"collision", "estimate", "--seq", "pow:q=zz", "--base", "2"});
  CHECK(bad_seq.code == 2);
  CHECK(bad_seq.err.find("zz") != std::string::npos);
  CHECK(run({"collision", "estimate", "--seq", "pow:q=3", "--base", "1"}).code == 2);
  CHECK(run({"collision", "estimate", "--seq", "pow:q=3", "--bogus", "1"}).code == 2);
  CHECK(run({"collision"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"convolve", "entropy", "--measure", "bernoulli:p=2,w=0.5;0.4"}).code == 2);
  CHECK(run({"collision", "recursion", "--seq", "doubexp:b=2", "--q", "10"}).code == 2);

  const auto cap = run({"collision", "estimate", "--seq", "pow:q=3", "--base", "2", "--max-level", "30"});
  CHECK(cap.code == 3);
  CHECK(cap.err.find("cap") != std::string::npos);

  const auto help = run({"sumset", "entropy", "--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("--window") != std::string::npos);
}

TEST_CASE("cap override from the environment") {
  ::setenv("CIRCLE_CONV_CAP", "100", 1);
  const auto small = run({"collision", "estimate", "--seq", "pow:q=3", "--base", "2", "--max-level", "7"});
  const auto grid = run({"convolve", "entropy", "--measure", "bernoulli:p=2,beta=0.1", "--copies", "2", "--depth", "8"});
  ::setenv("CIRCLE_CONV_CAP", "zero", 1);
  const auto garbage = run(kCommands[0]);
  ::unsetenv("CIRCLE_CONV_CAP");
  CHECK(small.code == 3);
  CHECK(small.err.find("cap") != std::string::npos);
  CHECK(grid.code == 3);
  CHECK(garbage.code == 2);
  CHECK(run({"collision", "estimate", "--seq", "pow:q=3", "--base", "2", "--max-level", "7"}).code == 0);
}
