#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "macroq/catalog.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "macroq");
  std::ostringstream out, err;
  const int code = macroq::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

double value_of(const Run& r) {
  REQUIRE(r.code == 0);
  return json::parse(r.out).at("value").get<double>();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("macroq_cli_" + name)).string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("measure examples") {
    const Run fock = run({"measure", "--state", "fock", "--n", "3"});
    const json j = json::parse(fock.out);
    CHECK(j.at("value").get<double>() == 3.0);
    CHECK(j.at("route") == "operator");
    CHECK(j.at("mean_n").get<double>() == 3.0);
    CHECK(j.contains("purity"));
    CHECK(j.contains("err_estimate"));
    CHECK(std::abs(value_of(run({"measure", "--state", "coherent", "--alpha", "1.7"}))) < 1e-8);
    CHECK(value_of(run({"measure", "--state", "ghz", "--n-modes", "8"})) == 4.0);
    CHECK(json::parse(run({"measure", "--state", "ghz", "--n-modes", "8"}).out).at("route") == "low-rank");
    CHECK(value_of(run({"measure", "--state", "noon", "--n", "5"})) == 5.0);
    CHECK(value_of(run({"measure", "--state", "thermal", "--nbar", "1"})) == doctest::Approx(-1.0 / 9.0).epsilon(1e-10));
  }

  TEST_CASE("routes on the same state agree") {
    const std::vector<std::string> st = {"measure", "--state", "decohered-scs", "--alpha", "1.5", "--tau", "0.3"};
    auto with = [&](const std::string& route) {
      auto a = st;
      a.push_back("--route");
      a.push_back(route);
      return value_of(run(a));
    };
    const double ref = with("closed-form");
    CHECK(std::abs(with("operator") - ref) < 1e-8);
    CHECK(std::abs(with("char-quadrature") - ref) < 1e-7);
    CHECK(std::abs(with("wigner-grid") - ref) < 1e-3);
    CHECK(json::parse(run({"measure", "--state", "dur", "--n-modes", "1000", "--epsilon", "0.1"}).out)
              .at("value")
              .get<double>() == doctest::Approx(2.48310474567).epsilon(1e-10));
  }

  TEST_CASE("usage and numeric errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"measure"}).code == 2);
    CHECK(run({"measure", "--state", "unicorn"}).code == 2);
    CHECK(run({"measure", "--state", "fock", "--n", "3", "--route", "low-rank"}).code == 2);
    CHECK(run({"measure", "--state", "mixture-scs", "--alpha", "1", "--route", "closed-form"}).code == 2);
    const Run bad = run({"measure", "--state", "fock", "--n", "-2"});
    CHECK(bad.code == 2);
    const Run trunc = run({"measure", "--state", "scs", "--alpha", "3", "--cutoff", "10"});
    CHECK(trunc.code == 1);
    const json e = json::parse(trunc.err);
    CHECK(e.at("error").at("kind") == "truncation");
    CHECK(run({"score-wigner", "/nonexistent/grid.txt"}).code == 1);
    CHECK(run({"sweep", "--preset", "fig1a", "--out", "/nonexistent/dir/out.csv"}).code == 1);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("cutoff override from the environment") {
    setenv("MACROQ_DEFAULT_CUTOFF", "60", 1);
    const Run r = run({"measure", "--state", "squeezed", "--s", "1.5"});
    unsetenv("MACROQ_DEFAULT_CUTOFF");
    const json j = json::parse(r.out);
    CHECK(std::abs(j.at("value").get<double>() - 4.4971) < 1e-3);
    CHECK(j.at("warnings").size() == 1);
  }

  TEST_CASE("sweep writes deterministic CSV") {
    const std::string path = temp_path("fig1a.csv");
    REQUIRE(run({"sweep", "--preset", "fig1a", "--out", path}).code == 0);
    std::ifstream in(path);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(header == "param,axis_value,I,mean_n,purity");
    CHECK(first == "2,0,3.99731719896,3.99731719896,1");
    const Run again = run({"sweep", "--preset", "fig1a"});
    std::ifstream in2(path);
    std::stringstream all;
    all << in2.rdbuf();
    CHECK(again.out == all.str());
    std::filesystem::remove(path);
    const Run custom = run({"sweep", "--family", "dur", "--params", "0.1,0.2", "--axis", "N", "--min", "10", "--max",
                            "20", "--samples", "3"});
    CHECK(custom.code == 0);
    CHECK(std::count(custom.out.begin(), custom.out.end(), '\n') == 7);
    CHECK(run({"sweep", "--family", "dur"}).code == 2);
  }

  TEST_CASE("emit-wigner and score-wigner round trip") {
    const std::string path = temp_path("scs.txt");
    REQUIRE(run({"emit-wigner", "--state", "scs", "--alpha", "2", "--out", path}).code == 0);
    const Run s = run({"score-wigner", path});
    CHECK(std::abs(value_of(s) - macroq::scs_mean_n(2.0)) < 1e-3);
    REQUIRE(run({"emit-wigner", "--state", "decohered-scs", "--alpha", "2", "--tau", "0.5", "--out", path}).code == 0);
    CHECK(std::abs(value_of(run({"score-wigner", path})) - macroq::closed_form_decohered_scs({2.0, 0.5})) < 1e-3);
    REQUIRE(run({"emit-wigner", "--state", "vacuum", "--out", path}).code == 0);
    CHECK(std::abs(value_of(run({"score-wigner", path}))) < 1e-4);
    std::filesystem::remove(path);
    CHECK(run({"emit-wigner", "--state", "ghz", "--n-modes", "3"}).code != 0);
  }

  TEST_CASE("score-wigner surfaces normalization warnings") {
    const std::string path = temp_path("scaled.txt");
    REQUIRE(run({"emit-wigner", "--state", "vacuum", "--points", "64", "--out", path}).code == 0);
    std::ifstream in(path);
    std::ostringstream scaled;
    std::string line;
    int k = 0;
    while (std::getline(in, line)) {
      if (k++ < 3 || line.front() == '#') {
        scaled << line << '\n';
        continue;
      }
      std::istringstream ls(line);
      double v;
      bool first = true;
      while (ls >> v) {
        scaled << (first ? "" : " ") << 0.9 * v;
        first = false;
      }
      scaled << '\n';
    }
    in.close();
    std::ofstream(path) << scaled.str();
    const Run r = run({"score-wigner", path});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out).at("warnings").size() >= 1);
    const Run strict = run({"score-wigner", "--strict-normalization", path});
    CHECK(strict.code == 1);
    CHECK(json::parse(strict.err).at("error").at("kind") == "normalization");
    std::filesystem::remove(path);
  }

  TEST_CASE("check command") {
    const Run a = run({"check", "--seed", "7", "--ensemble", "100", "--skip-route-triangle"});
    const Run b = run({"check", "--seed", "7", "--ensemble", "100", "--skip-route-triangle"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("all properties passed (seed 7, ensemble 100)") != std::string::npos);
    const Run f = run({"check", "--inject-fault", "--ensemble", "50", "--skip-route-triangle"});
    CHECK(f.code == 1);
    CHECK(f.out.find("FAIL bound") != std::string::npos);
  }

  TEST_CASE("evolve writes a trajectory") {
    const Run r = run({"evolve", "--state", "scs", "--alpha", "1", "--tau-max", "0.1", "--step", "0.01",
                       "--record-every", "5"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "tau,I,purity,mean_n");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 3);
    CHECK(run({"evolve", "--state", "scs", "--alpha", "1", "--tau-max", "0.1", "--step", "0.5"}).code == 2);
  }
}
