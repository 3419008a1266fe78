#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "smove/cli.hpp"
#include "smove/criterion.hpp"

using namespace smove;

namespace {

std::string data(const std::string& rel) { return std::string(SMOVE_TEST_DATA) + "/" + rel; }

struct Run {
  int code;
  std::string out, err;
  std::string first() const { return out.substr(0, out.find('\n')); }
  std::string body() const { return out.substr(0, out.find("---csv---")); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("word commands") {
  auto r = run({"word", "reduce", "abBA"});
  CHECK(r.code == 0);
  CHECK(r.first() == "1");
  CHECK(r.out.find("---csv---\nkey,value\n") != std::string::npos);
  CHECK(run({"word", "comm", "a", "b"}).first() == "abAB");
  CHECK(run({"word", "invert", "abC"}).first() == "cBA");
  CHECK(run({"word", "subst", "aba", "b", "cc"}).first() == "acca");
  CHECK(run({"word", "equal", "ab", "abcC"}).code == 0);
  CHECK(run({"word", "equal", "ab", "ba"}).code == 1);
  r = run({"word", "reduce", "a?b"});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(run({"word", "mul", "a"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"word", "reduce", "a", "--bogus"}).code == 2);
}

TEST_CASE("criterion commands") {
  auto r = run({"crit", "residual", "--move", "inv", "--R", "ab"});
  CHECK(r.code == 0);
  CHECK(r.first() == "abab");
  CHECK(run({"crit", "residual", "--move", "mulr", "--R", "abA", "--Rk", "b"}).first() == "abABaBA");
  CHECK(run({"crit", "residual", "--move", "mulr", "--R", "ab"}).code == 2);

  r = run({"crit", "verify", "--instance", data("fixture/instance.txt")});
  CHECK(r.code == 0);
  CHECK(r.first() == "verify: true");
  CHECK(r.out.find("verify,true") != std::string::npos);
  CHECK(run({"crit", "verify", "--instance", data("broken/instance.txt")}).code == 1);
  CHECK(run({"crit", "verify", "--instance", data("missing.txt")}).code == 2);
  CHECK(run({"crit", "verify", "--instance", data("bad_syntax.txt")}).code == 2);

  r = run({"crit", "gauge", "--instance", data("fixture/instance.txt")});
  CHECK(r.code == 0);
  CHECK(r.first() == "S R^-1 = baBA");
  CHECK(run({"crit", "rescheck", "--instance", data("fixture/instance.txt")}).code == 0);
  CHECK(run({"crit", "nielsen", "--instance", data("fixture/instance.txt"), "--nielsen", "nielsen inv b",
             "--one-side", "L"})
            .code == 1);
}

TEST_CASE("built instances round trip through files") {
  const auto dir = std::filesystem::temp_directory_path() / "smove_cli_build";
  std::filesystem::remove_all(dir);
  auto r = run({"crit", "build", "--seed", "5", "--gens", "3", "--factors", "2", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(load_instance((dir / "instance.txt").string()) == build_instance(5, 3, 2));
  CHECK(run({"crit", "verify", "--instance", (dir / "instance.txt").string()}).code == 0);
  // deterministic apart from nothing
  CHECK(run({"crit", "build", "--seed", "5", "--gens", "3"}).out ==
        run({"crit", "build", "--seed", "5", "--gens", "3"}).out);
  std::filesystem::remove_all(dir);
}

TEST_CASE("slicing and s-move sequences") {
  auto r = run({"slice", "piece", "--type", "bag", "--R", "ab"});
  CHECK(r.code == 0);
  CHECK(r.body().find("valid: true") != std::string::npos);
  CHECK(r.body().find("boundary: 1\n") != std::string::npos);
  CHECK(run({"slice", "piece", "--type", "hat", "--R", "ab"}).code == 2);

  r = run({"smove", "build", "--instance", data("fixture/instance.txt"), "--type", "mer"});
  CHECK(r.code == 0);
  CHECK(r.out.find("slices,8") != std::string::npos);
  CHECK(r.out.find("perturbation_index,3") != std::string::npos);
  CHECK(run({"smove", "build", "--instance", data("fixture/instance.txt"), "--type", "diag"}).code == 2);
}

TEST_CASE("playground invariant") {
  const std::string inst = data("fixture/instance.txt");
  auto r = run({"inv", "playground", "--instance", inst, "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.body().find("closed form: PASS") != std::string::npos);
  CHECK(r.out == run({"inv", "playground", "--instance", inst, "--seed", "3"}).out);
  CHECK(run({"inv", "playground", "--instance", inst, "--seed", "3", "--gauge"}).code == 0);
  // nontrivial spherical elements obstruct, trivial ones do not
  CHECK(run({"inv", "playground", "--instance", inst, "--seed", "3", "--obstruction"}).code == 3);
  CHECK(run({"inv", "playground", "--instance", inst, "--seed", "3", "--obstruction", "--trivial-spel"}).code == 0);
  CHECK(run({"inv", "playground", "--instance", inst, "--p", "100"}).code == 2);
}

TEST_CASE("seed from the environment") {
  const std::string inst = data("fixture/instance.txt");
  ::setenv("SMOVE_SEED", "9", 1);
  const auto env = run({"inv", "playground", "--instance", inst});
  ::unsetenv("SMOVE_SEED");
  const auto flag = run({"inv", "playground", "--instance", inst, "--seed", "9"});
  CHECK(env.body() == flag.body());
}

TEST_CASE("state sum commands") {
  const auto circle = data("graphs/circle.g");
  auto r = run({"inv", "statesum", "--graphs", circle, circle, "--table", data("table_xy.csv")});
  CHECK(r.code == 0);
  CHECK(r.body().find("state_sum(circle.g) = x + y") != std::string::npos);
  CHECK(r.body().find("multiplicativity: PASS") != std::string::npos);
  const auto jobs = run({"inv", "statesum", "--graphs", circle, data("graphs/theta.g"), "--table",
                         data("table_sym.csv"), "--jobs", "2"});
  const auto serial = run({"inv", "statesum", "--graphs", circle, data("graphs/theta.g"), "--table",
                           data("table_sym.csv")});
  CHECK(jobs.body() == serial.body());

  r = run({"inv", "statesum", "--table", data("table_xy.csv"), "--moves", data("moves_sphere.txt")});
  CHECK(r.code == 0);
  CHECK(r.out.find("invariant,") != std::string::npos);
  CHECK(run({"inv", "statesum", "--table", data("table_xy.csv"), "--moves", data("moves_unchained.txt")}).code == 2);
  CHECK(run({"inv", "statesum", "--graphs", data("graphs/bad_degree.g"), "--table", data("table_xy.csv")}).code ==
        2);

  r = run({"inv", "poly", "--P", "x+1;x+2;x+3;x+4;x+5;x+6", "--g", "x^2+1", "--x3", "1"});
  CHECK(r.code == 0);
  CHECK(r.first() == "c_3 = 4");
  CHECK(run({"inv", "poly", "--P", "1;1;1;1;1;1", "--g", "x^2+1", "--x3", "1"}).code == 2);
}

TEST_CASE("demonstrations") {
  auto r = run({"demo", "nonmult"});
  CHECK(r.code == 0);
  CHECK(r.body().find("\n2S^4 - 4S^3 + 4S^2 - 4S + 2\n") != std::string::npos);
  r = run({"demo", "nonmult", "--table", data("table_s2.csv")});
  CHECK(r.body().find("value = 10") != std::string::npos);
  CHECK(r.body().find("verdict: non-multiplicative") != std::string::npos);
  for (const char* v : {"1", "2", "3"}) CHECK(run({"demo", "stabilization", "--v", v}).code == 0);
}

TEST_CASE("three tests") {
  const std::string fx = data("fixture/instance.txt");
  auto r = run({"test", "three-tests", "--k", fx + ":long", "--l", fx + ":long"});
  CHECK(r.code == 0);
  CHECK(r.first() == "I(K) = I(L): true");
  CHECK(run({"test", "three-tests", "--k", fx, "--l", fx + ":long"}).code == 2);
}
