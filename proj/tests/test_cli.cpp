#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>

#include "polystab/json_io.hpp"

using namespace polystab;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(POLYSTAB_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.output.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/polystab_test_") + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("json round trips") {
  // rationals
  CHECK(rational_from_json(to_json(Rational(-48, 13))) == Rational(-48, 13));
  // polytope
  auto I = standard_simplex(1);
  auto p2 = polytope_from_json(to_json(I));
  CHECK(p2.same_vertex_set(I));
  // PL function
  auto f = make_pl(I, {affine_const(1, Rational(0)),
                       AffineFunction({Rational(2)}, Rational(-1))});
  auto pieces = pl_pieces_from_json(to_json(f));
  CHECK(make_pl(I, pieces) == f);
  // polynomial
  Polynomial q = Polynomial::coordinate(2, 0) * Polynomial::coordinate(2, 1) +
                 Polynomial::constant(2, Rational(7, 3));
  CHECK(polynomial_from_json(to_json(q)) == q);
  // bundle spec
  BundleSpec spec{.genus = 2, .blocks = {{2, 1}, {1, 0}}, .c = Rational(5, 2)};
  auto spec2 = bundle_spec_from_json(to_json(spec));
  CHECK(spec2.genus == 2);
  CHECK(spec2.blocks == spec.blocks);
  CHECK(spec2.c == spec.c);
}

TEST_CASE("extremal subcommand prints the worked coefficients") {
  std::string input = write_temp(
      "spec.json", R"({"genus": 0, "blocks": [{"rank":1,"degree":0},{"rank":1,"degree":1}], "c": "2"})");
  auto res = run_cli("extremal --input " + input);
  REQUIRE(res.exit_code == 0);
  Json out = Json::parse(res.output);
  CHECK(out["l_ext"]["constant"] == "108/13");
  CHECK(out["l_ext"]["linear"][0] == "-48/13");
}

TEST_CASE("determinism: identical invocations produce identical bytes") {
  std::string input = write_temp(
      "spec2.json", R"({"genus": 0, "blocks": [{"rank":2,"degree":0},{"rank":2,"degree":0}], "c": "1"})");
  auto a = run_cli("identities --input " + input + " --seed 7 --count 5");
  auto b = run_cli("identities --input " + input + " --seed 7 --count 5");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  auto c = run_cli("identities --input " + input + " --seed 8 --count 5");
  CHECK(c.exit_code == 0);  // different seed still passes, bytes may differ
}

TEST_CASE("delzant subcommand verdicts") {
  std::string tri = write_temp("tri.json", Json{
      {"polytope", to_json(standard_simplex(2))}}.dump());
  auto res = run_cli("delzant --input " + tri);
  REQUIRE(res.exit_code == 0);
  Json out = Json::parse(res.output);
  CHECK(out["simple"] == true);
  CHECK(out["integral"] == true);

  auto I = standard_simplex(1);
  auto steep = make_pl(I, {affine_const(1, Rational(0)),
                           AffineFunction({Rational(2)}, Rational(-1))});
  std::string pair = write_temp("pair.json", Json{
      {"polytope", to_json(I)}, {"pl", to_json(steep)}, {"R", "1"}}.dump());
  auto res2 = run_cli("delzant --input " + pair);
  REQUIRE(res2.exit_code == 0);
  Json out2 = Json::parse(res2.output);
  CHECK(out2["simple"] == true);
  CHECK(out2["integral"] == false);
  CHECK(out2["classification"] == "RPL");
}

TEST_CASE("df and jnorm subcommands") {
  std::string input = write_temp(
      "spec3.json", R"({"genus": 0, "blocks": [{"rank":1,"degree":0},{"rank":1,"degree":0}], "c": "1"})");
  auto I = standard_simplex(1);
  auto f = make_pl(I, {affine_const(1, Rational(0)),
                       AffineFunction({Rational(2)}, Rational(-1))});
  std::string pl = write_temp("pl.json", to_json(f).dump());

  auto res = run_cli("df --input " + input + " --pl " + pl);
  REQUIRE(res.exit_code == 0);
  Json out = Json::parse(res.output);
  // balanced (1,1) with c=1: density 1, wbar = l_ext = 4: F = 1
  CHECK(out["F"] == "1/1");
  CHECK(out["DF"]["two_pi_power"] == 3);

  auto res2 = run_cli("jnorm --input " + input + " --pl " + pl + " --density one");
  REQUIRE(res2.exit_code == 0);
  Json out2 = Json::parse(res2.output);
  CHECK(out2["j_norm"] == "1/4");
}

TEST_CASE("stability subcommand emits certificates as data") {
  std::string input = write_temp(
      "spec4.json", R"({"genus": 0, "blocks": [{"rank":1,"degree":0},{"rank":1,"degree":1}], "c": "2"})");
  auto res = run_cli("stability --input " + input + " --N 4,8");
  REQUIRE(res.exit_code == 0);
  Json out = Json::parse(res.output);
  CHECK(out["verdict"] == "no-destabilizer-found");
  CHECK(out["per_resolution"].size() == 2);
}

TEST_CASE("sweep csv schema and re-parse") {
  std::string input = write_temp(
      "spec5.json", R"({"genus": 0, "blocks": [{"rank":1,"degree":0},{"rank":1,"degree":1}], "c": "2"})");
  auto res = run_cli("sweep --input " + input + " --c 1.1,2,8 --N 4 --format csv");
  REQUIRE(res.exit_code == 0);
  CHECK(res.output.substr(0, 44) == "c,N,lambda_num,lambda_den,verdict,destabiliz");
  // three data rows
  int lines = 0;
  for (char ch : res.output)
    if (ch == '\n') ++lines;
  CHECK(lines == 4);
  CHECK(res.output.find("11/10") != std::string::npos);
  CHECK(res.output.find("no-destabilizer-found") != std::string::npos);
}

TEST_CASE("mabuchi subcommand reports transfer residuals") {
  std::string input = write_temp(
      "spec6.json", R"({"genus": 0, "blocks": [{"rank":2,"degree":0},{"rank":2,"degree":0}], "c": "1"})");
  auto res = run_cli("mabuchi --input " + input + " --tol 1e-5 --seed 3");
  REQUIRE(res.exit_code == 0);
  Json out = Json::parse(res.output);
  CHECK(out["energy"]["converged"] == true);
  CHECK(out["lift_check"]["constant_exact"] == "1/3");
  CHECK(std::stod(out["lift_check"]["max_det_rel_err"].get<std::string>()) < 1e-4);
  CHECK(std::stod(out["lift_check"]["max_constant_rel_dev"].get<std::string>()) < 1e-5);
}

TEST_CASE("destabilizer certificates are written as PL JSON") {
  // non-extremal setup is not reachable through bundle specs, so check the
  // out-directory plumbing on a stable spec instead: no certificate file.
  std::string input = write_temp(
      "spec7.json", R"({"genus": 0, "blocks": [{"rank":1,"degree":0},{"rank":1,"degree":1}], "c": "2"})");
  auto res = run_cli("stability --input " + input + " --N 4 --out /tmp/polystab_test_out");
  REQUIRE(res.exit_code == 0);
  std::ifstream report("/tmp/polystab_test_out/stability.json");
  REQUIRE(report.good());
  Json out;
  report >> out;
  CHECK(out["verdict"] == "no-destabilizer-found");
}

TEST_CASE("threaded sweeps produce the same bytes as serial ones") {
  std::string input = write_temp(
      "spec8.json", R"({"genus": 0, "blocks": [{"rank":1,"degree":0},{"rank":1,"degree":1}], "c": "2"})");
  auto serial = run_cli("sweep --input " + input + " --c 1.5,2,3,5 --N 4 --format csv");
  REQUIRE(serial.exit_code == 0);
  std::string cmd = "POLYSTAB_THREADS=3 " + std::string(POLYSTAB_CLI_PATH) +
                    " sweep --input " + input + " --c 1.5,2,3,5 --N 4 --format csv";
  std::array<char, 4096> buf{};
  std::string threaded;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) threaded.append(buf.data(), n);
  pclose(pipe);
  CHECK(threaded == serial.output);
}

TEST_CASE("usage and validation exit codes") {
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("extremal").exit_code == 1);  // missing --input
  std::string bad = write_temp(
      "bad.json", R"({"genus": 0, "blocks": [{"rank":1,"degree":0},{"rank":1,"degree":3}], "c": "2"})");
  CHECK(run_cli("extremal --input " + bad).exit_code == 2);  // cone violation
  CHECK(run_cli("extremal --input /nonexistent.json").exit_code == 2);
}
