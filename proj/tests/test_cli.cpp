#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "icisqf/corpus.hpp"
#include "icisqf/report.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace icisqf;
using nlohmann::json;

namespace {

const std::string kCli = ICISQF_CLI;
const std::string kProblems = ICISQF_PROBLEMS;

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string out_path = "cli_test_output.txt";
  const std::string cmd = kCli + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::remove(out_path.c_str());
  return r;
}

const json* find_check(const json& doc, const std::string& name) {
  for (const json& c : doc["checks"]) {
    if (c["name"] == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("problem files are validated") {
  CHECK_NOTHROW(ProblemFile::from_json(json::parse(R"({"variables":["x"],"f":[],"omega":["x"]})")));
  CHECK_THROWS_AS(ProblemFile::from_json(json::parse(R"([1, 2])")), InputError);
  CHECK_THROWS_AS(ProblemFile::from_json(json::parse(R"({"variables":["x","y"],"omega":["x"]})")), InputError);
  CHECK_THROWS_AS(ProblemFile::from_json(json::parse(R"({"variables":["x"],"omega":["x"],"extra":1})")),
                  InputError);
  CHECK_THROWS_AS(ProblemFile::from_json(json::parse(R"({"variables":["x"],"f":["x"],"omega":["1"]})")),
                  InputError);
  CHECK_THROWS_AS(
      ProblemFile::from_json(json::parse(R"({"variables":["x","y"],"f":["x"],"omega":["1","0"],"mode":"elkh"})")),
      InputError);
  CHECK_THROWS_AS(ProblemFile::from_json(json::parse(R"({"variables":["x"],"omega":["x"],"mode":"other"})")),
                  InputError);
  CHECK_THROWS_AS(ProblemFile::from_json(json::parse(R"({"variables":["x"],"omega":[3]})")), InputError);
  CHECK_THROWS_AS(ProblemFile::load(kProblems + "/does_not_exist.json"), InputError);

  const ProblemFile bad = ProblemFile::load(kProblems + "/bad_polynomial.json");
  CHECK_THROWS_AS(bad.instance(), InputError);
  const ProblemFile shifted = ProblemFile::from_json(json::parse(R"({"variables":["x"],"f":[],"omega":["x + 1"]})"));
  CHECK_NOTHROW(shifted.instance());
  const ProblemFile unit = ProblemFile::from_json(json::parse(R"({"variables":["x","y"],"f":["x + 1"],"omega":["1","0"]})"));
  CHECK_THROWS_AS(unit.instance(), InputError);
}

TEST_CASE("problem files round trip") {
  const ProblemFile p = ProblemFile::load(kProblems + "/elkh_z3.json");
  CHECK(p.mode == Mode::elkh);
  const ProblemFile q = ProblemFile::from_json(p.to_json());
  CHECK(q.to_json() == p.to_json());
  const ProblemInstance built = weighted_quadric(3).instance();
  const ProblemInstance loaded = ProblemFile::load(kProblems + "/quadric_n3.json").instance();
  CHECK(built.f == loaded.f);
  CHECK(built.A == loaded.A);
}

TEST_CASE("report for the weighted quadric at n = 3") {
  const AnalyzeOptions opts;
  const Report rep = analyze(weighted_quadric(3), opts);
  const json& doc = rep.doc;
  CHECK(rep.passed());
  CHECK(doc["passed"] == true);
  CHECK(doc["nu"] == 6);
  CHECK(doc["tau_prime"] == 1);
  CHECK(doc["omega_dim"] == 6);
  CHECK(doc["basis"].size() == 6);
  CHECK(doc["gram_qa"]["rank"] == 5);
  CHECK(doc["gram_qa"]["rank_mode"] == "exact");
  CHECK(doc["ranks"]["qomega"] == 3);
  CHECK(doc["ranks"]["image_lambda"] == 5);
  CHECK(doc["ranks"]["tight"] == true);
  CHECK(doc["config"]["seed"] == 42);
  for (const std::string name : {"ideal_vanishing", "class_invariance", "two_route_qomega",
                                 "count_certification", "omega_dim_equals_nu", "rank_gap", "limit_stability"}) {
    const json* c = find_check(doc, name);
    REQUIRE_MESSAGE(c != nullptr, name);
    CHECK((*c)["passed"] == true);
  }
  // Exact entries parse back and match the numeric ones.
  const json& g = doc["gram_qa"];
  for (std::size_t i = 0; i < g["exact"].size(); ++i) {
    for (std::size_t j = 0; j < g["exact"][i].size(); ++j) {
      const auto q = parse_rational(g["exact"][i][j].get<std::string>());
      REQUIRE(q);
      CHECK(std::abs(to_double(*q) - g["numeric"][i][j].get<double>()) < 1e-8);
    }
  }
  for (const json& r : doc["r_values"]) CHECK(std::abs(r["imaginary"].get<double>()) < 1e-9);
}

TEST_CASE("map germ report") {
  const Report rep = analyze(ProblemFile::load(kProblems + "/elkh_z3.json"), AnalyzeOptions{});
  CHECK(rep.passed());
  CHECK(rep.doc["local_degree"] == 3);
  CHECK(rep.doc.contains("gram_elkh"));
  CHECK_FALSE(rep.doc.contains("gram_qa"));
  CHECK(find_check(rep.doc, "nondegenerate") != nullptr);
}

TEST_CASE("numeric mode reports rank intervals") {
  AnalyzeOptions opts;
  opts.exact = false;
  const Report rep = analyze(ProblemFile::load(kProblems + "/cusp.json"), opts);
  CHECK(rep.doc["gram_qa"]["rank_mode"] == "numeric");
  CHECK(rep.doc["gram_qa"]["exact"].is_null());
  CHECK(rep.doc["gram_qa"]["rank_interval"].size() == 2);
  CHECK(rep.doc["gram_qa"]["rank"] == 4);
}

TEST_CASE("reports are reproducible") {
  const ProblemFile p = ProblemFile::load(kProblems + "/space_curve.json");
  AnalyzeOptions one, four;
  four.limits.solver.threads = 4;
  const std::string a = analyze(p, one).dump();
  CHECK(a == analyze(p, one).dump());
  CHECK(a == analyze(p, four).dump());
  AnalyzeOptions other;
  other.seed = 7;
  const Report b = analyze(p, other);
  CHECK(b.doc["gram_qa"]["exact"] == json::parse(a)["gram_qa"]["exact"]);
}

TEST_CASE("command line exit codes") {
  const Run ok = run_cli("analyze " + kProblems + "/cusp.json");
  CHECK(ok.code == 0);
  const json doc = json::parse(ok.out);
  CHECK(doc["nu"] == 4);
  CHECK(ok.out == run_cli("analyze --threads 4 " + kProblems + "/cusp.json").out);

  const Run iso = run_cli("analyze " + kProblems + "/nonisolated.json");
  CHECK(iso.code == 3);
  CHECK(json::parse(iso.out)["error"]["kind"] == "not_isolated");

  const Run bad = run_cli("analyze " + kProblems + "/bad_polynomial.json");
  CHECK(bad.code == 4);
  CHECK(json::parse(bad.out)["error"]["kind"] == "input");

  CHECK(run_cli("analyze " + kProblems + "/does_not_exist.json").code == 4);
  CHECK(run_cli("analyze --samples 15 " + kProblems + "/cusp.json").code == 4);
  CHECK(run_cli("analyze --radii 0.005,0.01 " + kProblems + "/cusp.json").code == 4);
  CHECK(run_cli("frobnicate").code == 4);

  // Circles far outside the cluster radius lose the points.
  const Run lost = run_cli("analyze --radii 0.9,0.8 " + kProblems + "/cusp.json");
  CHECK(lost.code == 2);
  CHECK(json::parse(lost.out)["error"]["kind"] == "count_mismatch");
}

TEST_CASE("corpus table") {
  const Run r = run_cli("verify-corpus");
  // One row fails by design: the cusp rank against the (n-1)st power.
  CHECK(r.code == 1);
  CHECK(r.out.find("claims hold") != std::string::npos);
  CHECK(r.out.find("instance") == 0);
}
