#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rmt/critical.hpp"
#include "rmt/harness.hpp"

using namespace rmt;
using doctest::Approx;

namespace {

ExperimentSpec null_spec(std::size_t n, std::size_t d, std::size_t reps, std::vector<Method> methods) {
  ExperimentSpec s;
  s.scenario.n = n;
  s.scenario.d = d;
  s.scenario.mu = Vector::Zero(d);
  s.scenario.scale = Vector::Ones(d);
  s.scenario.seed = 314;
  s.methods = std::move(methods);
  s.replications = reps;
  s.label = "null";
  return s;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("classic test holds its size") {
  const auto res = run_experiment(null_spec(2000, 50, 2000, {Method::Mean}), 1);
  const auto* m = res.find(Method::Mean);
  REQUIRE(m);
  CHECK(m->reject_rate >= 0.035);
  CHECK(m->reject_rate <= 0.065);
  CHECK(m->reject_rate == static_cast<double>(m->reject_count) / 2000.0);
  CHECK_FALSE(m->oracle_power.has_value());
}

TEST_CASE("results do not depend on the thread count") {
  auto spec = null_spec(300, 6, 40, {Method::Mean, Method::Winsor, Method::WinsorBoot});
  spec.scenario.mu[0] = 0.15;
  spec.tuning.boot_draws = 500;
  spec.oracle_draws = 2000;
  const auto a = run_experiment(spec, 1);
  const auto b = run_experiment(spec, 3);
  const auto c = run_experiment(spec, 1);
  REQUIRE(a.methods.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a.methods[i].reject_count == b.methods[i].reject_count);
    CHECK(a.methods[i].reject_count == c.methods[i].reject_count);
    CHECK(a.methods[i].oracle_power == b.methods[i].oracle_power);
  }
  CHECK(a.bootstrap_above_diag == b.bootstrap_above_diag);
  CHECK(a.dominance_holds());
}

TEST_CASE("single replication is reproducible") {
  const auto spec = null_spec(100, 3, 1, {Method::Winsor});
  CHECK(run_experiment(spec).methods[0].reject_count == run_experiment(spec).methods[0].reject_count);
}

TEST_CASE("null oracle gives alpha") {
  auto spec = null_spec(200, 10, 1, {Method::Winsor});
  spec.oracle_draws = 100000;
  const auto res = run_experiment(spec);
  REQUIRE(res.methods[0].oracle_power.has_value());
  CHECK(*res.methods[0].oracle_power == Approx(0.05).epsilon(0.1));
}

TEST_CASE("invalid specs are rejected up front") {
  auto spec = null_spec(20, 1000, 1, {Method::Winsor});
  CHECK_THROWS_AS(run_experiment(spec), Error);
  spec = null_spec(100, 2, 0, {Method::Mean});
  CHECK_THROWS_AS(run_experiment(spec), Error);
  spec = null_spec(100, 2, 1, {});
  CHECK_THROWS_AS(run_experiment(spec), Error);
}

TEST_CASE("replication errors keep the cause") {
  const ReplicationError e(7, Error(ErrorKind::AllCoordinatesDegenerate, "every coordinate is constant"));
  CHECK(e.kind() == ErrorKind::AllCoordinatesDegenerate);
  CHECK(e.replication() == 7);
  CHECK(std::string(e.what()) == "AllCoordinatesDegenerate: replication 7: every coordinate is constant");
}

TEST_CASE("CSV emission") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = (dir / "rmt_results.csv").string();

  emit_results_csv({}, path);
  CHECK(slurp(path) == "label,n,d,method,reject_rate,mc_halfwidth,oracle_power,seed\n");

  auto spec = null_spec(200, 4, 10, {Method::Mean, Method::Winsor});
  spec.label = "two, methods";
  const auto res = run_experiment(spec);
  emit_results_csv({{spec, res}}, path);
  const auto first = slurp(path);
  CHECK(std::count(first.begin(), first.end(), '\n') == 3);
  CHECK(first.find("\"two, methods\",200,4,mean,") != std::string::npos);
  CHECK(first.find(",winsor,") != std::string::npos);
  CHECK(first.find(",,314\n") != std::string::npos);

  emit_results_csv({{spec, res}}, path);
  CHECK(slurp(path) == first);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(emit_results_csv({}, "/nonexistent-dir/x.csv"), Error);
}
