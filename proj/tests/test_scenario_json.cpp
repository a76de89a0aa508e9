#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rmt/scenario_json.hpp"

using namespace rmt;

TEST_CASE("empty suite") { CHECK(parse_suite("[]").empty()); }

TEST_CASE("full experiment") {
  const auto suite = parse_suite(R"([{
    "label": "heavy", "replications": 25, "oracle_draws": 1000,
    "methods": ["mean", "winsor-boot"],
    "tuning": {"alpha": 0.1, "c": 1.05, "c_cov": 2.0, "eta_bar": 0.001, "boot_draws": 700, "seed": 9},
    "scenario": {"n": 500, "d": 4, "seed": 77,
      "law": {"kind": "student_t", "param": 5},
      "correlation": {"kind": "AR1", "param": 0.3},
      "mu": {"sparse": [[2, 0.5], [4, -1]]},
      "scale": [1, 2, 3, 4],
      "contamination": {"strategy": "gross_outlier", "eta_bar": 0.01, "params": {"magnitude": 1e5, "coords": [1, 3]}}}
  }])");
  REQUIRE(suite.size() == 1);
  const auto& e = suite[0];
  CHECK(e.label == "heavy");
  CHECK(e.replications == 25);
  CHECK(e.oracle_draws == 1000);
  CHECK(e.methods == std::vector<Method>{Method::Mean, Method::WinsorBoot});
  CHECK(e.tuning.alpha == 0.1);
  CHECK(e.tuning.c == 1.05);
  CHECK(e.tuning.c_cov == 2.0);
  CHECK(e.tuning.boot_draws == 700);
  CHECK(e.tuning.seed == 9);
  CHECK(e.scenario.n == 500);
  CHECK(e.scenario.seed == 77);
  CHECK(e.scenario.law.kind == NoiseKind::StudentT);
  CHECK(e.scenario.law.param == 5.0);
  CHECK(e.scenario.correlation.kind == CorrelationKind::AR1);
  CHECK(e.scenario.mu[0] == 0.0);
  CHECK(e.scenario.mu[1] == 0.5);
  CHECK(e.scenario.mu[3] == -1.0);
  CHECK(e.scenario.scale[2] == 3.0);
  CHECK(e.scenario.contamination.strategy == ContaminationStrategy::GrossOutlier);
  CHECK(e.scenario.contamination.coords == std::vector<std::size_t>{0, 2});
  CHECK(e.scenario.contamination.magnitude == 1e5);
}

TEST_CASE("defaults") {
  const auto e = parse_suite(R"([{"scenario": {"n": 100, "d": 3, "mu": 0.25}}])").at(0);
  CHECK(e.label == "experiment-1");
  CHECK(e.replications == 1);
  CHECK(e.methods.size() == 3);
  CHECK(e.scenario.law.kind == NoiseKind::Gaussian);
  CHECK(e.scenario.correlation.kind == CorrelationKind::Identity);
  CHECK(e.scenario.mu == Vector::Constant(3, 0.25));
  CHECK(e.scenario.scale == Vector::Ones(3));
  CHECK(e.scenario.contamination.strategy == ContaminationStrategy::None);
  CHECK(e.tuning.alpha == 0.05);
}

TEST_CASE("other strategies") {
  const auto s = parse_suite(R"([
    {"methods": ["mean"], "scenario": {"n": 50, "d": 2, "contamination": {"strategy": "tail-exchange", "eta_bar": 0.1, "params": {"k": 3}}}},
    {"methods": ["mean"], "scenario": {"n": 50, "d": 2, "contamination": {"strategy": "MeanShiftCluster", "eta_bar": 0.1, "params": {"shift": [1, 2]}}}},
    {"methods": ["mean"], "scenario": {"n": 50, "d": 2, "law": {"kind": "pareto", "param": 3}, "correlation": {"kind": "rank_one"},
                                       "contamination": {"strategy": "sign_flip_largest", "eta_bar": 0.1}}}
  ])");
  REQUIRE(s.size() == 3);
  CHECK(s[0].scenario.contamination.k == 3);
  CHECK(s[1].scenario.contamination.shift[1] == 2.0);
  CHECK(s[2].scenario.law.kind == NoiseKind::SymmetrizedPareto);
  CHECK(s[2].scenario.correlation.kind == CorrelationKind::RankOne);
}

TEST_CASE("malformed suites") {
  auto kind = [](const std::string& text) {
    try {
      parse_suite(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::IoError;
  };
  CHECK(kind("{") == ErrorKind::InvalidParameter);
  CHECK(kind("{}") == ErrorKind::InvalidParameter);
  CHECK(kind(R"([{"label": "x"}])") == ErrorKind::InvalidParameter);
  CHECK(kind(R"([{"scenario": {"n": 10, "d": 2, "mu": [1]}}])") == ErrorKind::InvalidParameter);
  CHECK(kind(R"([{"scenario": {"n": 10, "d": 2, "mu": {"sparse": [[3, 1]]}}}])") == ErrorKind::InvalidParameter);
  CHECK(kind(R"([{"methods": ["median"], "scenario": {"n": 10, "d": 2}}])") == ErrorKind::InvalidParameter);
  CHECK(kind(R"([{"scenario": {"n": 10, "d": 2, "law": {"kind": "cauchy"}}}])") == ErrorKind::InvalidParameter);
  CHECK(kind(R"([{"methods": ["mean"], "tuning": {"c": 2}, "scenario": {"n": 10, "d": 2}}])") == ErrorKind::InvalidTuning);
  CHECK(kind(R"([{"methods": ["winsor"], "scenario": {"n": 20, "d": 1000}}])") == ErrorKind::EpsilonTooLarge);
  CHECK(kind(R"([{"scenario": {"n": "many", "d": 2}}])") == ErrorKind::InvalidParameter);
  try {
    load_suite("/nonexistent/suite.json");
    FAIL("expected FileNotFound");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FileNotFound);
  }
}
