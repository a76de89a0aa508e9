#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "rmt/dgp.hpp"
#include "rmt/error.hpp"
#include "rmt/max_tests.hpp"
#include "rmt/winsor.hpp"

using namespace rmt;
using doctest::Approx;

namespace {

Sample gaussian_sample(std::size_t n, std::size_t d, std::uint64_t seed) {
  return draw_sample(n, d, {}, Matrix::Identity(d, d), Vector::Zero(d), Vector::Ones(d), seed);
}

}  // namespace

TEST_CASE("correlation models") {
  CHECK(build_correlation(3, {CorrelationKind::Identity, 0}) == Matrix::Identity(3, 3));

  const auto eq = build_correlation(2, {CorrelationKind::Equicorrelated, 0.5});
  CHECK(eq(0, 1) == 0.5);
  CHECK(eq(1, 0) == 0.5);
  CHECK(eq(0, 0) == 1.0);

  const auto ar = build_correlation(3, {CorrelationKind::AR1, 0.5});
  CHECK(ar(0, 1) == 0.5);
  CHECK(ar(0, 2) == 0.25);
  CHECK(ar(2, 1) == 0.5);

  const auto ld = build_correlation(4, {CorrelationKind::LogDecay, 0.6});
  CHECK(ld(0, 3) == Approx(0.6 / std::log(5.0)));

  CHECK(build_correlation(5, {CorrelationKind::RankOne, 0}) == Matrix::Ones(5, 5));

  CHECK_THROWS_AS(build_correlation(3, {CorrelationKind::Equicorrelated, 1.0}), Error);
  CHECK_THROWS_AS(build_correlation(3, {CorrelationKind::AR1, -1.0}), Error);
  CHECK_THROWS_AS(build_correlation(3, {CorrelationKind::LogDecay, -0.1}), Error);
  CHECK_THROWS_AS(build_correlation(3, {CorrelationKind::LogDecay, 0.95}), Error);
  CHECK_THROWS_AS(build_correlation(0, {}), Error);
}

TEST_CASE("every correlation model is PSD up to d = 2000") {
  const std::vector<CorrelationModel> models{
      {CorrelationKind::Identity, 0},        {CorrelationKind::Equicorrelated, 0.9},
      {CorrelationKind::AR1, 0.95},          {CorrelationKind::AR1, -0.7},
      {CorrelationKind::LogDecay, log_decay_max_rho0()}, {CorrelationKind::RankOne, 0}};
  for (std::size_t d : {2u, 17u, 300u, 2000u}) {
    for (const auto& m : models) {
      const Matrix c = build_correlation(d, m);
      CHECK(c.diagonal().isOnes(0.0));
      CHECK((c - c.transpose()).cwiseAbs().maxCoeff() == 0.0);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(c, Eigen::EigenvaluesOnly);
      CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
    }
  }
}

TEST_CASE("draw_sample is deterministic and centred") {
  const auto a = gaussian_sample(100000, 2, 5);
  CHECK(a.data() == gaussian_sample(100000, 2, 5).data());
  CHECK_FALSE(a.data() == gaussian_sample(100000, 2, 6).data());
  for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(a.data().col(static_cast<Eigen::Index>(j)).mean()) < 0.02);
}

TEST_CASE("heavy-tailed laws are standardized") {
  const Matrix one = Matrix::Identity(1, 1);
  const auto t = draw_sample(1000000, 1, {NoiseKind::StudentT, 3.0}, one, Vector::Zero(1), Vector::Ones(1), 1);
  const double vt = (t.data().array() - t.data().mean()).square().mean();
  CHECK(std::abs(vt - 1.0) < 0.1);

  const auto p = draw_sample(1000000, 1, {NoiseKind::SymmetrizedPareto, 6.0}, one, Vector::Zero(1), Vector::Ones(1), 2);
  const double vp = (p.data().array() - p.data().mean()).square().mean();
  CHECK(std::abs(vp - 1.0) < 0.1);
  CHECK(std::abs(p.data().mean()) < 0.01);

  CHECK_THROWS_AS((NoiseLaw{NoiseKind::StudentT, 2.0}.validate()), Error);
  CHECK_THROWS_AS((NoiseLaw{NoiseKind::SymmetrizedPareto, 1.5}.validate()), Error);
}

TEST_CASE("mean, scale and correlation are realized") {
  const std::size_t d = 3;
  const Matrix c = build_correlation(d, {CorrelationKind::AR1, 0.6});
  Vector mu(3), sc(3);
  mu << 1.0, -2.0, 0.5;
  sc << 1.0, 3.0, 0.2;
  const auto s = draw_sample(200000, d, {}, c, mu, sc, 9);
  const Matrix centred = s.data().rowwise() - s.data().colwise().mean();
  const Matrix cov = centred.transpose() * centred / 200000.0;
  for (Eigen::Index j = 0; j < 3; ++j) {
    CHECK(std::abs(s.data().col(j).mean() - mu[j]) < 0.02 * sc[j]);
    CHECK(std::sqrt(cov(j, j)) == Approx(sc[j]).epsilon(0.01));
  }
  CHECK(cov(0, 1) / std::sqrt(cov(0, 0) * cov(1, 1)) == Approx(0.6).epsilon(0.02));
  CHECK(cov(0, 2) / std::sqrt(cov(0, 0) * cov(2, 2)) == Approx(0.36).epsilon(0.04));
}

TEST_CASE("all-ones correlation collapses every row to one draw") {
  const std::size_t d = 12;
  Vector mu = Vector::LinSpaced(d, -1.0, 2.0);
  Vector sc = Vector::LinSpaced(d, 0.5, 4.0);
  const auto s = draw_sample(500, d, {NoiseKind::StudentT, 5.0}, Matrix::Ones(d, d), mu, sc, 3);
  double worst = 0.0;
  for (std::size_t i = 0; i < 500; ++i) {
    const double z0 = (s(i, 0) - mu[0]) / sc[0];
    for (std::size_t j = 1; j < d; ++j) {
      worst = std::max(worst, std::abs((s(i, j) - mu[static_cast<Eigen::Index>(j)]) / sc[static_cast<Eigen::Index>(j)] - z0));
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("contamination budget") {
  CHECK(contamination_budget(0.03, 100) == 3);
  CHECK(contamination_budget(0.29, 100) == 29);
  CHECK(contamination_budget(0.0, 100) == 0);
  CHECK(contamination_budget(0.049, 100) == 4);
}

TEST_CASE("zero budget leaves the sample untouched") {
  const auto s = gaussian_sample(50, 3, 1);
  for (auto st : {ContaminationStrategy::GrossOutlier, ContaminationStrategy::SignFlipLargest,
                  ContaminationStrategy::TailExchange, ContaminationStrategy::None}) {
    ContaminationPlan plan;
    plan.strategy = st;
    plan.coords = {0};
    plan.k = 3;
    const auto out = contaminate(s, plan, 1);
    CHECK(out.sample.data() == s.data());
    CHECK(out.modified_rows.empty());
  }
}

TEST_CASE("gross outliers hit exactly the budget") {
  const auto s = gaussian_sample(100, 4, 2);
  ContaminationPlan plan;
  plan.strategy = ContaminationStrategy::GrossOutlier;
  plan.eta_bar = 0.03;
  plan.magnitude = 1e6;
  plan.coords = {0};
  const auto out = contaminate(s, plan, 7);
  REQUIRE(out.modified_rows.size() == 3);
  for (auto i : out.modified_rows) {
    CHECK(out.sample(i, 0) == 1e6);
    CHECK(out.sample(i, 1) == s(i, 1));
  }
  CHECK(contaminate(s, plan, 7).modified_rows == out.modified_rows);
  plan.coords = {4};
  CHECK_THROWS_AS(contaminate(s, plan, 7), Error);
}

TEST_CASE("mean-shift cluster and sign flip") {
  const auto s = gaussian_sample(200, 3, 4);
  ContaminationPlan shift;
  shift.strategy = ContaminationStrategy::MeanShiftCluster;
  shift.eta_bar = 0.05;
  shift.shift = Vector::Constant(3, 2.0);
  const auto a = contaminate(s, shift, 1);
  CHECK(a.modified_rows.size() == 10);
  for (auto i : a.modified_rows) CHECK(a.sample(i, 2) == Approx(s(i, 2) + 2.0));

  ContaminationPlan flip;
  flip.strategy = ContaminationStrategy::SignFlipLargest;
  flip.eta_bar = 0.02;
  const auto b = contaminate(s, flip, 1);
  REQUIRE(b.modified_rows.size() == 4);
  const Vector sup = s.data().cwiseAbs().rowwise().maxCoeff();
  double smallest_flipped = 1e300, largest_kept = 0.0;
  std::set<std::size_t> flipped(b.modified_rows.begin(), b.modified_rows.end());
  for (std::size_t i = 0; i < 200; ++i) {
    if (flipped.count(i)) smallest_flipped = std::min(smallest_flipped, sup[static_cast<Eigen::Index>(i)]);
    else largest_kept = std::max(largest_kept, sup[static_cast<Eigen::Index>(i)]);
  }
  CHECK(smallest_flipped >= largest_kept);
}

TEST_CASE("tail exchange within the invariance bound leaves the winsor report unchanged") {
  const std::size_t n = 400, d = 10;
  const auto s = gaussian_sample(n, d, 11);
  TuningConfig cfg;
  const double eps = epsilon_n(cfg.c, cfg.eta_bar, n, d);
  const auto idx = winsor_indices(n, eps);
  ContaminationPlan plan;
  plan.strategy = ContaminationStrategy::TailExchange;
  plan.k = std::min(idx.lower - 1, n - idx.upper);
  plan.eta_bar = 0.49;
  const auto out = contaminate(s, plan, 0);
  CHECK(out.modified_rows.size() <= contamination_budget(plan.eta_bar, n));
  const auto clean = winsorized_mean_stat(s, eps);
  const auto dirty = winsorized_mean_stat(out.sample, eps);
  CHECK(clean.t_vec == dirty.t_vec);
  CHECK(clean.points.lower == dirty.points.lower);
  CHECK(clean.points.upper == dirty.points.upper);
}

TEST_CASE("tail exchange respects a tight budget") {
  const auto s = gaussian_sample(100, 5, 12);
  ContaminationPlan plan;
  plan.strategy = ContaminationStrategy::TailExchange;
  plan.k = 4;
  plan.eta_bar = 0.06;
  const auto out = contaminate(s, plan, 0);
  CHECK(out.modified_rows.size() <= 6);
  CHECK_FALSE(out.modified_rows.empty());
}
