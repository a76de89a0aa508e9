#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rmt/error.hpp"
#include "rmt/rates.hpp"

using namespace rmt;
using doctest::Approx;

namespace {

RateInputs in(std::size_t n, std::size_t d, double m, double eta = 0.0, double xi = 0.5) {
  return {n, d, m, eta, xi};
}

bool finite_nonneg(const RateReport& r) {
  for (double v : {r.a, r.b, r.c_rate, r.d_rate, r.f, r.e, r.s_n, r.cond_contam, r.cond_dim_winsor, r.cond_dim_mean}) {
    if (!(v >= 0.0) || !std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

// Reference values from a 40-digit evaluation with unit constants.
TEST_CASE("reference values") {
  const auto r = rate_report(in(1000, 100, 8));
  CHECK(r.a == Approx(0.147640535965309).epsilon(1e-12));
  CHECK(r.d_rate == Approx(0.187475549360139).epsilon(1e-12));
  CHECK(r.s_n == Approx(std::log(100.0) * std::sqrt(r.d_rate)).epsilon(1e-14));
  CHECK(r.e == Approx(r.f + std::sqrt(std::log(100.0) * std::log(1e5)) * r.d_rate).epsilon(1e-14));
  CHECK(r.c_rate == Approx(std::sqrt(std::log(100.0) * std::log(1e5)) * r.a + r.b).epsilon(1e-14));
  CHECK(r.cond_contam == 0.0);
  CHECK(r.moments_sufficient);
  CHECK(finite_nonneg(r));

  CHECK(rate_report(in(1000000, 10, 3)).cond_dim_winsor == Approx(0.795567855122303).epsilon(1e-12));
  CHECK_FALSE(rate_report(in(1000, 10, 3)).moments_sufficient);
}

TEST_CASE("condition verdicts") {
  const auto v = check_theorem_conditions(in(1000000, 10, 3));
  REQUIRE(v.size() == 3);
  CHECK(v[0].name == "cond_contam");
  CHECK(v[0].tag == Traffic::Small);
  CHECK(v[1].tag == Traffic::Moderate);

  const auto huge = check_theorem_conditions(in(100, 1000000, 8, 0.0, 0.3));
  CHECK(huge[2].value > 1.0);
  CHECK(huge[2].tag == Traffic::Large);

  CHECK(classify(0.0999) == Traffic::Small);
  CHECK(classify(0.1) == Traffic::Moderate);
  CHECK(classify(1.0) == Traffic::Large);
  CHECK(to_string(Traffic::Moderate) == "moderate");
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(rate_report(in(1000, 100, 2.0)), Error);
  CHECK_THROWS_AS(rate_report(in(2, 100, 8)), Error);
  CHECK_THROWS_AS(rate_report(in(1000, 1, 8)), Error);
  CHECK_THROWS_AS(rate_report(in(1000, 100, 8, 0.5)), Error);
  CHECK_THROWS_AS(rate_report(in(1000, 100, 8, 0.0, 1.0)), Error);
}

TEST_CASE("monotone in d and eta, nonincreasing in n") {
  // Checked where every term is individually monotone in n: eta = 0 and m > 4.
  // With eta > 0 the sqrt(n log d) eta^{1-1/m} factor grows with n by construction.
  for (double m : {4.5, 8.0, 20.0}) {
    for (std::size_t n = 1000; n < 10000000; n *= 10) {
      for (std::size_t d = 2; d < 100000; d *= 7) {
        const auto r = rate_report(in(n, d, m));
        const auto rd = rate_report(in(n, d * 7, m));
        const auto rn = rate_report(in(n * 10, d, m));
        CHECK(finite_nonneg(r));
        for (auto [lo, hi] : {std::pair{r.a, rd.a}, {r.b, rd.b}, {r.c_rate, rd.c_rate}, {r.d_rate, rd.d_rate},
                              {r.e, rd.e}, {r.s_n, rd.s_n}, {r.cond_dim_winsor, rd.cond_dim_winsor}}) {
          CHECK(hi >= lo);
        }
        for (auto [big, small] : {std::pair{r.a, rn.a}, {r.b, rn.b}, {r.c_rate, rn.c_rate}, {r.d_rate, rn.d_rate},
                                  {r.e, rn.e}, {r.s_n, rn.s_n}, {r.cond_dim_winsor, rn.cond_dim_winsor}}) {
          CHECK(small <= big);
        }
      }
    }
  }
  for (double eta : {0.0, 0.001, 0.01, 0.1}) {
    const auto lo = rate_report(in(5000, 50, 6, eta));
    const auto hi = rate_report(in(5000, 50, 6, eta * 2 + 0.001));
    CHECK(hi.d_rate >= lo.d_rate);
    CHECK(hi.e >= lo.e);
    CHECK(hi.cond_contam >= lo.cond_contam);
  }
}
