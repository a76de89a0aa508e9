#include "rmt/types.hpp"

#include <cmath>
#include <string>

#include "rmt/error.hpp"

namespace rmt {

void MomentClass::validate() const {
  if (!(b1 > 0.0) || !(b2 > b1) || !(m > 2.0)) {
    throw Error(ErrorKind::InvalidParameter, "moment class requires 0 < b1 < b2 and m > 2");
  }
}

void TuningConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::InvalidTuning, "alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  if (!(c > 1.0 && c < std::sqrt(1.5))) {
    throw Error(ErrorKind::InvalidTuning, "c must lie in (1, sqrt(1.5)), got " + std::to_string(c));
  }
  if (!(c_cov > 1.0) || !std::isfinite(c_cov)) {
    throw Error(ErrorKind::InvalidTuning, "c_cov must exceed 1, got " + std::to_string(c_cov));
  }
  if (!(eta_bar >= 0.0 && eta_bar < 0.5)) {
    throw Error(ErrorKind::InvalidTuning, "eta_bar must lie in [0, 1/2), got " + std::to_string(eta_bar));
  }
  if (boot_draws == 0) {
    throw Error(ErrorKind::InvalidTuning, "boot_draws must be positive");
  }
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Mean: return "mean";
    case Method::Winsor: return "winsor";
    case Method::WinsorBoot: return "winsor-boot";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view text) {
  if (text == "mean" || text == "Mean") return Method::Mean;
  if (text == "winsor" || text == "Winsor") return Method::Winsor;
  if (text == "winsor-boot" || text == "winsor_boot" || text == "WinsorBoot") return Method::WinsorBoot;
  return std::nullopt;
}

namespace {

// Bitwise comparison so that NaN placeholders on degenerate coordinates compare equal.
bool same_bits(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i] && !(std::isnan(a[i]) && std::isnan(b[i]))) return false;
  }
  return true;
}

}  // namespace

bool TestReport::operator==(const TestReport& o) const {
  return method == o.method && n == o.n && d == o.d && same_bits(coord_stats, o.coord_stats) &&
         sup_norm == o.sup_norm && critical_value == o.critical_value && reject == o.reject &&
         epsilon_used == o.epsilon_used && epsilon_prime_used == o.epsilon_prime_used &&
         degenerate_coords == o.degenerate_coords;
}

}  // namespace rmt
