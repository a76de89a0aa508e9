#include "rmt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "rmt/critical.hpp"
#include "rmt/max_tests.hpp"
#include "rmt/seeding.hpp"
#include "rmt/winsor.hpp"

namespace rmt {
namespace {

constexpr std::uint64_t kContaminationStream = 0x636f6e74616d0001ULL;
constexpr std::uint64_t kOracleStream = 0x6f7261636c650001ULL;

std::string strip_kind(const Error& e) {
  std::string msg = e.what();
  const auto prefix = std::string(to_string(e.kind())) + ": ";
  if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
  return msg;
}

bool wants_winsor(const std::vector<Method>& methods) {
  return std::any_of(methods.begin(), methods.end(), [](Method m) { return m != Method::Mean; });
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

struct ReplicationOutcome {
  std::vector<char> reject;  // one per method
  bool boot_above_diag = false;
};

}  // namespace

void Scenario::validate() const {
  if (n < 2) throw Error(ErrorKind::InvalidParameter, "scenario n must be at least 2");
  if (d < 1) throw Error(ErrorKind::InvalidParameter, "scenario d must be positive");
  if (static_cast<std::size_t>(mu.size()) != d) throw Error(ErrorKind::InvalidParameter, "mu must have length d");
  if (static_cast<std::size_t>(scale.size()) != d) throw Error(ErrorKind::InvalidParameter, "scale must have length d");
  law.validate();
  contamination.validate(d);
}

Vector Scenario::standardized_shift() const {
  return (std::sqrt(static_cast<double>(n)) * mu.array() / scale.array()).matrix();
}

void ExperimentSpec::validate() const {
  scenario.validate();
  tuning.validate();
  if (replications < 1) throw Error(ErrorKind::InvalidParameter, "replications must be at least 1");
  if (methods.empty()) throw Error(ErrorKind::InvalidParameter, "at least one method is required");
  if (wants_winsor(methods)) {
    epsilon_n(tuning.c, tuning.eta_bar, scenario.n, scenario.d);
    epsilon_prime_n(tuning.c_cov, tuning.eta_bar, scenario.n, scenario.d);
  }
}

const MethodResult* ExperimentResult::find(Method m) const {
  for (const auto& r : methods) {
    if (r.method == m) return &r;
  }
  return nullptr;
}

bool ExperimentResult::dominance_holds() const {
  const auto* w = find(Method::Winsor);
  const auto* wb = find(Method::WinsorBoot);
  if (!w || !wb) return true;
  return wb->reject_count + bootstrap_above_diag >= w->reject_count;
}

ReplicationError::ReplicationError(std::size_t replication, const Error& cause)
    : Error(cause.kind(), "replication " + std::to_string(replication) + ": " + strip_kind(cause), {replication}),
      replication_(replication) {}

ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned threads) {
  spec.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const Scenario& scn = spec.scenario;
  const std::size_t R = spec.replications;
  const std::size_t k = spec.methods.size();
  const Matrix corr = build_correlation(scn.d, scn.correlation);
  const SampleGenerator gen(scn.law, corr, scn.mu, scn.scale);
  const double cv_diag = cv_diag_exact(scn.d, spec.tuning.alpha);
  const bool both_winsor = std::count(spec.methods.begin(), spec.methods.end(), Method::Winsor) &&
                           std::count(spec.methods.begin(), spec.methods.end(), Method::WinsorBoot);

  std::vector<ReplicationOutcome> outcomes(R);
  auto run_one = [&](std::size_t r) {
    const std::uint64_t data_seed = substream(scn.seed, r);
    Sample s = gen.draw(scn.n, data_seed);
    if (scn.contamination.strategy != ContaminationStrategy::None) {
      s = contaminate(s, scn.contamination, substream(data_seed, kContaminationStream)).sample;
    }
    TuningConfig cfg = spec.tuning;
    cfg.seed = substream(spec.tuning.seed, r);

    ReplicationOutcome out;
    out.reject.assign(k, 0);
    std::optional<WinsorStatistic> stat;
    std::optional<double> boot_cv;
    for (std::size_t m = 0; m < k; ++m) {
      const Method method = spec.methods[m];
      if (method == Method::Mean) {
        out.reject[m] = run_mean_test(s, cfg).reject;
        continue;
      }
      if (!stat) stat = snw_statistic(s, cfg);
      const auto rep = method == Method::Winsor ? winsor_report(*stat, scn.n, cfg) : winsor_boot_report(*stat, scn.n, cfg);
      out.reject[m] = rep.reject;
      if (method == Method::WinsorBoot) boot_cv = rep.critical_value;
    }
    out.boot_above_diag = both_winsor && boot_cv && *boot_cv > cv_diag;
    outcomes[r] = std::move(out);
  };

  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex fail_mu;
  std::optional<std::pair<std::size_t, Error>> failure;
  auto worker = [&] {
    for (;;) {
      if (stop.load()) return;
      const std::size_t r = next.fetch_add(1);
      if (r >= R) return;
      try {
        run_one(r);
      } catch (const Error& e) {
        std::lock_guard lock(fail_mu);
        if (!failure || r < failure->first) failure.emplace(r, e);
        stop.store(true);
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::size_t>(R, 1024))));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  // Replications are claimed in increasing order, so every r below the first
  // recorded failure has completed and the reported replication is deterministic.
  if (failure) throw ReplicationError(failure->first + 1, failure->second);

  ExperimentResult res;
  res.replications = R;
  for (const auto& o : outcomes) res.bootstrap_above_diag += o.boot_above_diag ? 1 : 0;

  const bool want_oracle = spec.oracle_draws > 0 || !scn.is_null();
  const std::size_t oracle_draws = spec.oracle_draws > 0 ? spec.oracle_draws : ExperimentSpec::kDefaultOracleDraws;
  const Vector shift = scn.standardized_shift();
  std::optional<double> oracle_diag;

  for (std::size_t m = 0; m < k; ++m) {
    MethodResult mr;
    mr.method = spec.methods[m];
    for (const auto& o : outcomes) mr.reject_count += o.reject[m] ? 1 : 0;
    mr.reject_rate = static_cast<double>(mr.reject_count) / static_cast<double>(R);
    mr.mc_halfwidth = 1.96 * std::sqrt(mr.reject_rate * (1.0 - mr.reject_rate) / static_cast<double>(R));
    if (want_oracle) {
      const std::uint64_t oseed = substream(scn.seed, kOracleStream);
      if (mr.method == Method::WinsorBoot) {
        const double cv = mc_sup_quantile(corr, spec.tuning.alpha, oracle_draws, substream(oseed, 1), threads);
        mr.oracle_power = gaussian_power_oracle({corr, shift, cv}, oracle_draws, oseed, threads);
      } else {
        if (!oracle_diag) oracle_diag = gaussian_power_oracle({corr, shift, cv_diag}, oracle_draws, oseed, threads);
        mr.oracle_power = oracle_diag;
      }
    }
    res.methods.push_back(mr);
  }
  res.wallclock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

void write_results_header(std::ostream& os) {
  os << "label,n,d,method,reject_rate,mc_halfwidth,oracle_power,seed\n";
}

void write_result_rows(std::ostream& os, const ExperimentSpec& spec, const ExperimentResult& result) {
  for (const auto& m : result.methods) {
    os << csv_field(spec.label) << ',' << spec.scenario.n << ',' << spec.scenario.d << ',' << to_string(m.method) << ','
       << format_double(m.reject_rate) << ',' << format_double(m.mc_halfwidth) << ','
       << (m.oracle_power ? format_double(*m.oracle_power) : std::string()) << ',' << spec.scenario.seed << '\n';
  }
}

void emit_results_csv(const std::vector<ResultRow>& results, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
  write_results_header(out);
  for (const auto& [spec, res] : results) write_result_rows(out, spec, res);
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "failed writing " + path);
}

}  // namespace rmt
