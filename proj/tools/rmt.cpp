// rmt: command-line front end.
//
//   rmt test     --dataset data.csv --method winsor-boot [--alpha --c --c_cov --eta_bar --boot_draws --seed --has_header --verbose]
//   rmt critval  --d 100 --alpha 0.05 --mode exact|expansion|mc [--corr_file --draws --seed]
//   rmt rates    --n 1000 --d 100 --m 8 [--eta_bar --xi]
//   rmt simulate --suite suite.json --out results.csv [--threads]
//
// Exit codes: 0 success, 2 usage or configuration, 3 data, 4 failure mid-suite.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmt/critical.hpp"
#include "rmt/error.hpp"
#include "rmt/harness.hpp"
#include "rmt/max_tests.hpp"
#include "rmt/rates.hpp"
#include "rmt/sample_io.hpp"
#include "rmt/scenario_json.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kData = 3;
constexpr int kRuntime = 4;

bool is_data_error(rmt::ErrorKind k) {
  using rmt::ErrorKind;
  switch (k) {
    case ErrorKind::FileNotFound:
    case ErrorKind::RaggedRows:
    case ErrorKind::NonNumericCell:
    case ErrorKind::EmptyFile:
    case ErrorKind::IoError:
      return true;
    default:
      return false;
  }
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

int fail(const rmt::Error& e, int code) {
  std::cerr << "rmt: " << e.what() << '\n';
  return code;
}

struct TestArgs {
  std::string dataset;
  std::string method = "winsor";
  rmt::TuningConfig tuning;
  bool has_header = false;
  bool verbose = false;
};

int cmd_test(const TestArgs& a) {
  const auto method = rmt::parse_method(a.method);
  if (!method) {
    std::cerr << "rmt: unknown method '" << a.method << "' (mean, winsor, winsor-boot)\n";
    return kUsage;
  }
  rmt::Sample sample;
  try {
    a.tuning.validate();
    sample = rmt::load_sample_csv(a.dataset, a.has_header);
  } catch (const rmt::Error& e) {
    return fail(e, is_data_error(e.kind()) ? kData : kUsage);
  }
  if (const auto findings = rmt::validate_sample(sample); !findings.empty()) {
    for (const auto& f : findings) std::cerr << "rmt: " << rmt::describe(f) << '\n';
    return kData;
  }

  rmt::TestReport r;
  try {
    r = rmt::run_test(*method, sample, a.tuning);
  } catch (const rmt::Error& e) {
    const bool config = e.kind() == rmt::ErrorKind::InvalidTuning || e.kind() == rmt::ErrorKind::EpsilonTooLarge ||
                        e.kind() == rmt::ErrorKind::InvalidParameter;
    return fail(e, config ? kUsage : kData);
  }

  json out;
  out["method"] = std::string(rmt::to_string(r.method));
  out["n"] = r.n;
  out["d"] = r.d;
  out["sup_norm"] = r.sup_norm;
  out["critical_value"] = r.critical_value;
  out["reject"] = r.reject;
  out["epsilon"] = r.epsilon_used ? json(*r.epsilon_used) : json(nullptr);
  out["epsilon_prime"] = r.epsilon_prime_used ? json(*r.epsilon_prime_used) : json(nullptr);
  json degenerate = json::array();
  for (auto j : r.degenerate_coords) degenerate.push_back(j + 1);
  out["degenerate_coords"] = degenerate;
  if (a.verbose) {
    json stats = json::array();
    for (Eigen::Index j = 0; j < r.coord_stats.size(); ++j) {
      stats.push_back(std::isnan(r.coord_stats[j]) ? json(nullptr) : json(r.coord_stats[j]));
    }
    out["coord_stats"] = stats;
  }
  print_json(out);
  return kOk;
}

struct CritvalArgs {
  std::optional<std::size_t> d;
  double alpha = 0.05;
  std::string mode = "exact";
  std::string corr_file;
  std::size_t draws = 100000;
  std::uint64_t seed = 0;
};

int cmd_critval(const CritvalArgs& a) {
  rmt::Matrix corr;
  if (!a.corr_file.empty()) {
    if (a.mode != "mc") {
      std::cerr << "rmt: --corr_file only applies to --mode mc\n";
      return kUsage;
    }
    try {
      corr = rmt::load_matrix_csv(a.corr_file);
    } catch (const rmt::Error& e) {
      return fail(e, is_data_error(e.kind()) ? kData : kUsage);
    }
    if (a.d && static_cast<Eigen::Index>(*a.d) != corr.rows()) {
      std::cerr << "rmt: --d " << *a.d << " disagrees with the " << corr.rows() << "x" << corr.cols() << " correlation file\n";
      return kUsage;
    }
  }
  const std::size_t d = a.d ? *a.d : static_cast<std::size_t>(corr.rows());
  if (d == 0) {
    std::cerr << "rmt: --d is required unless --corr_file is given\n";
    return kUsage;
  }

  double cv = 0.0;
  try {
    if (a.mode == "exact") {
      cv = rmt::cv_diag_exact(d, a.alpha);
    } else if (a.mode == "expansion") {
      cv = rmt::cv_diag_expansion(d, a.alpha);
    } else if (a.mode == "mc") {
      if (corr.size() == 0) corr = rmt::Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      cv = rmt::mc_sup_quantile(corr, a.alpha, a.draws, a.seed);
    } else {
      std::cerr << "rmt: unknown mode '" << a.mode << "' (exact, expansion, mc)\n";
      return kUsage;
    }
  } catch (const rmt::Error& e) {
    return fail(e, kUsage);
  }
  print_json({{"critical_value", cv}, {"mode", a.mode}, {"d", d}, {"alpha", a.alpha}});
  return kOk;
}

int cmd_rates(const rmt::RateInputs& in) {
  rmt::RateReport r;
  std::vector<rmt::ConditionVerdict> verdicts;
  try {
    r = rmt::rate_report(in);
    verdicts = rmt::check_theorem_conditions(in);
  } catch (const rmt::Error& e) {
    return fail(e, kUsage);
  }
  json out = {{"a", r.a},
              {"b", r.b},
              {"c_rate", r.c_rate},
              {"d_rate", r.d_rate},
              {"f", r.f},
              {"e", r.e},
              {"s_n", r.s_n},
              {"cond_contam", r.cond_contam},
              {"cond_dim_winsor", r.cond_dim_winsor},
              {"cond_dim_mean", r.cond_dim_mean},
              {"moments_sufficient", r.moments_sufficient}};
  json conds = json::object();
  for (const auto& v : verdicts) conds[v.name] = {{"value", v.value}, {"tag", rmt::to_string(v.tag)}};
  out["conditions"] = conds;
  print_json(out);
  return kOk;
}

struct SimulateArgs {
  std::string suite;
  std::string out;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

int cmd_simulate(const SimulateArgs& a) {
  std::vector<rmt::ExperimentSpec> suite;
  try {
    suite = rmt::load_suite(a.suite);
  } catch (const rmt::Error& e) {
    return fail(e, kUsage);
  }
  std::ofstream csv(a.out, std::ios::binary | std::ios::trunc);
  if (!csv) {
    std::cerr << "rmt: cannot open " << a.out << " for writing\n";
    return kUsage;
  }
  rmt::write_results_header(csv);
  csv.flush();

  std::cout << std::left << std::setw(28) << "label" << std::setw(13) << "method" << "reject_rate\n";
  for (const auto& spec : suite) {
    rmt::ExperimentResult res;
    try {
      res = rmt::run_experiment(spec, a.threads);
    } catch (const rmt::Error& e) {
      csv.flush();
      std::cerr << "rmt: experiment '" << spec.label << "' failed: " << e.what() << '\n';
      return kRuntime;
    }
    rmt::write_result_rows(csv, spec, res);
    csv.flush();
    for (const auto& m : res.methods) {
      std::cout << std::setw(28) << spec.label << std::setw(13) << rmt::to_string(m.method) << m.reject_rate << '\n';
    }
  }
  if (!csv) {
    std::cerr << "rmt: failed writing " << a.out << '\n';
    return kRuntime;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust high-dimensional max-tests for a zero mean"};
  app.require_subcommand(1, 1);

  TestArgs test;
  auto* t = app.add_subcommand("test", "Test H0: mu = 0 on a CSV dataset (rows = observations)");
  t->add_option("--dataset,dataset", test.dataset, "CSV file")->required();
  t->add_option("--method", test.method, "mean | winsor | winsor-boot")->capture_default_str();
  t->add_option("--alpha", test.tuning.alpha)->capture_default_str();
  t->add_option("--c", test.tuning.c, "winsorization tuning in (1, sqrt(1.5))")->capture_default_str();
  t->add_option("--c_cov,--c-cov", test.tuning.c_cov)->capture_default_str();
  t->add_option("--eta_bar,--eta-bar", test.tuning.eta_bar, "assumed contamination fraction")->capture_default_str();
  t->add_option("--boot_draws,--boot-draws", test.tuning.boot_draws)->capture_default_str();
  t->add_option("--seed", test.tuning.seed)->capture_default_str();
  t->add_flag("--has_header,--has-header", test.has_header, "skip the first line");
  t->add_flag("--verbose", test.verbose, "include per-coordinate statistics");

  CritvalArgs cv;
  auto* c = app.add_subcommand("critval", "Critical value of the max-test");
  c->add_option("--d", cv.d, "dimension");
  c->add_option("--alpha", cv.alpha)->capture_default_str();
  c->add_option("--mode", cv.mode, "exact | expansion | mc")->capture_default_str();
  c->add_option("--corr_file,--corr-file", cv.corr_file, "correlation matrix CSV for mc");
  c->add_option("--draws", cv.draws)->capture_default_str();
  c->add_option("--seed", cv.seed)->capture_default_str();

  rmt::RateInputs rates;
  auto* r = app.add_subcommand("rates", "Rate diagnostics with unit constants");
  r->add_option("--n", rates.n)->required();
  r->add_option("--d", rates.d)->required();
  r->add_option("--m", rates.m, "moment order, > 2")->required();
  r->add_option("--eta_bar,--eta-bar", rates.eta_bar)->capture_default_str();
  r->add_option("--xi", rates.xi)->capture_default_str();

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Run a JSON experiment suite");
  s->add_option("--suite,suite", sim.suite, "JSON array of experiments")->required();
  s->add_option("--out", sim.out, "results CSV")->required();
  s->add_option("--threads", sim.threads)->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (t->parsed()) return cmd_test(test);
  if (c->parsed()) return cmd_critval(cv);
  if (r->parsed()) return cmd_rates(rates);
  return cmd_simulate(sim);
}
