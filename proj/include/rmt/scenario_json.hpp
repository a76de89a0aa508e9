#pragma once

// Experiment suites as JSON.
//
// A suite is an array of experiments:
//   {"label": "...", "replications": 200, "oracle_draws": 0,
//    "methods": ["mean", "winsor", "winsor-boot"],
//    "tuning": {"alpha": 0.05, "c": 1.1, "c_cov": 1.1, "eta_bar": 0, "boot_draws": 2000, "seed": 0},
//    "scenario": {"n": 500, "d": 10, "seed": 1,
//                 "law": {"kind": "student_t", "param": 5},
//                 "correlation": {"kind": "ar1", "param": 0.5},
//                 "mu": [...] | {"sparse": [[j, value], ...]} | number,
//                 "scale": [...] | number,
//                 "contamination": {"strategy": "gross_outlier", "eta_bar": 0.01,
//                                   "params": {"magnitude": 1e6, "coords": [1]}}}}
// Coordinates in "sparse" and "coords" are 1-based.

#include <string>
#include <vector>

#include "rmt/harness.hpp"

namespace rmt {

/// Throws InvalidParameter on malformed or out-of-range content.
std::vector<ExperimentSpec> parse_suite(const std::string& json_text);

/// Throws FileNotFound, then as parse_suite.
std::vector<ExperimentSpec> load_suite(const std::string& path);

}  // namespace rmt
