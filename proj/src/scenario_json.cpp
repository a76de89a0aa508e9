#include "rmt/scenario_json.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rmt {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidParameter, what); }

// "Student-T", "student_t" and "studentt" all normalize to "studentt".
std::string normalize(std::string s) {
  std::erase_if(s, [](char ch) { return ch == '_' || ch == '-' || ch == ' '; });
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

NoiseLaw parse_law(const json& j) {
  NoiseLaw law;
  const auto kind = normalize(get_or<std::string>(j, "kind", "gaussian"));
  if (kind == "gaussian" || kind == "normal") {
    law.kind = NoiseKind::Gaussian;
  } else if (kind == "studentt" || kind == "t") {
    law.kind = NoiseKind::StudentT;
  } else if (kind == "symmetrizedpareto" || kind == "pareto") {
    law.kind = NoiseKind::SymmetrizedPareto;
  } else {
    bad("unknown law kind '" + kind + "'");
  }
  law.param = get_or(j, "param", 0.0);
  return law;
}

CorrelationModel parse_correlation(const json& j) {
  CorrelationModel m;
  const auto kind = normalize(get_or<std::string>(j, "kind", "identity"));
  if (kind == "identity") m.kind = CorrelationKind::Identity;
  else if (kind == "equicorrelated") m.kind = CorrelationKind::Equicorrelated;
  else if (kind == "ar1") m.kind = CorrelationKind::AR1;
  else if (kind == "logdecay") m.kind = CorrelationKind::LogDecay;
  else if (kind == "rankone") m.kind = CorrelationKind::RankOne;
  else bad("unknown correlation kind '" + kind + "'");
  m.param = get_or(j, "param", 0.0);
  return m;
}

Vector parse_vector(const json& j, std::size_t d, double fill, const char* what) {
  if (j.is_null()) return Vector::Constant(static_cast<Eigen::Index>(d), fill);
  if (j.is_number()) return Vector::Constant(static_cast<Eigen::Index>(d), j.get<double>());
  if (j.is_array()) {
    if (j.size() != d) bad(std::string(what) + " has " + std::to_string(j.size()) + " entries, expected d = " + std::to_string(d));
    Vector v(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    return v;
  }
  if (j.is_object() && j.contains("sparse")) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(d));
    for (const auto& entry : j.at("sparse")) {
      if (!entry.is_array() || entry.size() != 2) bad(std::string(what) + ": sparse entries are [index, value] pairs");
      const auto idx = entry[0].get<std::size_t>();
      if (idx < 1 || idx > d) bad(std::string(what) + ": sparse index " + std::to_string(idx) + " outside 1..d");
      v[static_cast<Eigen::Index>(idx - 1)] = entry[1].get<double>();
    }
    return v;
  }
  bad(std::string(what) + " must be a number, an array or {\"sparse\": [...]}");
}

ContaminationPlan parse_contamination(const json& j, std::size_t d) {
  ContaminationPlan plan;
  if (j.is_null()) return plan;
  const auto strategy = normalize(get_or<std::string>(j, "strategy", "none"));
  plan.eta_bar = get_or(j, "eta_bar", 0.0);
  const json params = j.contains("params") ? j.at("params") : json::object();
  if (strategy == "none") {
    plan.strategy = ContaminationStrategy::None;
  } else if (strategy == "grossoutlier") {
    plan.strategy = ContaminationStrategy::GrossOutlier;
    plan.magnitude = get_or(params, "magnitude", 1e6);
    for (auto c : get_or(params, "coords", std::vector<std::size_t>{1})) {
      if (c < 1 || c > d) bad("contamination coordinate " + std::to_string(c) + " outside 1..d");
      plan.coords.push_back(c - 1);
    }
  } else if (strategy == "meanshiftcluster") {
    plan.strategy = ContaminationStrategy::MeanShiftCluster;
    plan.shift = parse_vector(params.contains("shift") ? params.at("shift") : json(), d, 0.0, "shift");
  } else if (strategy == "signfliplargest") {
    plan.strategy = ContaminationStrategy::SignFlipLargest;
  } else if (strategy == "tailexchange") {
    plan.strategy = ContaminationStrategy::TailExchange;
    plan.k = get_or<std::size_t>(params, "k", 1);
  } else {
    bad("unknown contamination strategy '" + strategy + "'");
  }
  return plan;
}

Scenario parse_scenario(const json& j) {
  Scenario s;
  s.n = j.at("n").get<std::size_t>();
  s.d = j.at("d").get<std::size_t>();
  s.seed = get_or<std::uint64_t>(j, "seed", 0);
  s.law = parse_law(j.contains("law") ? j.at("law") : json::object());
  s.correlation = parse_correlation(j.contains("correlation") ? j.at("correlation") : json::object());
  s.mu = parse_vector(j.contains("mu") ? j.at("mu") : json(), s.d, 0.0, "mu");
  s.scale = parse_vector(j.contains("scale") ? j.at("scale") : json(), s.d, 1.0, "scale");
  s.contamination = parse_contamination(j.contains("contamination") ? j.at("contamination") : json(), s.d);
  return s;
}

TuningConfig parse_tuning(const json& j) {
  TuningConfig t;
  if (j.is_null()) return t;
  t.alpha = get_or(j, "alpha", t.alpha);
  t.c = get_or(j, "c", t.c);
  t.c_cov = get_or(j, "c_cov", t.c_cov);
  t.eta_bar = get_or(j, "eta_bar", t.eta_bar);
  t.boot_draws = get_or(j, "boot_draws", t.boot_draws);
  t.seed = get_or(j, "seed", t.seed);
  return t;
}

ExperimentSpec parse_experiment(const json& j, std::size_t position) {
  if (!j.is_object()) bad("suite entry " + std::to_string(position) + " is not an object");
  ExperimentSpec spec;
  spec.label = get_or<std::string>(j, "label", "experiment-" + std::to_string(position));
  if (!j.contains("scenario")) bad("experiment '" + spec.label + "' has no scenario");
  spec.scenario = parse_scenario(j.at("scenario"));
  spec.tuning = parse_tuning(j.contains("tuning") ? j.at("tuning") : json());
  spec.replications = get_or<std::size_t>(j, "replications", 1);
  spec.oracle_draws = get_or<std::size_t>(j, "oracle_draws", 0);
  for (const auto& m : get_or(j, "methods", std::vector<std::string>{"mean", "winsor", "winsor-boot"})) {
    const auto method = parse_method(m);
    if (!method) bad("experiment '" + spec.label + "': unknown method '" + m + "'");
    spec.methods.push_back(*method);
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    std::string msg = e.what();
    msg.erase(0, msg.find(": ") + 2);
    throw Error(e.kind(), "experiment '" + spec.label + "': " + msg);
  }
  return spec;
}

}  // namespace

std::vector<ExperimentSpec> parse_suite(const std::string& json_text) {
  try {
    const json doc = json::parse(json_text);
    if (!doc.is_array()) bad("suite must be a JSON array of experiments");
    std::vector<ExperimentSpec> out;
    for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(parse_experiment(doc[i], i + 1));
    return out;
  } catch (const json::exception& e) {
    bad(std::string("malformed suite: ") + e.what());
  }
}

std::vector<ExperimentSpec> load_suite(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileNotFound, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_suite(ss.str());
}

}  // namespace rmt
