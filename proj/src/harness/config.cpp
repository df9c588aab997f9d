#include "qbandit/harness/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qbandit/harness/actions.hpp"

namespace qbandit {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) {
      throw ConfigError(where.empty() ? key : where + "." + key, "unknown key");
    }
  }
}

std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

double get_number(const json& obj, const std::string& where, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(join(where, key), "expected a number");
  return v.get<double>();
}

std::int64_t get_integer(const json& obj, const std::string& where, const char* key,
                         std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  // Allow 1e6-style literals as long as they are whole numbers.
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9.0e18) {
      return static_cast<std::int64_t>(d);
    }
  }
  throw ConfigError(join(where, key), "expected an integer");
}

bool get_bool(const json& obj, const std::string& where, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(join(where, key), "expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& where, const char* key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(join(where, key), "expected a string");
  return v.get<std::string>();
}

std::vector<double> get_number_list(const json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(field, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

NoiseModel parse_noise(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where, "expected an object");
  reject_unknown_keys(obj, where, {"err1", "err2", "g1_per_query", "g2_per_query"});
  NoiseModel n;
  n.err1 = get_number(obj, where, "err1", 0.0);
  n.err2 = get_number(obj, where, "err2", 0.0);
  n.g1_per_query = get_number(obj, where, "g1_per_query", n.g1_per_query);
  n.g2_per_query = get_number(obj, where, "g2_per_query", n.g2_per_query);
  return n;
}

void check_noise(const NoiseModel& n, const std::string& where) {
  try {
    n.validate();
  } catch (const std::exception& e) {
    throw ConfigError(where, e.what());
  }
}

AlgorithmSpec parse_algorithm(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where, "expected an object");
  reject_unknown_keys(obj, where,
                      {"name", "label", "delta", "lambda", "sigma", "c1", "c2", "backend",
                       "tightened", "force_good_event", "inner_log", "noise"});
  AlgorithmSpec spec;
  if (!obj.contains("name")) throw ConfigError(join(where, "name"), "missing");
  const std::string name = get_string(obj, where, "name", "");
  try {
    spec.kind = parse_algorithm_kind(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(join(where, "name"), e.what());
  }
  spec.label = get_string(obj, where, "label", name);

  if (obj.contains("delta")) {
    const json& d = obj.at("delta");
    if (d.is_number()) {
      spec.delta = d.get<double>();
    } else if (d.is_string() && d.get<std::string>() == "1/T") {
      spec.delta_rule = DeltaRule::inverse_horizon;
    } else if (d.is_string() && d.get<std::string>() == "m/T") {
      spec.delta_rule = DeltaRule::stages_over_horizon;
    } else {
      throw ConfigError(join(where, "delta"), "expected a number, \"1/T\" or \"m/T\"");
    }
  } else if (spec.kind == AlgorithmKind::linucb || spec.kind == AlgorithmKind::qlinucb1 ||
             spec.kind == AlgorithmKind::qlinucb2) {
    spec.delta = 0.05;
  }
  spec.lambda = get_number(obj, where, "lambda", spec.lambda);
  spec.sigma = get_number(obj, where, "sigma", spec.sigma);
  spec.c1 = get_number(obj, where, "c1", spec.c1);
  spec.c2 = get_number(obj, where, "c2", spec.c2);
  const std::string backend = get_string(obj, where, "backend", "qae");
  if (backend == "qae") {
    spec.backend = Backend::qae;
  } else if (backend == "idealized") {
    spec.backend = Backend::idealized;
  } else {
    throw ConfigError(join(where, "backend"), "expected \"qae\" or \"idealized\"");
  }
  spec.tightened = get_bool(obj, where, "tightened", false);
  spec.force_good_event = get_bool(obj, where, "force_good_event", false);
  const std::string inner = get_string(obj, where, "inner_log", "lemma");
  if (inner == "lemma") {
    spec.inner_log = InnerLogForm::lemma;
  } else if (inner == "algorithm") {
    spec.inner_log = InnerLogForm::algorithm;
  } else {
    throw ConfigError(join(where, "inner_log"), "expected \"lemma\" or \"algorithm\"");
  }
  if (obj.contains("noise")) spec.noise = parse_noise(obj.at("noise"), join(where, "noise"));
  return spec;
}

void parse_instance(const json& obj, ExperimentConfig& config) {
  const std::string where = "instance";
  if (!obj.is_object()) throw ConfigError(where, "expected an object");
  if (config.problem == ProblemKind::mab) {
    reject_unknown_keys(obj, where, {"means", "gap"});
    if (obj.contains("means") && obj.contains("gap")) {
      throw ConfigError("instance.gap", "give either means or gap, not both");
    }
    if (obj.contains("means")) {
      config.means = get_number_list(obj.at("means"), "instance.means");
    } else if (obj.contains("gap")) {
      const double gap = get_number(obj, where, "gap", 0.0);
      config.means = {0.5, 0.5 - gap};
    } else {
      throw ConfigError("instance.means", "missing");
    }
    return;
  }

  reject_unknown_keys(obj, where, {"actions", "theta_star", "L", "S"});
  if (!obj.contains("actions")) throw ConfigError("instance.actions", "missing");
  const json& a = obj.at("actions");
  if (a.is_object()) {
    reject_unknown_keys(a, "instance.actions", {"generator", "count"});
    const std::string gen = get_string(a, "instance.actions", "generator", "quarter_circle");
    if (gen != "quarter_circle") {
      throw ConfigError("instance.actions.generator", "only \"quarter_circle\" is available");
    }
    const std::int64_t count = get_integer(a, "instance.actions", "count", 50);
    if (count < 2 || count > 1000000) {
      throw ConfigError("instance.actions.count", "must be between 2 and 1000000");
    }
    config.actions = generate_quarter_circle_actions(static_cast<int>(count));
  } else if (a.is_array()) {
    if (a.empty()) throw ConfigError("instance.actions", "needs at least one action");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < a.size(); ++i) {
      rows.push_back(get_number_list(a[i], "instance.actions[" + std::to_string(i) + "]"));
      if (rows.back().empty() || rows.back().size() != rows.front().size()) {
        throw ConfigError("instance.actions[" + std::to_string(i) + "]",
                          "all actions need the same non-zero dimension");
      }
    }
    config.actions.resize(static_cast<Eigen::Index>(rows.size()),
                          static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        config.actions(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
      }
    }
  } else {
    throw ConfigError("instance.actions", "expected a generator object or a list of vectors");
  }

  if (!obj.contains("theta_star")) throw ConfigError("instance.theta_star", "missing");
  const json& th = obj.at("theta_star");
  if (th.is_object()) {
    reject_unknown_keys(th, "instance.theta_star", {"angle_over_pi"});
    if (!th.contains("angle_over_pi")) {
      throw ConfigError("instance.theta_star.angle_over_pi", "missing");
    }
    config.theta_star = unit_vector_at(get_number(th, "instance.theta_star", "angle_over_pi", 0));
  } else {
    const auto v = get_number_list(th, "instance.theta_star");
    config.theta_star = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  config.L = get_number(obj, where, "L", 1.0);
  config.S = get_number(obj, where, "S", 1.0);
}

bool is_linear(AlgorithmKind k) {
  return k == AlgorithmKind::linucb || k == AlgorithmKind::qlinucb1 ||
         k == AlgorithmKind::qlinucb2;
}

}  // namespace

std::string algorithm_name(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::ucb: return "ucb";
    case AlgorithmKind::qucb1: return "qucb1";
    case AlgorithmKind::qucb2: return "qucb2";
    case AlgorithmKind::linucb: return "linucb";
    case AlgorithmKind::qlinucb1: return "qlinucb1";
    case AlgorithmKind::qlinucb2: return "qlinucb2";
  }
  return "unknown";
}

AlgorithmKind parse_algorithm_kind(const std::string& name) {
  for (auto k : {AlgorithmKind::ucb, AlgorithmKind::qucb1, AlgorithmKind::qucb2,
                 AlgorithmKind::linucb, AlgorithmKind::qlinucb1, AlgorithmKind::qlinucb2}) {
    if (algorithm_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown algorithm '" + name +
                              "' (expected ucb, qucb1, qucb2, linucb, qlinucb1 or qlinucb2)");
}

double resolve_delta(const AlgorithmSpec& spec, const ExperimentConfig& config) {
  const double T = static_cast<double>(config.horizon);
  switch (spec.delta_rule) {
    case DeltaRule::fixed: return spec.delta;
    case DeltaRule::inverse_horizon: return 1.0 / T;
    case DeltaRule::stages_over_horizon: {
      const auto m = stage_bound(config.actions.cols(), config.L, config.horizon, spec.lambda);
      return static_cast<double>(m) / T;
    }
  }
  return spec.delta;
}

void ExperimentConfig::validate() const {
  if (horizon < 1) throw ConfigError("horizon", "must be at least 1");
  if (repetitions < 1) throw ConfigError("repetitions", "must be at least 1");
  if (stride < 1) throw ConfigError("stride", "must be at least 1");
  if (noise) check_noise(*noise, "noise");

  if (problem == ProblemKind::mab) {
    if (means.size() < 2) throw ConfigError("instance.means", "needs at least two arms");
    for (std::size_t i = 0; i < means.size(); ++i) {
      if (!(means[i] >= 0.0 && means[i] <= 1.0)) {
        throw ConfigError("instance.means[" + std::to_string(i) + "]",
                          "Bernoulli mean must lie in [0, 1]");
      }
    }
  } else {
    if (actions.rows() < 1 || actions.cols() < 1) {
      throw ConfigError("instance.actions", "needs at least one action");
    }
    if (theta_star.size() != actions.cols()) {
      throw ConfigError("instance.theta_star", "dimension does not match the actions");
    }
    if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("instance.L", "must be positive");
    if (!(S > 0.0) || !std::isfinite(S)) throw ConfigError("instance.S", "must be positive");
    if (theta_star.norm() > S * (1.0 + 1e-12)) {
      throw ConfigError("instance.theta_star", "norm exceeds S");
    }
    for (Eigen::Index i = 0; i < actions.rows(); ++i) {
      const std::string field = "instance.actions[" + std::to_string(i) + "]";
      if (!actions.row(i).allFinite()) throw ConfigError(field, "must be finite");
      if (actions.row(i).norm() > L * (1.0 + 1e-12)) throw ConfigError(field, "norm exceeds L");
      const double m = actions.row(i).dot(theta_star);
      if (m < -1e-12 || m > 1.0 + 1e-12) {
        throw ConfigError(field, "mean x . theta_star must lie in [0, 1] for Bernoulli rewards");
      }
    }
  }

  if (algorithms.empty()) throw ConfigError("algorithms", "needs at least one algorithm");
  std::set<std::string> labels;
  for (std::size_t i = 0; i < algorithms.size(); ++i) {
    const auto& a = algorithms[i];
    const std::string where = "algorithms[" + std::to_string(i) + "]";
    if (a.label.empty()) throw ConfigError(where + ".label", "must not be empty");
    if (a.label.find_first_of(",\n\r\"") != std::string::npos) {
      throw ConfigError(where + ".label", "must not contain commas, quotes or newlines");
    }
    if (!labels.insert(a.label).second) throw ConfigError(where + ".label", "duplicate label");
    if (is_linear(a.kind) != (problem == ProblemKind::slb)) {
      throw ConfigError(where + ".name", algorithm_name(a.kind) + " does not fit problem " +
                                             (problem == ProblemKind::mab ? "mab" : "slb"));
    }
    const double delta = resolve_delta(a, *this);
    if (!(delta > 0.0 && delta < 1.0)) {
      throw ConfigError(where + ".delta", "must lie in (0, 1) (resolved to " +
                                              std::to_string(delta) + ")");
    }
    if (!(a.c1 >= 1.0) || !std::isfinite(a.c1)) throw ConfigError(where + ".c1", "must be >= 1");
    if (!(a.c2 >= 1.0) || !std::isfinite(a.c2)) throw ConfigError(where + ".c2", "must be >= 1");
    if (!(a.sigma > 0.0) || !std::isfinite(a.sigma)) {
      throw ConfigError(where + ".sigma", "must be positive");
    }
    if (!(a.lambda > 0.0) || !std::isfinite(a.lambda)) {
      throw ConfigError(where + ".lambda", "must be positive");
    }
    if (a.kind == AlgorithmKind::qlinucb2 && !(a.lambda > 1.0 / (4.0 * a.sigma * L))) {
      throw ConfigError(where + ".lambda",
                        "the bounded-variance linear algorithm needs lambda > 1 / (4 sigma L)");
    }
    if (a.noise) check_noise(*a.noise, where + ".noise");
    const bool uses_qae = (a.kind == AlgorithmKind::qucb1 || a.kind == AlgorithmKind::qlinucb1) &&
                          a.backend == Backend::qae;
    if (a.noise && !a.noise->noiseless() && !uses_qae) {
      throw ConfigError(where + ".noise", "noise applies only to the QAE backend");
    }
  }
}

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("<file>", "top level must be an object");
  reject_unknown_keys(root, "", {"problem", "instance", "horizon", "algorithms", "repetitions",
                                 "seed", "stride", "workers", "noise", "output"});

  ExperimentConfig config;
  const std::string problem = get_string(root, "", "problem", "");
  if (problem == "mab") {
    config.problem = ProblemKind::mab;
  } else if (problem == "slb") {
    config.problem = ProblemKind::slb;
  } else {
    throw ConfigError("problem", "expected \"mab\" or \"slb\"");
  }
  if (!root.contains("instance")) throw ConfigError("instance", "missing");
  parse_instance(root.at("instance"), config);

  if (!root.contains("horizon")) throw ConfigError("horizon", "missing");
  config.horizon = get_integer(root, "", "horizon", 0);
  const std::int64_t reps = get_integer(root, "", "repetitions", 100);
  if (reps < 1 || reps > 1000000) throw ConfigError("repetitions", "must be in [1, 1000000]");
  config.repetitions = static_cast<int>(reps);
  const std::int64_t seed = get_integer(root, "", "seed", 0);
  if (seed < 0) throw ConfigError("seed", "must be non-negative");
  config.seed = static_cast<std::uint64_t>(seed);
  config.stride = get_integer(root, "", "stride", 1000);
  const std::int64_t workers = get_integer(root, "", "workers", 0);
  if (workers < 0 || workers > 4096) throw ConfigError("workers", "must be in [0, 4096]");
  config.workers = static_cast<unsigned>(workers);
  if (root.contains("noise")) config.noise = parse_noise(root.at("noise"), "noise");

  if (!root.contains("algorithms")) throw ConfigError("algorithms", "missing");
  const json& algos = root.at("algorithms");
  if (!algos.is_array()) throw ConfigError("algorithms", "expected an array");
  for (std::size_t i = 0; i < algos.size(); ++i) {
    config.algorithms.push_back(parse_algorithm(algos[i], "algorithms[" + std::to_string(i) + "]"));
  }

  if (root.contains("output")) {
    const json& out = root.at("output");
    if (!out.is_object()) throw ConfigError("output", "expected an object");
    reject_unknown_keys(out, "output", {"csv", "plot", "log_t"});
    config.csv_path = get_string(out, "output", "csv", "");
    config.plot_path = get_string(out, "output", "plot", "");
    config.plot_log_t = get_bool(out, "output", "log_t", false);
  }

  config.validate();
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

json noise_json(const NoiseModel& n) {
  return json{{"err1", n.err1}, {"err2", n.err2}, {"g1", n.g1_per_query}, {"g2", n.g2_per_query}};
}

}  // namespace

std::string config_digest(const ExperimentConfig& config) {
  // Output paths and worker count do not affect results and are left out.
  json j;
  j["problem"] = config.problem == ProblemKind::mab ? "mab" : "slb";
  j["means"] = config.means;
  std::vector<double> flat(config.actions.data(), config.actions.data() + config.actions.size());
  j["actions"] = flat;
  j["action_rows"] = config.actions.rows();
  j["theta_star"] = std::vector<double>(config.theta_star.data(),
                                        config.theta_star.data() + config.theta_star.size());
  j["L"] = config.L;
  j["S"] = config.S;
  j["horizon"] = config.horizon;
  j["repetitions"] = config.repetitions;
  j["seed"] = config.seed;
  j["stride"] = config.stride;
  if (config.noise) j["noise"] = noise_json(*config.noise);
  for (const auto& a : config.algorithms) {
    json e{{"kind", algorithm_name(a.kind)},
           {"label", a.label},
           {"delta_rule", static_cast<int>(a.delta_rule)},
           {"delta", a.delta},
           {"lambda", a.lambda},
           {"sigma", a.sigma},
           {"c1", a.c1},
           {"c2", a.c2},
           {"backend", static_cast<int>(a.backend)},
           {"tightened", a.tightened},
           {"force", a.force_good_event},
           {"inner_log", static_cast<int>(a.inner_log)}};
    if (a.noise) e["noise"] = noise_json(*a.noise);
    j["algorithms"].push_back(e);
  }
  const std::string text = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

}  // namespace qbandit
