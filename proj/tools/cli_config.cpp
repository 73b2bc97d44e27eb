#include "cli_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <stdexcept>

namespace ose::cli {

Settings read_config_file(const std::string& path)
{
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::runtime_error("cannot read config '" + path + "': " + e.message());
  }
  Settings out;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      // top-level key outside any section
      out[section] = body.data();
      continue;
    }
    for (const auto& [key, value] : body) {
      out[section + "." + key] = value.data();
    }
  }
  return out;
}

void merge(Settings& base, const Settings& overrides)
{
  for (const auto& [k, v] : overrides) {
    base[k] = v;
  }
}

std::vector<std::string> split_list(const std::string& s)
{
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : s) {
    if (ch == ',' || ch == ' ') {
      if (!cur.empty()) {
        out.push_back(cur);
      }
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) {
    out.push_back(cur);
  }
  return out;
}

namespace {

const std::string* find(const Settings& s, const std::string& key)
{
  const auto it = s.find(key);
  return it == s.end() ? nullptr : &it->second;
}

template <typename T>
T number(const Settings& s, const std::string& key, T fallback)
{
  const auto* v = find(s, key);
  if (!v) {
    return fallback;
  }
  try {
    std::size_t pos = 0;
    T out{};
    if constexpr (std::is_floating_point_v<T>) {
      out = static_cast<T>(std::stod(*v, &pos));
    } else if constexpr (std::is_unsigned_v<T>) {
      out = static_cast<T>(std::stoull(*v, &pos));
    } else {
      out = static_cast<T>(std::stoll(*v, &pos));
    }
    if (pos != v->size()) {
      throw std::invalid_argument("trailing characters");
    }
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid value for " + key + ": '" + *v + "'");
  }
}

} // namespace

ExperimentConfig experiment_from(const Settings& s)
{
  const auto* model = find(s, "experiment.model");
  const Model m = parse_model(model ? *model : "density");
  const auto* target = find(s, "experiment.target");
  if (!target || target->empty()) {
    throw std::invalid_argument("missing target name (--target)");
  }
  const auto* dep = find(s, "experiment.case");
  ExperimentConfig cfg =
    default_config(m, *target, parse_case(dep ? *dep : "1"),
                   number<Index>(s, "experiment.n", 1000));
  cfg.reps = number<Index>(s, "experiment.reps", cfg.reps);
  cfg.seed = number<std::uint64_t>(s, "experiment.seed", cfg.seed);
  cfg.workers = number<unsigned>(s, "experiment.workers", cfg.workers);
  cfg.max_dim = number<Index>(s, "experiment.max_dim", cfg.max_dim);
  cfg.grid_nodes = number<Index>(s, "experiment.grid", cfg.grid_nodes);
  cfg.noise_sigma = number<double>(s, "experiment.sigma", cfg.noise_sigma);
  if (const auto* sel = find(s, "experiment.selectors")) {
    cfg.selectors.clear();
    for (const auto& name : split_list(*sel)) {
      cfg.selectors.push_back(parse_selector(name));
    }
  }
  cfg.gl_penalty.constant = number<double>(s, "penalty.c_gl", cfg.gl_penalty.constant);
  cfg.ms_constant = number<double>(s, "penalty.c_ms", cfg.ms_constant);
  if (const auto* scheme = find(s, "penalty.scheme")) {
    if (*scheme == "theorem") {
      const bool dep_case = cfg.dependence != DependenceCase::Iid;
      const PenaltyScheme ps =
        m == Model::Density
          ? (dep_case ? PenaltyScheme::DensityDep : PenaltyScheme::DensityIid)
          : (dep_case ? PenaltyScheme::RegressionDep : PenaltyScheme::RegressionIid);
      cfg.gl_penalty = PenaltyConfig::theorem(ps);
    } else if (*scheme != "calibrated") {
      throw std::invalid_argument("penalty.scheme must be 'calibrated' or 'theorem'");
    }
  }
  cfg.validate();
  return cfg;
}

std::vector<double> c_grid_from(const Settings& s)
{
  const auto* v = find(s, "calibration.c_grid");
  if (!v) {
    return default_c_grid();
  }
  std::vector<double> out;
  for (const auto& item : split_list(*v)) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid calibration grid value '" + item + "'");
    }
  }
  if (out.empty()) {
    throw std::invalid_argument("empty calibration grid");
  }
  return out;
}

Index calibration_reps_from(const Settings& s)
{
  const Index r = number<Index>(s, "calibration.reps", 200);
  if (r < 1) {
    throw std::invalid_argument("calibration.reps must be >= 1");
  }
  return r;
}

CheckOptions check_options_from(const Settings& s)
{
  CheckOptions opt;
  opt.seed = number<std::uint64_t>(s, "check.seed", opt.seed);
  opt.workers = number<unsigned>(s, "experiment.workers", opt.workers);
  opt.audit_pen_constant =
    number<double>(s, "check.audit_pen_constant", opt.audit_pen_constant);
  if (const auto* q = find(s, "check.quick"); q && (*q == "1" || *q == "true")) {
    opt.ks_draws = 20000;
    opt.ks_threshold = 0.0115;
    opt.case3_marginal_draws = 200000;
    opt.case3_marginal_threshold = 0.01;
    opt.variance_reps = 500;
    opt.audit_reps = 100;
    opt.audit_fuzz_cases = 1000;
    opt.oracle_rate_reps = 50;
  }
  return opt;
}

std::string output_dir_from(const Settings& s)
{
  const auto* v = find(s, "output.dir");
  return v ? *v : std::string(".");
}

} // namespace ose::cli
