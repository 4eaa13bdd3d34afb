#include "fracsub/config.hpp"

#include <fstream>
#include <sstream>

namespace fracsub {

Check parse_check(const std::string& name) {
  if (name == "operator_xval") return Check::operator_xval;
  if (name == "inversion") return Check::inversion;
  if (name == "exhaustion") return Check::exhaustion;
  if (name == "energy_identity") return Check::energy_identity;
  if (name == "decay") return Check::decay;
  if (name == "extension_trace") return Check::extension_trace;
  if (name == "pme_uniqueness") return Check::pme_uniqueness;
  if (name == "perturbation") return Check::perturbation;
  fail(ErrorClass::config, "unknown check '" + name + "'");
}

std::string to_string(Check c) {
  switch (c) {
    case Check::operator_xval: return "operator_xval";
    case Check::inversion: return "inversion";
    case Check::exhaustion: return "exhaustion";
    case Check::energy_identity: return "energy_identity";
    case Check::decay: return "decay";
    case Check::extension_trace: return "extension_trace";
    case Check::pme_uniqueness: return "pme_uniqueness";
    case Check::perturbation: return "perturbation";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (...) {
    fail(ErrorClass::config, "bad numeric value for " + key + ": '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x) fail(ErrorClass::config, key + " must be an integer");
  return i;
}

}  // namespace

Scenario parse_config_text(const std::string& text) {
  Scenario sc;
  bool have_checks = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorClass::config, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (key == "name") sc.name = val;
    else if (key == "N") sc.spec.N = to_int(key, val);
    else if (key == "sigma") sc.spec.sigma = to_double(key, val);
    else if (key == "alpha") sc.spec.alpha = to_double(key, val);
    else if (key == "beta") sc.spec.beta = to_double(key, val);
    else if (key == "rho_family") sc.spec.rho_family = parse_rho_family(val);
    else if (key == "rho_table") sc.spec.rho_table = val;
    else if (key == "L") sc.spec.L = to_double(key, val);
    else if (key == "M") sc.spec.M = to_int(key, val);
    else if (key == "tol_fixed_point") sc.spec.tol_fixed_point = to_double(key, val);
    else if (key == "max_iter") sc.spec.max_iter = to_int(key, val);
    else if (key == "delta_over_h") sc.spec.delta_over_h = to_double(key, val);
    else if (key == "tail_radius") sc.spec.tail_radius = to_double(key, val);
    else if (key == "y_min_over_h") sc.spec.y_min_over_h = to_double(key, val);
    else if (key == "y_grade") sc.spec.y_grade = to_double(key, val);
    else if (key == "y_height_over_L") sc.spec.y_height_over_L = to_double(key, val);
    else if (key == "rho_floor") sc.spec.rho_floor = to_double(key, val);
    else if (key == "pme_t_end") sc.spec.pme_t_end = to_double(key, val);
    else if (key == "finiteness_growth_ceiling") sc.spec.finiteness_growth_ceiling = to_double(key, val);
    else if (key == "finiteness_majorant_factor") sc.spec.finiteness_majorant_factor = to_double(key, val);
    else if (key == "checks") {
      have_checks = true;
      std::stringstream ss(val);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) sc.checks.push_back(parse_check(item));
      }
    } else {
      fail(ErrorClass::config, "unknown configuration key '" + key + "'");
    }
  }
  if (!have_checks || sc.checks.empty())
    fail(ErrorClass::config, "configuration must enable at least one check");
  sc.spec.validate();
  return sc;
}

Scenario parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorClass::config, "cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace fracsub
