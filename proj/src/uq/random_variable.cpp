#include "uq/random_variable.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/lognormal.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace flume::uq {

std::string_view to_string(Distribution d) noexcept {
  switch (d) {
    case Distribution::Constant: return "constant";
    case Distribution::Normal: return "normal";
    case Distribution::Lognormal: return "lognormal";
    case Distribution::Uniform: return "uniform";
    case Distribution::Beta: return "beta";
  }
  return "unknown";
}

Distribution distribution_from_string(std::string_view s) {
  std::string l(s);
  for (auto& c : l) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (l == "constant") return Distribution::Constant;
  if (l == "normal") return Distribution::Normal;
  if (l == "lognormal") return Distribution::Lognormal;
  if (l == "uniform") return Distribution::Uniform;
  if (l == "beta") return Distribution::Beta;
  fail(ErrorCode::InvalidSpec, "unknown distribution '" + std::string(s) + "'");
}

RandomVariableSpec RandomVariableSpec::constant(std::string name, double value) {
  RandomVariableSpec s;
  s.name = std::move(name);
  s.distribution = Distribution::Constant;
  s.value = value;
  return s;
}

RandomVariableSpec RandomVariableSpec::normal(std::string name, double mean, double sd) {
  RandomVariableSpec s;
  s.name = std::move(name);
  s.distribution = Distribution::Normal;
  s.mean = mean;
  s.sd = sd;
  return s;
}

RandomVariableSpec RandomVariableSpec::lognormal(std::string name, double mean, double sd) {
  RandomVariableSpec s = normal(std::move(name), mean, sd);
  s.distribution = Distribution::Lognormal;
  return s;
}

RandomVariableSpec RandomVariableSpec::uniform(std::string name, double min, double max) {
  RandomVariableSpec s;
  s.name = std::move(name);
  s.distribution = Distribution::Uniform;
  s.min = min;
  s.max = max;
  return s;
}

RandomVariableSpec RandomVariableSpec::beta_dist(std::string name, double alpha, double beta, double min,
                                                 double max) {
  RandomVariableSpec s = uniform(std::move(name), min, max);
  s.distribution = Distribution::Beta;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

void RandomVariableSpec::validate() const {
  auto bad = [&](const std::string& why) { fail(ErrorCode::InvalidSpec, "variable '" + name + "': " + why); };
  if (name.empty()) fail(ErrorCode::InvalidSpec, "variable without a name");
  switch (distribution) {
    case Distribution::Constant:
      if (!std::isfinite(value)) bad("value must be finite");
      break;
    case Distribution::Normal:
      if (!std::isfinite(mean) || !(sd > 0.0) || !std::isfinite(sd)) bad("normal needs finite mean and sd > 0");
      break;
    case Distribution::Lognormal:
      if (!(mean > 0.0) || !(sd > 0.0) || !std::isfinite(mean) || !std::isfinite(sd)) {
        bad("lognormal needs mean > 0 and sd > 0");
      }
      break;
    case Distribution::Uniform:
      if (!std::isfinite(min) || !std::isfinite(max) || !(max > min)) bad("uniform needs max > min");
      break;
    case Distribution::Beta:
      if (!std::isfinite(min) || !std::isfinite(max) || !(max > min)) bad("beta needs max > min");
      if (!(alpha > 0.0) || !(beta > 0.0)) bad("beta needs alpha > 0 and beta > 0");
      break;
  }
  if (floor && !std::isfinite(*floor)) bad("floor must be finite");
}

namespace {

boost::math::lognormal_distribution<> lognormal_of(const RandomVariableSpec& s) {
  const double sigma2 = std::log1p((s.sd * s.sd) / (s.mean * s.mean));
  return boost::math::lognormal_distribution<>(std::log(s.mean) - 0.5 * sigma2, std::sqrt(sigma2));
}

}  // namespace

double inverse_cdf(const RandomVariableSpec& spec, double u) {
  if (!(u > 0.0 && u < 1.0)) fail(ErrorCode::Domain, "probability " + std::to_string(u) + " outside (0, 1)");
  spec.validate();
  switch (spec.distribution) {
    case Distribution::Constant:
      return spec.value;
    case Distribution::Normal:
      return boost::math::quantile(boost::math::normal_distribution<>(spec.mean, spec.sd), u);
    case Distribution::Lognormal:
      return boost::math::quantile(lognormal_of(spec), u);
    case Distribution::Uniform:
      return spec.min + u * (spec.max - spec.min);
    case Distribution::Beta:
      return spec.min +
             (spec.max - spec.min) * boost::math::quantile(boost::math::beta_distribution<>(spec.alpha, spec.beta), u);
  }
  fail(ErrorCode::Internal, "unhandled distribution");
}

double cdf(const RandomVariableSpec& spec, double x) {
  spec.validate();
  switch (spec.distribution) {
    case Distribution::Constant:
      return x < spec.value ? 0.0 : 1.0;
    case Distribution::Normal:
      return boost::math::cdf(boost::math::normal_distribution<>(spec.mean, spec.sd), x);
    case Distribution::Lognormal:
      return x <= 0.0 ? 0.0 : boost::math::cdf(lognormal_of(spec), x);
    case Distribution::Uniform:
      return std::clamp((x - spec.min) / (spec.max - spec.min), 0.0, 1.0);
    case Distribution::Beta: {
      const double y = (x - spec.min) / (spec.max - spec.min);
      if (y <= 0.0) return 0.0;
      if (y >= 1.0) return 1.0;
      return boost::math::cdf(boost::math::beta_distribution<>(spec.alpha, spec.beta), y);
    }
  }
  fail(ErrorCode::Internal, "unhandled distribution");
}

double interval_width(const RandomVariableSpec& spec, std::size_t q) {
  if (q == 0) fail(ErrorCode::InvalidArgument, "q must be positive");
  if (!spec.bounded()) fail(ErrorCode::InvalidSpec, "interval width needs a bounded distribution");
  return (spec.max - spec.min) / static_cast<double>(q);
}

std::vector<RandomVariableSpec> default_structural_specs() {
  std::vector<RandomVariableSpec> v = {
      RandomVariableSpec::normal("yield_strength", 413.685e6, 82e6),
      RandomVariableSpec::normal("col_weight_per_len", 173.4, 34.0),
      RandomVariableSpec::normal("beam_weight_per_len", 133.554, 26.0),
      RandomVariableSpec::normal("girder_weight_per_len", 133.554, 26.0),
      RandomVariableSpec::normal("youngs_modulus", 200e9, 40e9),
  };
  for (auto& s : v) s.floor = 0.0;
  return v;
}

std::vector<RandomVariableSpec> load_factor_study_specs() {
  return {
      RandomVariableSpec::constant("load_factor", 1.0),
      RandomVariableSpec::lognormal("load_factor", 1.0, 0.2),
      RandomVariableSpec::normal("load_factor", 1.0, 0.2),
      RandomVariableSpec::uniform("load_factor", 0.4, 1.6),
      RandomVariableSpec::beta_dist("load_factor", 5.0, 2.0, 0.4, 1.6),
  };
}

namespace {

std::vector<RandomVariableSpec> from_ptree(const boost::property_tree::ptree& tree) {
  static const std::set<std::string> known = {"distribution", "value", "mean", "sd", "min",
                                              "max",          "alpha", "beta", "floor"};
  std::vector<RandomVariableSpec> out;
  std::set<std::string> seen;
  for (const auto& [section, body] : tree) {
    if (body.empty()) fail(ErrorCode::InvalidSpec, "entry '" + section + "' is not a section");
    if (!seen.insert(section).second) fail(ErrorCode::InvalidSpec, "duplicate variable '" + section + "'");
    RandomVariableSpec s;
    s.name = section;
    for (const auto& [key, node] : body) {
      if (!known.count(key)) fail(ErrorCode::InvalidSpec, "unknown key '" + key + "' in [" + section + "]");
      const std::string text = node.get_value<std::string>();
      if (key == "distribution") {
        s.distribution = distribution_from_string(text);
        continue;
      }
      double v = 0.0;
      try {
        v = csv::parse_double(text);
      } catch (const Error&) {
        fail(ErrorCode::InvalidSpec, "[" + section + "] " + key + ": not a number '" + text + "'");
      }
      if (key == "value") s.value = v;
      else if (key == "mean") s.mean = v;
      else if (key == "sd") s.sd = v;
      else if (key == "min") s.min = v;
      else if (key == "max") s.max = v;
      else if (key == "alpha") s.alpha = v;
      else if (key == "beta") s.beta = v;
      else s.floor = v;
    }
    if (!body.get_child_optional("distribution")) {
      fail(ErrorCode::InvalidSpec, "[" + section + "] has no distribution");
    }
    s.validate();
    out.push_back(std::move(s));
  }
  if (out.empty()) fail(ErrorCode::InvalidSpec, "spec file defines no variables");
  return out;
}

}  // namespace

std::vector<RandomVariableSpec> parse_spec_text(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream is(text);
  try {
    boost::property_tree::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    fail(ErrorCode::InvalidSpec, e.what());
  }
  return from_ptree(tree);
}

std::vector<RandomVariableSpec> read_spec_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::MissingInput, "cannot open spec file " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  try {
    return parse_spec_text(ss.str());
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

void write_spec_file(const std::filesystem::path& path, const std::vector<RandomVariableSpec>& specs) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::Io, "cannot write " + path.string());
  for (const auto& s : specs) {
    os << '[' << s.name << "]\ndistribution = " << to_string(s.distribution) << '\n';
    switch (s.distribution) {
      case Distribution::Constant:
        os << "value = " << csv::num(s.value) << '\n';
        break;
      case Distribution::Normal:
      case Distribution::Lognormal:
        os << "mean = " << csv::num(s.mean) << "\nsd = " << csv::num(s.sd) << '\n';
        break;
      case Distribution::Beta:
        os << "alpha = " << csv::num(s.alpha) << "\nbeta = " << csv::num(s.beta) << '\n';
        [[fallthrough]];
      case Distribution::Uniform:
        os << "min = " << csv::num(s.min) << "\nmax = " << csv::num(s.max) << '\n';
        break;
    }
    if (s.floor) os << "floor = " << csv::num(*s.floor) << '\n';
    os << '\n';
  }
}

}  // namespace flume::uq
