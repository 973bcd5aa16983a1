#include "structural/frame.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "core/error.hpp"

namespace flume::structural {

void ShearFrameModel::validate() const {
  const std::size_t n = story_masses.size();
  if (n == 0) fail(ErrorCode::InvalidParams, "frame has no stories");
  if (story_stiffness.size() != n || story_yield_shear.size() != n) {
    fail(ErrorCode::InvalidParams, "story arrays differ in length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(story_masses[i] > 0.0) || !(story_stiffness[i] > 0.0) || !(story_yield_shear[i] > 0.0)) {
      fail(ErrorCode::InvalidParams, "story " + std::to_string(i + 1) + " has a non-positive property");
    }
  }
  if (!(post_yield_ratio >= 0.0 && post_yield_ratio < 1.0)) {
    fail(ErrorCode::InvalidParams, "post-yield ratio outside [0, 1)");
  }
  if (!(damping_ratio >= 0.0 && damping_ratio <= 0.2)) fail(ErrorCode::InvalidParams, "damping ratio outside [0, 0.2]");
  if (!(story_height > 0.0)) fail(ErrorCode::InvalidParams, "story height must be positive");
}

ShearFrameModel build_frame(const StructuralParams& p, const FrameGeometry& geom) {
  const double vals[] = {p.yield_strength, p.col_weight_per_len, p.beam_weight_per_len, p.girder_weight_per_len,
                         p.youngs_modulus};
  const char* names[] = {"yield_strength", "col_weight_per_len", "beam_weight_per_len", "girder_weight_per_len",
                         "youngs_modulus"};
  for (int i = 0; i < 5; ++i) {
    if (!(vals[i] > 0.0) || !std::isfinite(vals[i])) {
      fail(ErrorCode::InvalidParams, std::string(names[i]) + " must be positive");
    }
  }
  if (geom.n_stories < 1 || geom.n_columns < 1 || !(geom.story_height > 0.0) || !(geom.c_i > 0.0) ||
      !(geom.z_cfg > 0.0) || !(geom.reference_weight > 0.0) || !(geom.g > 0.0) || geom.dead_load_mass < 0.0) {
    fail(ErrorCode::InvalidParams, "invalid frame geometry");
  }
  const double hs = geom.story_height;
  const double weight = geom.n_columns * hs * p.col_weight_per_len +
                        geom.beams_per_story * geom.bay_x * p.beam_weight_per_len +
                        geom.girders_per_story * geom.bay_y * p.girder_weight_per_len;
  const double mass = weight / geom.g + geom.dead_load_mass;
  const double ic = geom.c_i * p.col_weight_per_len * p.col_weight_per_len;
  const double k = geom.n_columns * 12.0 * p.youngs_modulus * ic / (hs * hs * hs);
  const double vy = p.yield_strength * geom.z_cfg * (p.col_weight_per_len / geom.reference_weight);

  ShearFrameModel m;
  const auto n = static_cast<std::size_t>(geom.n_stories);
  m.story_masses.assign(n, mass);
  m.story_stiffness.assign(n, k);
  m.story_yield_shear.assign(n, vy);
  m.post_yield_ratio = geom.post_yield_ratio;
  m.damping_ratio = geom.damping_ratio;
  m.story_height = hs;
  m.validate();
  return m;
}

namespace {

Eigen::MatrixXd mass_matrix(const ShearFrameModel& m) {
  const int n = m.n_stories();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) M(i, i) = m.story_masses[static_cast<std::size_t>(i)];
  return M;
}

/// Assemble story stiffnesses k_s (spring between floor s-1 and floor s).
Eigen::MatrixXd assemble(const std::vector<double>& ks) {
  const int n = static_cast<int>(ks.size());
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    const double k = ks[static_cast<std::size_t>(s)];
    K(s, s) += k;
    if (s > 0) {
      K(s - 1, s - 1) += k;
      K(s - 1, s) -= k;
      K(s, s - 1) -= k;
    }
  }
  return K;
}

/// Bilinear kinematic hardening spring as a linear branch alpha k in parallel
/// with an elastic-perfectly-plastic branch (1 - alpha) k capped at
/// (1 - alpha) V_y.
struct Spring {
  double k = 0.0;
  double alpha = 0.0;
  double vy = 0.0;
  double plastic_force = 0.0;  // committed EPP branch force
  double drift = 0.0;          // committed drift

  struct Trial {
    double force;
    double tangent;
    double plastic_force;
    bool yielding;
  };

  Trial trial(double new_drift) const {
    const double ke = (1.0 - alpha) * k;
    const double cap = (1.0 - alpha) * vy;
    double fp = plastic_force + ke * (new_drift - drift);
    bool yielding = false;
    if (fp > cap) {
      fp = cap;
      yielding = true;
    } else if (fp < -cap) {
      fp = -cap;
      yielding = true;
    }
    return {alpha * k * new_drift + fp, alpha * k + (yielding ? 0.0 : ke), fp, yielding};
  }

  double recoverable(double d, double fp) const {
    const double ke = (1.0 - alpha) * k;
    return 0.5 * alpha * k * d * d + (ke > 0.0 ? 0.5 * fp * fp / ke : 0.0);
  }
};

}  // namespace

std::vector<double> natural_frequencies(const ShearFrameModel& model) {
  model.validate();
  const Eigen::MatrixXd M = mass_matrix(model);
  const Eigen::MatrixXd K = assemble(model.story_stiffness);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
  if (es.info() != Eigen::Success) fail(ErrorCode::NonConvergence, "modal analysis failed");
  std::vector<double> w;
  for (int i = 0; i < es.eigenvalues().size(); ++i) w.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
  return w;
}

double fundamental_period(const ShearFrameModel& model) {
  return 2.0 * std::numbers::pi / natural_frequencies(model).front();
}

double rms(const std::vector<double>& a) {
  if (a.empty()) fail(ErrorCode::EmptyHistory, "empty history");
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s / static_cast<double>(a.size()));
}

EdpResult extract_edp(const std::vector<std::vector<double>>& displacement,
                      const std::vector<std::vector<double>>& acceleration) {
  if (displacement.empty() || acceleration.empty()) fail(ErrorCode::EmptyHistory, "empty response history");
  const std::size_t n = displacement.front().size();
  if (n == 0) fail(ErrorCode::EmptyHistory, "response history has no stories");
  if (displacement.size() != acceleration.size()) fail(ErrorCode::LengthMismatch, "history lengths differ");
  EdpResult r;
  r.peak_displacement.assign(n, 0.0);
  r.rmsa.assign(n, 0.0);
  for (std::size_t k = 0; k < displacement.size(); ++k) {
    if (displacement[k].size() != n || acceleration[k].size() != n) {
      fail(ErrorCode::LengthMismatch, "story count differs between samples");
    }
    for (std::size_t s = 0; s < n; ++s) {
      r.peak_displacement[s] = std::max(r.peak_displacement[s], std::abs(displacement[k][s]));
      r.rmsa[s] += acceleration[k][s] * acceleration[k][s];
    }
  }
  for (auto& v : r.rmsa) v = std::sqrt(v / static_cast<double>(displacement.size()));
  r.rmsa_envelope = *std::max_element(r.rmsa.begin(), r.rmsa.end());
  r.peak_displacement_envelope = *std::max_element(r.peak_displacement.begin(), r.peak_displacement.end());
  r.displacement_history = displacement;
  r.acceleration_history = acceleration;
  return r;
}

EdpResult newmark_response(const ShearFrameModel& model, const std::vector<std::vector<double>>& load, double dt,
                           const ResponseOptions& opts) {
  model.validate();
  const int n = model.n_stories();
  const auto un = static_cast<std::size_t>(n);
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "dt must be positive");
  if (load.size() != un) fail(ErrorCode::LengthMismatch, "one load history per story required");
  const std::size_t steps = load.front().size();
  for (const auto& l : load) {
    if (l.size() != steps) fail(ErrorCode::LengthMismatch, "load histories differ in length");
  }
  if (steps == 0) fail(ErrorCode::EmptyHistory, "empty load history");

  const std::vector<double> omega = natural_frequencies(model);
  const double t1 = 2.0 * std::numbers::pi / omega.front();
  if (!opts.allow_coarse_dt && dt > t1 / 20.0) {
    fail(ErrorCode::TimestepTooCoarse,
         "dt " + std::to_string(dt) + " exceeds T1/20 = " + std::to_string(t1 / 20.0));
  }

  const Eigen::MatrixXd M = mass_matrix(model);
  const Eigen::MatrixXd K0 = assemble(model.story_stiffness);
  const double w1 = omega.front();
  const double w2 = omega.size() > 1 ? omega[1] : omega.front();
  const double zeta = model.damping_ratio;
  const double a0 = 2.0 * zeta * w1 * w2 / (w1 + w2);
  const double a1 = 2.0 * zeta / (w1 + w2);
  const Eigen::MatrixXd C = a0 * M + a1 * K0;

  std::vector<Spring> springs(un);
  for (std::size_t s = 0; s < un; ++s) {
    springs[s].k = model.story_stiffness[s];
    springs[s].alpha = model.post_yield_ratio;
    springs[s].vy = model.story_yield_shear[s];
  }

  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  if (!opts.initial_displacement.empty()) {
    if (opts.initial_displacement.size() != un) fail(ErrorCode::LengthMismatch, "initial displacement size");
    for (int i = 0; i < n; ++i) u(i) = opts.initial_displacement[static_cast<std::size_t>(i)];
  }
  if (!opts.initial_velocity.empty()) {
    if (opts.initial_velocity.size() != un) fail(ErrorCode::LengthMismatch, "initial velocity size");
    for (int i = 0; i < n; ++i) v(i) = opts.initial_velocity[static_cast<std::size_t>(i)];
  }

  auto drift_of = [&](const Eigen::VectorXd& x, int s) { return s == 0 ? x(0) : x(s) - x(s - 1); };
  auto restoring = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* kt,
                       std::vector<Spring::Trial>* trials) {
    r.setZero(n);
    std::vector<double> kts(un);
    for (int s = 0; s < n; ++s) {
      const auto tr = springs[static_cast<std::size_t>(s)].trial(drift_of(x, s));
      kts[static_cast<std::size_t>(s)] = tr.tangent;
      r(s) += tr.force;
      if (s > 0) r(s - 1) -= tr.force;
      if (trials) (*trials)[static_cast<std::size_t>(s)] = tr;
    }
    if (kt) *kt = assemble(kts);
  };

  // Initial state: the springs start from zero force, so a non-zero initial
  // displacement is loaded elastically before time integration.
  for (int s = 0; s < n; ++s) {
    auto& sp = springs[static_cast<std::size_t>(s)];
    const auto tr = sp.trial(drift_of(u, s));
    sp.drift = drift_of(u, s);
    sp.plastic_force = tr.plastic_force;
  }
  Eigen::VectorXd p(n);
  for (int s = 0; s < n; ++s) p(s) = load[static_cast<std::size_t>(s)][0];
  Eigen::VectorXd r(n);
  restoring(u, r, nullptr, nullptr);
  Eigen::VectorXd a = M.ldlt().solve(p - C * v - r);

  std::vector<std::vector<double>> disp(steps, std::vector<double>(un));
  std::vector<std::vector<double>> acc(steps, std::vector<double>(un));
  for (std::size_t s = 0; s < un; ++s) {
    disp[0][s] = u(static_cast<int>(s));
    acc[0][s] = a(static_cast<int>(s));
  }

  EnergyTrace* energy = opts.energy;
  double e_in = 0.0;
  double e_damp = 0.0;
  double e_hyst = 0.0;
  auto record_energy = [&](const std::vector<Spring::Trial>* trials) {
    if (!energy) return;
    double rec = 0.0;
    for (int s = 0; s < n; ++s) {
      const auto& sp = springs[static_cast<std::size_t>(s)];
      const double fp = trials ? (*trials)[static_cast<std::size_t>(s)].plastic_force : sp.plastic_force;
      rec += sp.recoverable(drift_of(u, s), fp);
    }
    energy->input.push_back(e_in);
    energy->kinetic.push_back(0.5 * v.dot(M * v));
    energy->recoverable.push_back(rec);
    energy->damping.push_back(e_damp);
    energy->hysteretic.push_back(e_hyst);
  };
  if (energy) *energy = EnergyTrace{};
  record_energy(nullptr);

  const double c_a = 4.0 / (dt * dt);
  const double c_v = 2.0 / dt;
  const Eigen::MatrixXd dyn = c_a * M + c_v * C;
  bool yielded = false;
  std::vector<Spring::Trial> trials(un);
  Eigen::MatrixXd kt(n, n);
  Eigen::VectorXd p_prev = p;

  for (std::size_t k = 1; k < steps; ++k) {
    for (int s = 0; s < n; ++s) p(s) = load[static_cast<std::size_t>(s)][k];
    Eigen::VectorXd u_new = u;
    Eigen::VectorXd a_new, v_new;
    bool converged = false;
    const double scale = std::max({p.cwiseAbs().maxCoeff(), (M * a).cwiseAbs().maxCoeff(), 1e-300});
    for (int it = 0; it < opts.max_iterations; ++it) {
      a_new = c_a * (u_new - u) - (4.0 / dt) * v - a;
      v_new = c_v * (u_new - u) - v;
      restoring(u_new, r, &kt, &trials);
      const Eigen::VectorXd res = p - M * a_new - C * v_new - r;
      const Eigen::VectorXd du = (dyn + kt).ldlt().solve(res);
      u_new += du;
      const double du_norm = du.cwiseAbs().maxCoeff();
      const double u_scale = std::max(u_new.cwiseAbs().maxCoeff(), 1e-300);
      if (du_norm <= opts.tolerance * u_scale || res.cwiseAbs().maxCoeff() <= 1e-14 * scale) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      fail(ErrorCode::NonConvergence, "Newton iteration did not converge at step " + std::to_string(k));
    }
    a_new = c_a * (u_new - u) - (4.0 / dt) * v - a;
    v_new = c_v * (u_new - u) - v;
    restoring(u_new, r, nullptr, &trials);

    if (energy) {
      const Eigen::VectorXd du = u_new - u;
      e_in += 0.5 * (p + p_prev).dot(du);
      e_damp += 0.5 * (C * (v + v_new)).dot(du);
      for (int s = 0; s < n; ++s) {
        const auto& sp = springs[static_cast<std::size_t>(s)];
        const double ke = (1.0 - sp.alpha) * sp.k;
        if (ke <= 0.0) continue;
        // Plastic increment of the EPP branch times its mean force.
        const double dd = drift_of(u_new, s) - sp.drift;
        const double fp_new = trials[static_cast<std::size_t>(s)].plastic_force;
        const double dplastic = dd - (fp_new - sp.plastic_force) / ke;
        e_hyst += 0.5 * (fp_new + sp.plastic_force) * dplastic;
      }
    }

    for (int s = 0; s < n; ++s) {
      auto& sp = springs[static_cast<std::size_t>(s)];
      const auto& tr = trials[static_cast<std::size_t>(s)];
      yielded = yielded || tr.yielding;
      sp.drift = drift_of(u_new, s);
      sp.plastic_force = tr.plastic_force;
    }
    u = u_new;
    v = v_new;
    a = a_new;
    p_prev = p;
    for (std::size_t s = 0; s < un; ++s) {
      disp[k][s] = u(static_cast<int>(s));
      acc[k][s] = a(static_cast<int>(s));
    }
    record_energy(nullptr);
  }

  EdpResult res = extract_edp(disp, acc);
  res.yielded = yielded;
  return res;
}

}  // namespace flume::structural
