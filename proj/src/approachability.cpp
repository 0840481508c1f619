#include "blackwell/approachability.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace blackwell {
namespace {

constexpr double kSqrt2Plus1 = 2.414213562373095;  // 1 + sqrt(2)

long long ceil_rounds(double value) {
  if (!std::isfinite(value)) throw InputError("inner round count overflows");
  if (value > 2e9) throw InputError("inner round count exceeds the desk-scale budget");
  return std::max<long long>(1, static_cast<long long>(std::ceil(value)));
}

double safe_step(double numer, double denom) { return denom > 0.0 ? numer / denom : 0.0; }

}  // namespace

BlackwellInstance make_instance(std::shared_ptr<const ConvexSetHandle> x_set,
                                std::shared_ptr<const ConvexSetHandle> y_set,
                                std::shared_ptr<const ConvexSetHandle> s_set,
                                BilinearLoss loss) {
  if (!x_set || !y_set || !s_set) throw InputError("instance: null set");
  if (x_set->dim() != loss.n() || y_set->dim() != loss.m() || s_set->dim() != loss.d())
    throw DimensionError("instance: set dimensions do not match the loss shape");
  if (!x_set->nonneg() || !y_set->nonneg())
    throw InputError("instance: action sets must lie in the nonnegative orthant");
  for (const auto& m : loss.mats)
    if ((m.array() < 0.0).any())
      throw InputError("instance: payoff matrices must be entrywise nonnegative");
  return BlackwellInstance{std::move(x_set), std::move(y_set), std::move(s_set),
                           std::move(loss)};
}

GameConstants compute_constants(const BlackwellInstance& inst, const ScenarioConfig& cfg) {
  if (cfg.horizon < 1) throw InputError("constants: horizon must be positive");
  GameConstants c;
  c.loss_norm = loss_norm_bound(inst.loss);
  c.r_x = inst.x_set->radius();
  c.r_y = inst.y_set->radius();
  c.d_x = inst.x_set->diameter();
  c.d_y = inst.y_set->diameter();
  c.r_s = inst.s_set->radius();
  const double t = static_cast<double>(cfg.horizon);
  const double ax = cfg.alpha_x, ay = cfg.alpha_y;

  switch (cfg.scenario) {
    case Scenario::X_ONLY: {
      if (!(ax >= 1.0)) throw InputError("constants: X_ONLY needs alpha_x >= 1");
      if (ay != 1.0) throw InputError("constants: X_ONLY fixes alpha_y = 1");
      c.r_tilde = 0.0;
      c.g_inner_y = (ax + 2.0) * c.loss_norm * c.r_x;
      c.n_inner = ceil_rounds(c.g_inner_y * c.g_inner_y * c.d_y * c.d_y * t);
      c.g_meta = ax * c.r_s + c.loss_norm * (ax + 2.0) * c.r_x * c.r_y;
      c.eta_inner =
          safe_step(c.d_y, c.g_inner_y * std::sqrt(static_cast<double>(c.n_inner)));
      c.eps = 1.5 / std::sqrt(t);
      c.r_sp = (ax + 2.0) * c.r_x;
      c.target_scale = ax;
      c.target_shift = 0.0;
      c.rate_bound = (6.0 * c.g_meta + 3.0) / (2.0 * std::sqrt(t));
      break;
    }
    case Scenario::Y_ONLY: {
      if (!(ay > 0.0 && ay <= 1.0)) throw InputError("constants: Y_ONLY needs alpha_y in (0,1]");
      if (ax != 1.0) throw InputError("constants: Y_ONLY fixes alpha_x = 1");
      c.r_tilde = c.loss_norm * c.r_x * c.r_y;
      c.g_inner_x = (ay + 2.0) * c.loss_norm * c.r_y;
      c.n_inner =
          ceil_rounds(c.g_inner_x * c.g_inner_x * c.d_x * c.d_x * t / (ay * ay));
      c.g_meta = (c.r_s + c.r_tilde) / ay + c.loss_norm * c.r_x * c.r_y;
      c.eta_inner =
          safe_step(c.d_x, c.g_inner_x * std::sqrt(static_cast<double>(c.n_inner)));
      c.eps = 1.5 / std::sqrt(t);
      c.r_sp = c.r_x;
      c.target_scale = 1.0 / ay;
      c.target_shift = c.r_tilde;
      c.rate_bound = (6.0 * c.g_meta + 3.0) / (2.0 * std::sqrt(t));
      break;
    }
    case Scenario::BOTH: {
      if (!(ax >= 1.0)) throw InputError("constants: BOTH needs alpha_x >= 1");
      if (!(ay > 0.0 && ay <= 1.0)) throw InputError("constants: BOTH needs alpha_y in (0,1]");
      c.r_tilde = c.loss_norm * c.r_x * c.r_y;
      c.g_inner_x = (ay + 2.0) * c.loss_norm * c.r_y;
      c.n_inner = ceil_rounds(kSqrt2Plus1 * kSqrt2Plus1 * ax * ax * c.g_inner_x *
                              c.g_inner_x * c.r_x * c.r_x * t / (ay * ay));
      const double sqrt_n = std::sqrt(static_cast<double>(c.n_inner));
      c.g_meta = ax * (c.r_s + c.r_tilde) / ay + c.loss_norm * (ax + 2.0) * c.r_x * c.r_y;
      c.mu = safe_step(std::sqrt(2.0) * ax * c.r_x, c.g_inner_x * sqrt_n);
      c.xi = ax * c.r_x * c.g_inner_x / (2.0 * sqrt_n);
      c.eps = 1.0 / std::sqrt(t);
      c.r_sp = (ax + 2.0) * c.r_x;
      c.target_scale = ax / ay;
      c.target_shift = c.r_tilde;
      c.rate_bound = (3.0 * c.g_meta + 3.0) / std::sqrt(t);
      break;
    }
  }
  c.eta_ball = safe_step(2.0, c.g_meta * std::sqrt(t));
  return c;
}

ShiftedScaledSetView modified_target(const BlackwellInstance& inst, const GameConstants& c) {
  return make_view(inst.s_set, c.target_scale, c.target_shift);
}

SupportResult modified_support(const BlackwellInstance& inst, const GameConstants& c,
                               const Vector& w) {
  return support_shifted_scaled(modified_target(inst, c), w);
}

Transcript run_approachability(const BlackwellInstance& inst, const ScenarioConfig& cfg,
                               const AdversaryFn& adversary, const ApproxOracle* oracle_x,
                               const ApproxOracle* oracle_y, long long stride) {
  if (!adversary) throw InputError("run: null adversary");
  if (stride < 1) throw InputError("run: stride must be positive");
  switch (cfg.scenario) {
    case Scenario::X_ONLY:
      if (!oracle_x || oracle_y)
        throw ContractViolationError("run: X_ONLY takes an x oracle and no y oracle");
      break;
    case Scenario::Y_ONLY:
      if (oracle_x || !oracle_y)
        throw ContractViolationError("run: Y_ONLY takes a y oracle and no x oracle");
      break;
    case Scenario::BOTH:
      if (!oracle_x || !oracle_y)
        throw ContractViolationError("run: BOTH takes oracles on both sides");
      break;
  }
  if (oracle_x) {
    if (oracle_x->mode() != OracleMode::Minimizing)
      throw ContractViolationError("run: x oracle must be minimizing");
    if (oracle_x->alpha() != cfg.alpha_x)
      throw InputError("run: alpha_x disagrees with the x oracle");
    if (oracle_x->set().dim() != inst.x_set->dim() ||
        std::abs(oracle_x->radius() - inst.x_set->radius()) > 1e-9)
      throw ContractViolationError("run: x oracle serves a different set than the instance");
  }
  if (oracle_y) {
    if (oracle_y->mode() != OracleMode::Maximizing)
      throw ContractViolationError("run: y oracle must be maximizing");
    if (oracle_y->alpha() != cfg.alpha_y)
      throw InputError("run: alpha_y disagrees with the y oracle");
    if (oracle_y->set().dim() != inst.y_set->dim() ||
        std::abs(oracle_y->radius() - inst.y_set->radius()) > 1e-9)
      throw ContractViolationError("run: y oracle serves a different set than the instance");
  }

  Transcript tr;
  tr.constants = compute_constants(inst, cfg);
  tr.horizon = cfg.horizon;
  const GameConstants& c = tr.constants;
  const ShiftedScaledSetView target = modified_target(inst, c);
  const int d = inst.loss.d();

  const long long calls_x0 = oracle_x ? oracle_x->calls() : 0;
  const long long calls_y0 = oracle_y ? oracle_y->calls() : 0;

  auto ball = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::ball(d, 1.0));
  OcoState w_state = make_ogd_state(ball, c.eta_ball);

  Vector sum_loss_x = Vector::Zero(d);
  Vector sum_loss_s = Vector::Zero(d);
  std::optional<Vector> warm_down, warm_view;
  const auto t_start = std::chrono::steady_clock::now();

  for (long long t = 1; t <= cfg.horizon; ++t) {
    const Vector w = w_state.x;
    const Matrix a = weighted_matrix(inst.loss, w);

    SaddleOutput sp;
    switch (cfg.scenario) {
      case Scenario::X_ONLY:
        sp = aispox(a, *oracle_x, inst.y_set, c.n_inner, c.eta_inner);
        break;
      case Scenario::Y_ONLY:
        sp = aispoy(a, *oracle_y, inst.x_set, c.n_inner, c.eta_inner);
        break;
      case Scenario::BOTH:
        sp = aispoyx(a, *oracle_x, *oracle_y, c.n_inner, c.mu, c.xi);
        break;
    }
    const Vector& x_t = sp.xbar;
    const Vector& s_t = sp.sbar;

    const Vector y_t = adversary(t, s_t);
    if (y_t.size() != inst.y_set->dim() || !inst.y_set->contains(y_t, 1e-6))
      throw ContractViolationError("run: adversary action leaves Y");

    sum_loss_x += eval_loss(inst.loss, x_t, y_t);
    sum_loss_s += eval_loss(inst.loss, s_t, y_t);
    const double inv_t = 1.0 / static_cast<double>(t);

    const double viol = (sum_loss_s - sum_loss_x).maxCoeff() * inv_t;
    if (viol > tr.domination_worst) tr.domination_worst = viol;
    if (viol > 1e-12) tr.domination_ok = false;

    // Direction player's loss and subgradient at w_t.
    const SupportResult sup = support_shifted_scaled(target, w);
    const Vector loss_x_t = eval_loss(inst.loss, x_t, y_t);
    tr.meta_cumulative_loss += sup.value - w.dot(loss_x_t);
    w_state = ogd_step(w_state, sup.point - loss_x_t);

    if (t % stride == 0 || t == cfg.horizon) {
      TranscriptRow row;
      row.t = t;
      const Vector avg_x = sum_loss_x * inv_t;
      const Vector avg_s = sum_loss_s * inv_t;
      const ViewDistanceResult vd = distance_to_view(avg_x, target, warm_view);
      warm_view = vd.point / c.target_scale;  // reuse as a base-space hint
      const DownwardDistanceResult dd = distance_to_downward_closure(avg_s, target, warm_down);
      warm_down = dd.base_point;
      row.d_infeasible = vd.distance;
      row.d_feasible_down = dd.distance;
      row.calls_x = (oracle_x ? oracle_x->calls() : 0) - calls_x0;
      row.calls_y = (oracle_y ? oracle_y->calls() : 0) - calls_y0;
      row.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t_start)
                        .count();
      tr.rows.push_back(std::move(row));
    }
  }

  const double t_total = static_cast<double>(cfg.horizon);
  tr.avg_loss_x = sum_loss_x / t_total;
  tr.avg_loss_s = sum_loss_s / t_total;
  tr.final_d_infeasible = tr.rows.back().d_infeasible;
  tr.final_d_feasible_down = tr.rows.back().d_feasible_down;
  tr.calls_x = (oracle_x ? oracle_x->calls() : 0) - calls_x0;
  tr.calls_y = (oracle_y ? oracle_y->calls() : 0) - calls_y0;
  tr.meta_regret = tr.meta_cumulative_loss + t_total * tr.final_d_infeasible;
  const double tol = 1e-9 * (1.0 + c.rate_bound);
  tr.rate_bound_ok = tr.final_d_feasible_down <= c.rate_bound + tol;
  tr.infeasible_bound_ok =
      tr.final_d_infeasible <= 3.0 * c.g_meta / std::sqrt(t_total) + c.eps + tol;
  return tr;
}

ApproachabilityReport check_approachable(const ConvexSetHandle& x_set,
                                         const ShiftedScaledSetView& y_view,
                                         const ShiftedScaledSetView& s_view,
                                         const BilinearLoss& loss, int num_directions,
                                         double tol, unsigned seed) {
  if (!x_set.has_vertices())
    throw InputError("approachability check: needs a vertex-enumerable X");
  if (num_directions < 1) throw InputError("approachability check: needs directions");
  const int d = loss.d();

  std::vector<Vector> dirs;
  dirs.reserve(num_directions);
  for (int i = 0; i < d && static_cast<int>(dirs.size()) < num_directions; ++i) {
    Vector e = Vector::Zero(d);
    e[i] = 1.0;
    dirs.push_back(e);
    if (static_cast<int>(dirs.size()) < num_directions) dirs.push_back(-e);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (static_cast<int>(dirs.size()) < num_directions) {
    Vector w(d);
    for (int i = 0; i < d; ++i) w[i] = gauss(rng);
    const double n = w.norm();
    if (n < 1e-12) continue;
    dirs.push_back(w / n);
  }

  const auto& verts = x_set.vertices();
  ApproachabilityReport report;
  report.worst_slack = -std::numeric_limits<double>::infinity();
  for (const auto& w : dirs) {
    const Matrix a = weighted_matrix(loss, w);
    const double h_target = support_shifted_scaled(s_view, w).value;
    auto phi = [&](const Vector& x) {
      return support_shifted_scaled(y_view, Vector(a.transpose() * x)).value;
    };
    double best = std::numeric_limits<double>::infinity();
    Vector best_x;
    for (const auto& v : verts) {
      const double val = phi(v);
      if (val < best) {
        best = val;
        best_x = v;
      }
    }
    for (int round = 0; round < 20; ++round) {
      const Vector y_resp = support_shifted_scaled(y_view, Vector(a.transpose() * best_x)).point;
      const Vector cost = a * y_resp;
      double lin_best = std::numeric_limits<double>::infinity();
      Vector cand;
      for (const auto& v : verts) {
        const double val = cost.dot(v);
        if (val < lin_best) {
          lin_best = val;
          cand = v;
        }
      }
      const double cand_phi = phi(cand);
      if (cand_phi < best - 1e-15) {
        best = cand_phi;
        best_x = cand;
      } else {
        break;
      }
    }
    DirectionSlack ds;
    ds.w = w;
    ds.slack = best - h_target;
    report.worst_slack = std::max(report.worst_slack, ds.slack);
    report.directions.push_back(std::move(ds));
  }
  report.approachable_on_sample = report.worst_slack <= tol;
  return report;
}

ApproachabilityReport check_approachable(const BlackwellInstance& inst, int num_directions,
                                         double tol, unsigned seed) {
  return check_approachable(*inst.x_set, make_view(inst.y_set, 1.0, 0.0),
                            make_view(inst.s_set, 1.0, 0.0), inst.loss, num_directions, tol,
                            seed);
}

}  // namespace blackwell
