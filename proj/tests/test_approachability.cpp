#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blackwell/instances.hpp"

using namespace blackwell;

namespace {

// X = {e1} in R^2, Y = [0,1], one payoff matrix [[1],[0]]: unit loss norm,
// R_X = R_Y = D_Y = 1. Small enough to check the constant schedules by hand.
BlackwellInstance unit_constants_instance() {
  Vector e1(2);
  e1 << 1.0, 0.0;
  auto x = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::singleton(e1));
  Vector lo(1), hi(1);
  lo << 0.0;
  hi << 1.0;
  auto y = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::box(lo, hi));
  Vector s0(1);
  s0 << 0.0;
  auto s = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::singleton(s0));
  Matrix l1(2, 1);
  l1 << 1.0, 0.0;
  return make_instance(x, y, s, make_bilinear_loss({l1}));
}

// Diagonal two-objective game over simplices: loss_i(x, y) = x_i y_i.
BlackwellInstance diagonal_game(double target_hi) {
  auto xs = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::simplex(2));
  auto ys = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::simplex(2));
  Vector lo = Vector::Zero(2), hi = Vector::Constant(2, target_hi);
  auto s = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::box(lo, hi));
  Matrix l1 = Matrix::Zero(2, 2), l2 = Matrix::Zero(2, 2);
  l1(0, 0) = 1.0;
  l2(1, 1) = 1.0;
  return make_instance(xs, ys, s, make_bilinear_loss({l1, l2}));
}

}  // namespace

TEST_CASE("constant schedule for the x-oracle scenario") {
  const BlackwellInstance inst = unit_constants_instance();
  ScenarioConfig cfg;
  cfg.scenario = Scenario::X_ONLY;
  cfg.alpha_x = 2.0;
  cfg.horizon = 10;
  const GameConstants c = compute_constants(inst, cfg);
  CHECK(c.loss_norm == doctest::Approx(1.0));
  CHECK(c.r_x == doctest::Approx(1.0));
  CHECK(c.d_y == doctest::Approx(1.0));
  CHECK(c.g_inner_y == doctest::Approx(4.0));  // (alpha_x + 2) * norm * R_X
  CHECK(c.n_inner == 160);                     // ceil(G^2 D^2 T) = 16 * 10
  CHECK(c.target_scale == doctest::Approx(2.0));
  CHECK(c.target_shift == 0.0);
  CHECK(c.eps == doctest::Approx(1.5 / std::sqrt(10.0)));
  CHECK(c.eta_ball == doctest::Approx(2.0 / (c.g_meta * std::sqrt(10.0))));
  CHECK(c.rate_bound == doctest::Approx((6.0 * c.g_meta + 3.0) / (2.0 * std::sqrt(10.0))));
  // Certified direction-player bound: alpha R_S + norm (alpha+2) R_X R_Y.
  CHECK(c.g_meta == doctest::Approx(2.0 * 0.0 + 1.0 * 4.0 * 1.0 * 1.0));
}

TEST_CASE("constant schedule for the two-oracle scenario") {
  const BlackwellInstance inst = unit_constants_instance();
  ScenarioConfig cfg;
  cfg.scenario = Scenario::BOTH;
  cfg.alpha_x = 1.0;
  cfg.alpha_y = 1.0;
  cfg.horizon = 100;
  const GameConstants c = compute_constants(inst, cfg);
  CHECK(c.g_inner_x == doctest::Approx(3.0));  // (alpha_y + 2) * norm * R_Y
  const double sq = (1.0 + std::sqrt(2.0)) * (1.0 + std::sqrt(2.0));
  CHECK(c.n_inner == static_cast<long long>(std::ceil(sq * 9.0 * 100.0)));
  CHECK(c.n_inner == 5246);
  CHECK(c.mu == doctest::Approx(std::sqrt(2.0) / (3.0 * std::sqrt(double(c.n_inner)))));
  CHECK(c.xi == doctest::Approx(3.0 / (2.0 * std::sqrt(double(c.n_inner)))));
  CHECK(c.eps == doctest::Approx(1.0 / 10.0));
  CHECK(c.rate_bound == doctest::Approx((3.0 * c.g_meta + 3.0) / 10.0));
}

TEST_CASE("constant schedule for the y-oracle scenario and ratio validation") {
  const BlackwellInstance inst = unit_constants_instance();
  ScenarioConfig cfg;
  cfg.scenario = Scenario::Y_ONLY;
  cfg.alpha_y = 0.5;
  cfg.horizon = 16;
  const GameConstants c = compute_constants(inst, cfg);
  CHECK(c.g_inner_x == doctest::Approx(2.5));  // (0.5 + 2) * 1 * 1
  CHECK(c.r_tilde == doctest::Approx(1.0));
  CHECK(c.target_scale == doctest::Approx(2.0));  // 1 / alpha_y
  CHECK(c.target_shift == doctest::Approx(1.0));
  // N = ceil(G_X^2 D_X^2 T / alpha_y^2); D_X = 0 for a singleton, floor 1.
  CHECK(c.n_inner == 1);

  ScenarioConfig bad = cfg;
  bad.alpha_y = 1.5;
  CHECK_THROWS_AS(compute_constants(inst, bad), InputError);
  bad = cfg;
  bad.alpha_x = 2.0;  // Y_ONLY forces alpha_x = 1
  CHECK_THROWS_AS(compute_constants(inst, bad), InputError);
}

TEST_CASE("modified target support values") {
  // X_ONLY doubles the target: S = {(1,1)}, w = e1 -> 2.
  const NegativeInstance ni = build_negative_instance(2.0);
  ScenarioConfig cfg;
  cfg.scenario = Scenario::X_ONLY;
  cfg.alpha_x = 2.0;
  cfg.horizon = 4;
  const GameConstants c = compute_constants(ni.instance, cfg);
  Vector w(2);
  w << 1.0, 0.0;
  CHECK(modified_support(ni.instance, c, w).value == doctest::Approx(2.0));

  // Y_ONLY erodes then scales: value = (1/a_y)(h_S(w) + R~ |w^-|).
  const BlackwellInstance inst = diagonal_game(1.0);
  ScenarioConfig ycfg;
  ycfg.scenario = Scenario::Y_ONLY;
  ycfg.alpha_y = 0.5;
  ycfg.horizon = 4;
  const GameConstants yc = compute_constants(inst, ycfg);
  Vector wn(2);
  wn << -1.0, 0.0;
  const double expect = (1.0 / 0.5) * (0.0 + yc.r_tilde * 1.0);
  CHECK(modified_support(inst, yc, wn).value == doctest::Approx(expect));

  // Nonnegative w never sees the shift.
  Vector wp(2);
  wp << 0.6, 0.8;
  CHECK(modified_support(inst, yc, wp).value ==
        doctest::Approx(2.0 * inst.s_set->support(wp).value));
}

TEST_CASE("negative instance: the stubborn oracle reaches the scaled target only") {
  const NegativeInstance ni = build_negative_instance(2.0);
  const ApproxOracle oracle = make_negative_oracle(ni);
  ScenarioConfig cfg;
  cfg.scenario = Scenario::X_ONLY;
  cfg.alpha_x = 2.0;
  cfg.horizon = 32;
  const AdversaryFn adv = [](long long, const Vector&) {
    Vector y(1);
    y << 1.0;
    return y;
  };
  const Transcript tr = run_approachability(ni.instance, cfg, adv, &oracle, nullptr, 8);

  CHECK(tr.avg_loss_s[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(tr.avg_loss_s[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tr.final_d_feasible_down == doctest::Approx(0.0).epsilon(1e-9));
  const double to_plain =
      distance_to_view(tr.avg_loss_s, make_view(ni.instance.s_set, 1.0, 0.0)).distance;
  CHECK(to_plain == doctest::Approx(1.0).epsilon(1e-9));

  CHECK(tr.calls_x == 32 * tr.constants.n_inner);
  CHECK(tr.calls_y == 0);
  CHECK(tr.constants.n_inner == 1);  // singleton adversary: zero diameter
  CHECK(tr.domination_ok);
  CHECK(tr.rate_bound_ok);
  CHECK(tr.infeasible_bound_ok);
  CHECK(tr.meta_cumulative_loss >= -double(cfg.horizon) * tr.constants.eps - 1e-7);
  CHECK(!tr.rows.empty());
  CHECK(tr.rows.back().t == 32);
}

TEST_CASE("exact-oracle run on the diagonal game approaches the scaled box") {
  const BlackwellInstance inst = diagonal_game(0.5);
  auto oracle = exact_oracle(inst.x_set, OracleMode::Minimizing);
  ScenarioConfig cfg;
  cfg.scenario = Scenario::X_ONLY;
  cfg.alpha_x = 1.0;
  cfg.horizon = 64;
  const AdversaryFn adv = [](long long t, const Vector&) {
    Vector y = Vector::Zero(2);
    y[t % 2] = 1.0;
    return y;
  };
  const Transcript tr = run_approachability(inst, cfg, adv, &oracle, nullptr, 16);
  CHECK(tr.domination_ok);
  CHECK(tr.rate_bound_ok);
  CHECK(tr.infeasible_bound_ok);
  CHECK(tr.final_d_feasible_down <= tr.constants.rate_bound + 1e-9);
  CHECK(tr.calls_x == 64 * tr.constants.n_inner);
  CHECK(tr.meta_regret >= -1e-7);
  // Distances are tracked at the stride and at the last round.
  for (size_t i = 1; i < tr.rows.size(); ++i) CHECK(tr.rows[i].t > tr.rows[i - 1].t);
}

TEST_CASE("oracle wiring is validated against the scenario") {
  const BlackwellInstance inst = diagonal_game(0.5);
  auto ox = exact_oracle(inst.x_set, OracleMode::Minimizing);
  auto oy = exact_oracle(inst.y_set, OracleMode::Maximizing);
  ScenarioConfig cfg;
  cfg.scenario = Scenario::X_ONLY;
  cfg.alpha_x = 1.0;
  cfg.horizon = 4;
  const AdversaryFn adv = [](long long, const Vector&) {
    Vector y(2);
    y << 1.0, 0.0;
    return y;
  };
  CHECK_THROWS_AS(run_approachability(inst, cfg, adv, nullptr, nullptr, 1),
                  ContractViolationError);
  CHECK_THROWS_AS(run_approachability(inst, cfg, adv, &ox, &oy, 1), ContractViolationError);

  // Ratio mismatch between config and oracle.
  ScenarioConfig mismatched = cfg;
  mismatched.alpha_x = 2.0;
  CHECK_THROWS_AS(run_approachability(inst, mismatched, adv, &ox, nullptr, 1), InputError);

  // Infeasible adversary output.
  const AdversaryFn bad = [](long long, const Vector&) {
    Vector y(2);
    y << 2.0, 2.0;
    return y;
  };
  CHECK_THROWS_AS(run_approachability(inst, cfg, bad, &ox, nullptr, 1),
                  ContractViolationError);
}

TEST_CASE("one-shot condition check: approachable base and scaled variant") {
  const NegativeInstance ni = build_negative_instance(2.0);
  const ApproachabilityReport base = check_approachable(ni.instance, 32, 1e-6, 5);
  CHECK(base.approachable_on_sample);
  CHECK(base.worst_slack <= 1e-9);

  // Scaled variant: (2X, Y, loss, 2S) stays approachable.
  std::vector<Vector> scaled_verts;
  for (const Vector& v : ni.instance.x_set->vertices()) scaled_verts.push_back(2.0 * v);
  const ConvexSetHandle scaled_x = ConvexSetHandle::vpolytope(scaled_verts);
  const ApproachabilityReport scaled = check_approachable(
      scaled_x, make_view(ni.instance.y_set, 1.0, 0.0), make_view(ni.instance.s_set, 2.0, 0.0),
      ni.instance.loss, 32, 1e-6, 5);
  CHECK(scaled.approachable_on_sample);
}

TEST_CASE("one-shot condition check flags an unreachable target") {
  Vector xp(2), yp(1), sp(2);
  xp << 1.0, 1.0;
  yp << 1.0;
  sp << 0.1, 0.1;
  auto x = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::singleton(xp));
  auto y = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::singleton(yp));
  auto s = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::singleton(sp));
  Matrix l1(2, 1), l2(2, 1);
  l1 << 1.0, 0.0;
  l2 << 0.0, 1.0;
  const BlackwellInstance inst = make_instance(x, y, s, make_bilinear_loss({l1, l2}));
  const ApproachabilityReport rep = check_approachable(inst, 16, 1e-6, 7);
  CHECK_FALSE(rep.approachable_on_sample);
  CHECK(rep.worst_slack > 0.1);
}

TEST_CASE("instance validation enforces nonnegativity") {
  auto xs = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::simplex(2));
  auto ys = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::simplex(2));
  Vector lo = Vector::Zero(2), hi = Vector::Ones(2);
  auto s = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::box(lo, hi));
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = -1.0;
  CHECK_THROWS_AS(make_instance(xs, ys, s, make_bilinear_loss({neg, neg})), InputError);

  Matrix wrong = Matrix::Zero(3, 2);
  CHECK_THROWS_AS(make_instance(xs, ys, s, make_bilinear_loss({wrong, wrong})),
                  DimensionError);
}
