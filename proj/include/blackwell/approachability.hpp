#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "blackwell/saddle.hpp"

namespace blackwell {

/// Repeated vector-valued game: the player picks x in X, the adversary y in Y,
/// the player suffers loss(x, y) and wants the running average to approach a
/// target set. X and Y live in the nonnegative orthant; the loss is bilinear
/// with entrywise-nonnegative payoff matrices (so smaller actions never hurt).
struct BlackwellInstance {
  std::shared_ptr<const ConvexSetHandle> x_set;
  std::shared_ptr<const ConvexSetHandle> y_set;
  std::shared_ptr<const ConvexSetHandle> s_set;  // target
  BilinearLoss loss;
};

BlackwellInstance make_instance(std::shared_ptr<const ConvexSetHandle> x_set,
                                std::shared_ptr<const ConvexSetHandle> y_set,
                                std::shared_ptr<const ConvexSetHandle> s_set,
                                BilinearLoss loss);

/// Which sides are reachable only through approximation oracles.
enum class Scenario { X_ONLY, Y_ONLY, BOTH };

struct ScenarioConfig {
  Scenario scenario = Scenario::X_ONLY;
  double alpha_x = 1.0;  // minimizing ratio of the x oracle (>= 1)
  double alpha_y = 1.0;  // maximizing ratio of the y oracle (in (0, 1])
  long long horizon = 1;
};

/// Every derived constant of a run, all certified upper bounds computed from
/// set radii/diameters and the loss norm bound.
struct GameConstants {
  double loss_norm = 0.0;
  double r_x = 0.0, r_y = 0.0, d_x = 0.0, d_y = 0.0, r_s = 0.0;
  double r_tilde = 0.0;      // y-side erosion radius: loss_norm * r_x * r_y
  double g_inner_x = 0.0;    // gradient bound of the inner x player
  double g_inner_y = 0.0;    // gradient bound of the inner y player
  double g_meta = 0.0;       // gradient bound of the direction player
  long long n_inner = 1;     // inner rounds per meta round
  double eta_ball = 0.0;     // direction player's step
  double eta_inner = 0.0;    // inner OGD step (X_ONLY / Y_ONLY)
  double mu = 0.0, xi = 0.0; // projection-free OGD step and slack (BOTH)
  double eps = 0.0;          // per-round saddle accuracy
  double r_sp = 0.0;         // norm bound of the infeasible per-round iterate
  double target_scale = 1.0; // modified target = scale * (S - B+(shift))
  double target_shift = 0.0;
  double rate_bound = 0.0;   // certified bound on the final feasible distance
};

GameConstants compute_constants(const BlackwellInstance& inst, const ScenarioConfig& cfg);

/// The modified target the meta loop plays against.
ShiftedScaledSetView modified_target(const BlackwellInstance& inst, const GameConstants& c);

/// Support value/point of the modified target (closed form from the base set).
SupportResult modified_support(const BlackwellInstance& inst, const GameConstants& c,
                               const Vector& w);

/// y_t = adversary(t, s_t): the adversary sees the player's feasible action.
using AdversaryFn = std::function<Vector(long long, const Vector&)>;

struct TranscriptRow {
  long long t = 0;
  double d_infeasible = 0.0;     // distance of the x-average loss to the target
  double d_feasible_down = 0.0;  // distance of the s-average loss to its downward closure
  long long calls_x = 0, calls_y = 0;
  double wall_ms = 0.0;
};

struct Transcript {
  GameConstants constants;
  long long horizon = 0;
  std::vector<TranscriptRow> rows;  // one per stride hit, final round always included
  Vector avg_loss_x, avg_loss_s;
  double final_d_infeasible = 0.0;
  double final_d_feasible_down = 0.0;
  double meta_cumulative_loss = 0.0;  // sum of realized direction-player losses
  double meta_regret = 0.0;           // against the best fixed direction in hindsight
  long long calls_x = 0, calls_y = 0;
  bool domination_ok = true;     // s-average <= x-average, every round, 1e-12 slack
  double domination_worst = 0.0; // largest coordinatewise violation observed
  bool rate_bound_ok = true;     // final feasible distance within rate_bound
  bool infeasible_bound_ok = true;  // final x-average distance within 3G/sqrt(T)+eps
};

/// Runs the full meta loop: direction player (projected OGD on the unit ball),
/// per-round approximate saddle oracle, adversary response, distance tracking
/// every `stride` rounds. Oracles must match the scenario's reachable sides;
/// pass nullptr for sides the engine optimizes exactly.
Transcript run_approachability(const BlackwellInstance& inst, const ScenarioConfig& cfg,
                               const AdversaryFn& adversary, const ApproxOracle* oracle_x,
                               const ApproxOracle* oracle_y, long long stride = 1);

struct DirectionSlack {
  Vector w;
  double slack = 0.0;  // min_x max_y <w, loss(x,y)> - h_target(w)
};

struct ApproachabilityReport {
  std::vector<DirectionSlack> directions;
  double worst_slack = 0.0;
  bool approachable_on_sample = false;
};

/// Samples unit directions (axis directions first, then seeded Gaussian) and
/// evaluates the one-shot condition: some x in X must keep the worst-case
/// weighted loss below the target's support value. The x search scans X's
/// vertices with a best-response refinement, so the verdict is conservative
/// for targets whose witnesses are mixed. Y and the target may be shifted
/// and scaled views.
ApproachabilityReport check_approachable(const ConvexSetHandle& x_set,
                                         const ShiftedScaledSetView& y_view,
                                         const ShiftedScaledSetView& s_view,
                                         const BilinearLoss& loss, int num_directions,
                                         double tol, unsigned seed);

ApproachabilityReport check_approachable(const BlackwellInstance& inst, int num_directions,
                                         double tol, unsigned seed);

}  // namespace blackwell
