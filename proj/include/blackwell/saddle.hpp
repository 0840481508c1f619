#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "blackwell/oco.hpp"
#include "blackwell/oracles.hpp"

namespace blackwell {

/// Result of an approximate saddle-point computation for the bilinear game
/// g(x, y) = x^T A y. xbar is the (possibly infeasible) iterate average whose
/// worst-case value is certified; sbar is a feasible point dominated
/// coordinatewise by xbar (sbar <= xbar).
struct SaddleOutput {
  Vector xbar;
  Vector sbar;
  long long rounds = 0;
  long long calls_x = 0;  // counted oracle calls made on the x side
  long long calls_y = 0;  // counted oracle calls made on the y side
};

/// X reachable only through a minimizing extended oracle; the y side plays
/// projected online gradient descent over its exact set with step eta_y.
/// After N rounds, max_y g(xbar, y) is within the y-player's average regret of
/// min over (alpha_x X) of the worst case, sbar <= xbar, and
/// ||xbar|| <= (alpha_x + 2) R_X.
SaddleOutput aispox(const Matrix& a, const ApproxOracle& oracle_x,
                    std::shared_ptr<const ConvexSetHandle> y_domain, long long rounds,
                    double eta_y);

/// Y reachable only through a maximizing extended oracle; the x side plays
/// projected OGD over its exact set with step eta_x. Returns (xbar, xbar):
/// the average x iterate is itself feasible. max_y g(xbar, y) is within
/// (average regret / alpha_y) of min_x max over alpha_y^{-1}(Y - B+(R_Y)).
SaddleOutput aispoy(const Matrix& a, const ApproxOracle& oracle_y,
                    std::shared_ptr<const ConvexSetHandle> x_domain, long long rounds,
                    double eta_x);

struct FwProjectionOutput {
  Vector x;  // near-projection of y onto alpha K (up to the stopping slack)
  Vector s;  // feasible point with s <= x
  long long iterations = 0;  // extended oracle calls spent
};

/// Infeasible projection onto alpha K via Frank-Wolfe steps of the extended
/// minimizing oracle. Stops when <x - y_clip, x - v> <= eps, which certifies
/// ||z - x||^2 <= ||z - y||^2 + 2 eps for every z in alpha K.
/// A warm start whose distance to the clipped target is no worse than a fresh
/// start's bound is used as-is; otherwise the oracle's feasible point is used,
/// so the proven iteration cap always applies. Exceeding twice that cap is an
/// internal error, never a silent truncation.
FwProjectionOutput fw_infeasible_projection(const Vector& y, double eps,
                                            const ApproxOracle& oracle_x,
                                            const Vector* warm_x = nullptr,
                                            const Vector* warm_s = nullptr);

/// Hard per-call iteration bound for the projection at slack eps:
/// ceil(1 + 8 (1 + alpha^2) (alpha + 2)^2 R^4 / eps^2).
long long fw_iteration_bound(double alpha, double radius, double eps);

struct OgdwofOutput {
  Vector xbar;  // average of the x iterates (in the (alpha+2)R ball)
  Vector sbar;  // average of the feasible companions, sbar <= xbar
  long long rounds = 0;
  long long fw_iterations = 0;  // total extended oracle calls
};

/// Projection-free online gradient descent over alpha K: each round pulls the
/// cost c_t = next_cost(t, x_t), takes the unconstrained step x_t - mu c_t,
/// and re-enters via the infeasible projection at slack xi (warm-started from
/// the previous iterate pair).
OgdwofOutput ogdwof_run(const std::function<Vector(long long, const Vector&)>& next_cost,
                        long long rounds, double mu, double xi,
                        const ApproxOracle& oracle_x);

/// Both sides oracle-only: the x side runs projection-free OGD (mu, xi)
/// against costs A y_t, where y_t comes from the maximizing extended oracle
/// on the y side. Guarantees match aispoy with the projection-free regret.
SaddleOutput aispoyx(const Matrix& a, const ApproxOracle& oracle_x,
                     const ApproxOracle& oracle_y, long long rounds, double mu, double xi);

}  // namespace blackwell
