#include "blackwell/saddle.hpp"

#include <cmath>

namespace blackwell {
namespace {

void check_matrix(const Matrix& a, int x_dim, int y_dim, const char* who) {
  if (a.rows() != x_dim || a.cols() != y_dim)
    throw DimensionError(std::string(who) + ": payoff matrix shape mismatch");
  if (!all_finite(a)) throw InputError(std::string(who) + ": non-finite payoff matrix");
}

}  // namespace

SaddleOutput aispox(const Matrix& a, const ApproxOracle& oracle_x,
                    std::shared_ptr<const ConvexSetHandle> y_domain, long long rounds,
                    double eta_y) {
  if (!y_domain) throw InputError("aispox: null y domain");
  if (rounds < 1) throw InputError("aispox: needs at least one round");
  if (oracle_x.mode() != OracleMode::Minimizing)
    throw ContractViolationError("aispox: requires a minimizing x oracle");
  check_matrix(a, oracle_x.set().dim(), y_domain->dim(), "aispox");

  const long long before_x = oracle_x.calls();
  OcoState y_state = make_ogd_state(std::move(y_domain), eta_y);
  Vector sum_x = Vector::Zero(a.rows());
  Vector sum_s = Vector::Zero(a.rows());
  for (long long i = 0; i < rounds; ++i) {
    const Vector& y = y_state.x;
    const ExtendedOracleOutput out = oracle_x.extended_call(a * y);
    sum_x += out.v;
    sum_s += out.s;
    // The y player faces loss -g(x_i, y); its subgradient is -A^T x_i.
    y_state = ogd_step(y_state, Vector(-(a.transpose() * out.v)));
  }
  SaddleOutput res;
  res.xbar = sum_x / static_cast<double>(rounds);
  res.sbar = sum_s / static_cast<double>(rounds);
  res.rounds = rounds;
  res.calls_x = oracle_x.calls() - before_x;
  res.calls_y = 0;
  return res;
}

SaddleOutput aispoy(const Matrix& a, const ApproxOracle& oracle_y,
                    std::shared_ptr<const ConvexSetHandle> x_domain, long long rounds,
                    double eta_x) {
  if (!x_domain) throw InputError("aispoy: null x domain");
  if (rounds < 1) throw InputError("aispoy: needs at least one round");
  if (oracle_y.mode() != OracleMode::Maximizing)
    throw ContractViolationError("aispoy: requires a maximizing y oracle");
  check_matrix(a, x_domain->dim(), oracle_y.set().dim(), "aispoy");

  const long long before_y = oracle_y.calls();
  OcoState x_state = make_ogd_state(std::move(x_domain), eta_x);
  Vector sum_x = Vector::Zero(a.rows());
  for (long long i = 0; i < rounds; ++i) {
    const Vector& x = x_state.x;
    sum_x += x;
    const ExtendedOracleOutput out = oracle_y.extended_call(Vector(-(a.transpose() * x)));
    // The x player faces loss g(x, y_i); its subgradient is A y_i.
    x_state = ogd_step(x_state, a * out.v);
  }
  SaddleOutput res;
  res.xbar = sum_x / static_cast<double>(rounds);
  res.sbar = res.xbar;  // the average of exact-set iterates is itself feasible
  res.rounds = rounds;
  res.calls_x = 0;
  res.calls_y = oracle_y.calls() - before_y;
  return res;
}

long long fw_iteration_bound(double alpha, double radius, double eps) {
  if (!(eps > 0.0)) throw InputError("fw_iteration_bound: eps must be positive");
  const double r2 = radius * radius;
  const double bound =
      1.0 + 8.0 * (1.0 + alpha * alpha) * (alpha + 2.0) * (alpha + 2.0) * r2 * r2 / (eps * eps);
  return static_cast<long long>(std::ceil(bound));
}

FwProjectionOutput fw_infeasible_projection(const Vector& y, double eps,
                                            const ApproxOracle& oracle_x,
                                            const Vector* warm_x, const Vector* warm_s) {
  if (oracle_x.mode() != OracleMode::Minimizing)
    throw ContractViolationError("fw projection: requires a minimizing oracle");
  if (y.size() != oracle_x.set().dim())
    throw DimensionError("fw projection: target dimension mismatch");
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw InputError("fw projection: eps must be positive");
  const double alpha = oracle_x.alpha();
  const double radius = oracle_x.radius();
  const double eps_max = 4.0 * (alpha + 2.0) * (alpha + 2.0) * radius * radius;
  if (eps > eps_max)
    throw InputError("fw projection: eps exceeds the admissible slack range");

  Vector target = y;
  const double yn = y.norm();
  const double reach = alpha * radius;
  if (yn > reach && yn > 0.0) target = y * (reach / yn);

  const double fresh_potential = 2.0 * (1.0 + alpha * alpha) * radius * radius;
  Vector x, s;
  if (warm_x && warm_s && warm_x->size() == y.size() && warm_s->size() == y.size() &&
      (*warm_x - target).squaredNorm() <= fresh_potential) {
    x = *warm_x;
    s = *warm_s;
  } else {
    x = oracle_x.feasible_point();
    s = x;
  }

  const long long cap = 2 * fw_iteration_bound(alpha, radius, eps);
  for (long long t = 1; t <= cap; ++t) {
    const ExtendedOracleOutput out = oracle_x.extended_call(x - target);
    const Vector dir = x - out.v;
    const double progress = (x - target).dot(dir);
    if (progress <= eps) return FwProjectionOutput{std::move(x), std::move(s), t};
    const double denom = dir.squaredNorm();
    const double lambda = std::min(1.0, progress / denom);
    x = (1.0 - lambda) * x + lambda * out.v;
    s = (1.0 - lambda) * s + lambda * out.s;
  }
  throw InternalError("fw projection: proven iteration bound exceeded");
}

OgdwofOutput ogdwof_run(const std::function<Vector(long long, const Vector&)>& next_cost,
                        long long rounds, double mu, double xi,
                        const ApproxOracle& oracle_x) {
  if (rounds < 1) throw InputError("ogdwof: needs at least one round");
  if (!(mu > 0.0) || !(xi > 0.0)) throw InputError("ogdwof: mu and xi must be positive");
  if (oracle_x.mode() != OracleMode::Minimizing)
    throw ContractViolationError("ogdwof: requires a minimizing oracle");

  const long long before = oracle_x.calls();
  Vector s = oracle_x.feasible_point();
  Vector x = oracle_x.alpha() * s;
  Vector sum_x = Vector::Zero(x.size());
  Vector sum_s = Vector::Zero(x.size());
  long long fw_total = 0;
  for (long long t = 1; t <= rounds; ++t) {
    const Vector c = next_cost(t, x);
    if (c.size() != x.size()) throw DimensionError("ogdwof: cost dimension mismatch");
    sum_x += x;
    sum_s += s;
    const Vector y_next = x - mu * c;
    FwProjectionOutput proj = fw_infeasible_projection(y_next, xi, oracle_x, &x, &s);
    fw_total += proj.iterations;
    x = std::move(proj.x);
    s = std::move(proj.s);
  }
  OgdwofOutput out;
  out.xbar = sum_x / static_cast<double>(rounds);
  out.sbar = sum_s / static_cast<double>(rounds);
  out.rounds = rounds;
  out.fw_iterations = oracle_x.calls() - before;
  if (out.fw_iterations != fw_total)
    throw InternalError("ogdwof: oracle call tally disagrees with projection iterations");
  return out;
}

SaddleOutput aispoyx(const Matrix& a, const ApproxOracle& oracle_x,
                     const ApproxOracle& oracle_y, long long rounds, double mu, double xi) {
  if (oracle_y.mode() != OracleMode::Maximizing)
    throw ContractViolationError("aispoyx: requires a maximizing y oracle");
  check_matrix(a, oracle_x.set().dim(), oracle_y.set().dim(), "aispoyx");

  const long long before_x = oracle_x.calls();
  const long long before_y = oracle_y.calls();
  auto next_cost = [&](long long, const Vector& x_t) {
    const ExtendedOracleOutput out = oracle_y.extended_call(Vector(-(a.transpose() * x_t)));
    return Vector(a * out.v);
  };
  const OgdwofOutput run = ogdwof_run(next_cost, rounds, mu, xi, oracle_x);
  SaddleOutput res;
  res.xbar = run.xbar;
  res.sbar = run.sbar;
  res.rounds = rounds;
  res.calls_x = oracle_x.calls() - before_x;
  res.calls_y = oracle_y.calls() - before_y;
  return res;
}

}  // namespace blackwell
