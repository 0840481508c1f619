#include "blackwell/oco.hpp"

#include <cmath>

namespace blackwell {

OcoState make_ogd_state(std::shared_ptr<const ConvexSetHandle> domain, double eta) {
  if (!domain) throw InputError("ogd: null domain");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw InputError("ogd: step size must be >= 0");
  OcoState s;
  Vector e1 = Vector::Zero(domain->dim());
  e1[0] = 1.0;
  s.x = domain->support(e1).point;
  s.eta = eta;
  s.domain = std::move(domain);
  s.t = 0;
  return s;
}

OcoState ogd_step(const OcoState& state, const Vector& subgrad) {
  if (!state.domain) throw InputError("ogd_step: uninitialized state");
  if (subgrad.size() != state.x.size())
    throw DimensionError("ogd_step: subgradient dimension mismatch");
  if (!all_finite(subgrad)) throw InputError("ogd_step: non-finite subgradient");
  OcoState next = state;
  next.x = state.domain->project(state.x - state.eta * subgrad);
  next.t = state.t + 1;
  return next;
}

double ogd_regret_bound(double grad_bound, double diameter, long long horizon) {
  if (grad_bound < 0.0 || diameter < 0.0 || horizon < 0)
    throw InputError("ogd_regret_bound: arguments must be nonnegative");
  return 1.5 * grad_bound * diameter * std::sqrt(static_cast<double>(horizon));
}

OgdRun run_ogd(std::shared_ptr<const ConvexSetHandle> domain,
               const std::vector<Vector>& subgradients, double eta) {
  OcoState state = make_ogd_state(std::move(domain), eta);
  OgdRun run;
  run.iterates.reserve(subgradients.size());
  for (const auto& g : subgradients) {
    run.iterates.push_back(state.x);
    run.ledger.record(g.dot(state.x), g.norm());
    state = ogd_step(state, g);
  }
  return run;
}

}  // namespace blackwell
