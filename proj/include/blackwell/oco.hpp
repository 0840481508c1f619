#pragma once

#include <memory>
#include <vector>

#include "blackwell/sets.hpp"

namespace blackwell {

/// Projected online gradient descent over a compact convex domain.
/// The first iterate is the domain's support point in direction e1
/// (deterministic); each step moves against the reported subgradient and
/// projects back.
struct OcoState {
  Vector x;
  double eta = 0.0;
  std::shared_ptr<const ConvexSetHandle> domain;
  long long t = 0;  // completed steps
};

OcoState make_ogd_state(std::shared_ptr<const ConvexSetHandle> domain, double eta);

/// x_{t+1} = project(x_t - eta * subgrad).
OcoState ogd_step(const OcoState& state, const Vector& subgrad);

/// Worst-case regret of OGD with eta = D/(G sqrt(T)): 1.5 * G * D * sqrt(T).
double ogd_regret_bound(double grad_bound, double diameter, long long horizon);

/// Running account of realized online losses, for regret measured against any
/// comparator the caller evaluates afterwards.
struct RegretLedger {
  double cumulative_loss = 0.0;
  double max_grad_norm = 0.0;
  long long steps = 0;

  void record(double loss, double grad_norm) {
    cumulative_loss += loss;
    if (grad_norm > max_grad_norm) max_grad_norm = grad_norm;
    ++steps;
  }
};

struct OgdRun {
  std::vector<Vector> iterates;  // x_1 .. x_T
  RegretLedger ledger;           // losses <g_t, x_t>
};

/// Runs OGD against a fixed sequence of linear losses <g_t, .>.
OgdRun run_ogd(std::shared_ptr<const ConvexSetHandle> domain,
               const std::vector<Vector>& subgradients, double eta);

}  // namespace blackwell
