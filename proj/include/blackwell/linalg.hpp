#pragma once

#include <Eigen/Dense>
#include <vector>

#include "blackwell/errors.hpp"

namespace blackwell {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

bool all_finite(const Vector& v);
bool all_finite(const Matrix& m);

/// Entrywise max(v, 0).
Vector positive_part(const Vector& v);

/// Entrywise min(v, 0): keeps the negative entries, zeroes the rest.
/// v == positive_part(v) + negative_part(v).
Vector negative_part(const Vector& v);

/// v / ||v||, or the zero vector when v == 0.
Vector unit_or_zero(const Vector& v);

/// Vector-valued bilinear payoff: component i of loss(x, y) is x^T mats[i] y.
/// All matrices share one shape (n x m): n is the x-side dimension, m the
/// y-side dimension, d = mats.size() the payoff dimension.
struct BilinearLoss {
  std::vector<Matrix> mats;
  double norm_bound = 0.0;  // certified upper bound on the operator norm

  int d() const { return static_cast<int>(mats.size()); }
  int n() const { return static_cast<int>(mats.front().rows()); }
  int m() const { return static_cast<int>(mats.front().cols()); }
};

/// Validates shapes/finiteness and precomputes the norm bound
/// sqrt(sum_i ||mats[i]||_F^2), which dominates sup_{||u||<=1} ||sum_i u_i mats[i]||.
BilinearLoss make_bilinear_loss(std::vector<Matrix> mats);

/// loss(x, y): component i equals x^T mats[i] y.
Vector eval_loss(const BilinearLoss& loss, const Vector& x, const Vector& y);

/// sum_i w(i) * mats[i]; satisfies <w, loss(x,y)> = x^T weighted_matrix(loss,w) y.
Matrix weighted_matrix(const BilinearLoss& loss, const Vector& w);

/// Certified upper bound on max_{||u||<=1} ||sum_i u_i mats[i]||_2, hence on
/// ||loss(x,y)|| / (||x|| ||y||).
double loss_norm_bound(const BilinearLoss& loss);

}  // namespace blackwell
