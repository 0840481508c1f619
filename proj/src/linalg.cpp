#include "blackwell/linalg.hpp"

#include <cmath>

namespace blackwell {

bool all_finite(const Vector& v) { return v.allFinite(); }
bool all_finite(const Matrix& m) { return m.allFinite(); }

Vector positive_part(const Vector& v) { return v.cwiseMax(0.0); }

Vector negative_part(const Vector& v) { return v.cwiseMin(0.0); }

Vector unit_or_zero(const Vector& v) {
  const double n = v.norm();
  if (n == 0.0) return Vector::Zero(v.size());
  return v / n;
}

BilinearLoss make_bilinear_loss(std::vector<Matrix> mats) {
  if (mats.empty()) throw DimensionError("bilinear loss needs at least one payoff matrix");
  const auto rows = mats.front().rows();
  const auto cols = mats.front().cols();
  if (rows == 0 || cols == 0) throw DimensionError("payoff matrices must be nonempty");
  double sq = 0.0;
  for (const auto& m : mats) {
    if (m.rows() != rows || m.cols() != cols)
      throw DimensionError("all payoff matrices must share one shape");
    if (!all_finite(m)) throw InputError("payoff matrix has non-finite entries");
    sq += m.squaredNorm();
  }
  BilinearLoss loss;
  loss.mats = std::move(mats);
  loss.norm_bound = std::sqrt(sq);
  return loss;
}

Vector eval_loss(const BilinearLoss& loss, const Vector& x, const Vector& y) {
  if (x.size() != loss.n() || y.size() != loss.m())
    throw DimensionError("eval_loss: x/y dimensions do not match the payoff matrices");
  Vector out(loss.d());
  for (int i = 0; i < loss.d(); ++i) out[i] = x.dot(loss.mats[i] * y);
  return out;
}

Matrix weighted_matrix(const BilinearLoss& loss, const Vector& w) {
  if (w.size() != loss.d())
    throw DimensionError("weighted_matrix: weight dimension must equal the payoff dimension");
  Matrix a = Matrix::Zero(loss.n(), loss.m());
  for (int i = 0; i < loss.d(); ++i) a += w[i] * loss.mats[i];
  return a;
}

double loss_norm_bound(const BilinearLoss& loss) { return loss.norm_bound; }

}  // namespace blackwell
