#include "blackwell/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace blackwell {
namespace {

constexpr double kVertexEnumLimit = 16;  // max free box coordinates for 2^k corners

Vector clamp_box(const Vector& p, const Vector& lo, const Vector& hi) {
  return p.cwiseMax(lo).cwiseMin(hi);
}

// Euclidean projection onto the probability simplex (sort-based, exact).
Vector project_simplex(const Vector& p) {
  const int d = static_cast<int>(p.size());
  std::vector<double> u(p.data(), p.data() + d);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, tau = 0.0;
  int rho = 0;
  for (int j = 0; j < d; ++j) {
    cum += u[j];
    const double t = (1.0 - cum) / (j + 1);
    if (u[j] + t > 0.0) {
      rho = j + 1;
      tau = t;
    }
  }
  (void)rho;
  Vector x(d);
  for (int i = 0; i < d; ++i) x[i] = std::max(0.0, p[i] + tau);
  return x;
}

Vector project_ball_pos(const Vector& p, double radius) {
  Vector q = p.cwiseMax(0.0);
  const double n = q.norm();
  if (n <= radius || n == 0.0) return q;
  return q * (radius / n);
}

}  // namespace

ConvexSetHandle ConvexSetHandle::box(Vector lo, Vector hi) {
  if (lo.size() == 0 || lo.size() != hi.size())
    throw DimensionError("box: lo/hi must be nonempty and equally sized");
  if (!all_finite(lo) || !all_finite(hi)) throw InputError("box: non-finite bound");
  if (((hi - lo).array() < 0.0).any()) throw InputError("box: requires lo <= hi");
  ConvexSetHandle h;
  h.kind_ = SetKind::Box;
  h.dim_ = static_cast<int>(lo.size());
  h.nonneg_ = (lo.array() >= 0.0).all();
  h.radius_ = std::sqrt(lo.array().square().max(hi.array().square()).sum());
  h.diameter_ = (hi - lo).norm();
  h.lo_ = std::move(lo);
  h.hi_ = std::move(hi);
  std::vector<int> free_coords;
  for (int i = 0; i < h.dim_; ++i)
    if (h.hi_[i] > h.lo_[i]) free_coords.push_back(i);
  if (static_cast<double>(free_coords.size()) <= kVertexEnumLimit) {
    const size_t count = size_t{1} << free_coords.size();
    h.vertices_.reserve(count);
    for (size_t mask = 0; mask < count; ++mask) {
      Vector v = h.lo_;
      for (size_t j = 0; j < free_coords.size(); ++j)
        if (mask & (size_t{1} << j)) v[free_coords[j]] = h.hi_[free_coords[j]];
      h.vertices_.push_back(std::move(v));
    }
  }
  return h;
}

ConvexSetHandle ConvexSetHandle::simplex(int dim) {
  if (dim < 1) throw DimensionError("simplex: dimension must be positive");
  ConvexSetHandle h;
  h.kind_ = SetKind::Simplex;
  h.dim_ = dim;
  h.nonneg_ = true;
  h.radius_ = 1.0;
  h.diameter_ = dim == 1 ? 0.0 : std::sqrt(2.0);
  h.vertices_.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    Vector e = Vector::Zero(dim);
    e[i] = 1.0;
    h.vertices_.push_back(std::move(e));
  }
  return h;
}

ConvexSetHandle ConvexSetHandle::vpolytope(std::vector<Vector> vertices) {
  if (vertices.empty()) throw InputError("vpolytope: needs at least one vertex");
  const auto d = vertices.front().size();
  if (d == 0) throw DimensionError("vpolytope: zero-dimensional vertex");
  for (const auto& v : vertices) {
    if (v.size() != d) throw DimensionError("vpolytope: inconsistent vertex dimensions");
    if (!all_finite(v)) throw InputError("vpolytope: non-finite vertex");
  }
  ConvexSetHandle h;
  h.kind_ = SetKind::VPolytope;
  h.dim_ = static_cast<int>(d);
  h.vertices_ = std::move(vertices);
  h.nonneg_ = true;
  h.radius_ = 0.0;
  for (const auto& v : h.vertices_) {
    h.radius_ = std::max(h.radius_, v.norm());
    if ((v.array() < 0.0).any()) h.nonneg_ = false;
  }
  for (size_t i = 0; i < h.vertices_.size(); ++i)
    for (size_t j = i + 1; j < h.vertices_.size(); ++j)
      h.diameter_ = std::max(h.diameter_, (h.vertices_[i] - h.vertices_[j]).norm());
  const int k = static_cast<int>(h.vertices_.size());
  h.vmat_.resize(h.dim_, k);
  for (int j = 0; j < k; ++j) h.vmat_.col(j) = h.vertices_[j];
  const Matrix gram = h.vmat_.transpose() * h.vmat_;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  h.lipschitz_ = std::max(es.eigenvalues().maxCoeff(), 1e-12);
  return h;
}

ConvexSetHandle ConvexSetHandle::ball_pos(int dim, double radius) {
  if (dim < 1) throw DimensionError("ball_pos: dimension must be positive");
  if (!(radius >= 0.0) || !std::isfinite(radius))
    throw InputError("ball_pos: radius must be finite and nonnegative");
  ConvexSetHandle h;
  h.kind_ = SetKind::BallPos;
  h.dim_ = dim;
  h.nonneg_ = true;
  h.radius_ = radius;
  h.diameter_ = dim == 1 ? radius : std::sqrt(2.0) * radius;
  h.ball_radius_ = radius;
  return h;
}

ConvexSetHandle ConvexSetHandle::ball(int dim, double radius) {
  if (dim < 1) throw DimensionError("ball: dimension must be positive");
  if (!(radius >= 0.0) || !std::isfinite(radius))
    throw InputError("ball: radius must be finite and nonnegative");
  ConvexSetHandle h;
  h.kind_ = SetKind::Ball;
  h.dim_ = dim;
  h.nonneg_ = radius == 0.0;
  h.radius_ = radius;
  h.diameter_ = 2.0 * radius;
  h.ball_radius_ = radius;
  return h;
}

ConvexSetHandle ConvexSetHandle::singleton(Vector point) {
  if (point.size() == 0) throw DimensionError("singleton: empty point");
  if (!all_finite(point)) throw InputError("singleton: non-finite point");
  ConvexSetHandle h;
  h.kind_ = SetKind::Singleton;
  h.dim_ = static_cast<int>(point.size());
  h.nonneg_ = (point.array() >= 0.0).all();
  h.radius_ = point.norm();
  h.diameter_ = 0.0;
  h.vertices_.push_back(point);
  h.point_ = std::move(point);
  return h;
}

SupportResult ConvexSetHandle::support(const Vector& w) const {
  if (w.size() != dim_) throw DimensionError("support: direction dimension mismatch");
  SupportResult r;
  switch (kind_) {
    case SetKind::Box: {
      r.point = Vector(dim_);
      for (int i = 0; i < dim_; ++i) r.point[i] = w[i] > 0.0 ? hi_[i] : lo_[i];
      r.value = w.dot(r.point);
      return r;
    }
    case SetKind::Simplex:
    case SetKind::VPolytope:
    case SetKind::Singleton: {
      size_t best = 0;
      double bv = -std::numeric_limits<double>::infinity();
      for (size_t j = 0; j < vertices_.size(); ++j) {
        const double v = w.dot(vertices_[j]);
        if (v > bv) {
          bv = v;
          best = j;
        }
      }
      r.value = bv;
      r.point = vertices_[best];
      return r;
    }
    case SetKind::BallPos: {
      const Vector wp = w.cwiseMax(0.0);
      const double n = wp.norm();
      if (n == 0.0) {
        r.value = 0.0;
        r.point = Vector::Zero(dim_);
      } else {
        r.point = wp * (ball_radius_ / n);
        r.value = ball_radius_ * n;
      }
      return r;
    }
    case SetKind::Ball: {
      const double n = w.norm();
      if (n == 0.0) {
        r.value = 0.0;
        r.point = Vector::Zero(dim_);
      } else {
        r.point = w * (ball_radius_ / n);
        r.value = ball_radius_ * n;
      }
      return r;
    }
  }
  throw InternalError("support: unhandled set kind");
}

Vector ConvexSetHandle::project(const Vector& p) const {
  if (p.size() != dim_) throw DimensionError("project: point dimension mismatch");
  switch (kind_) {
    case SetKind::Box:
      return clamp_box(p, lo_, hi_);
    case SetKind::Simplex:
      return project_simplex(p);
    case SetKind::Singleton:
      return point_;
    case SetKind::BallPos:
      return project_ball_pos(p, ball_radius_);
    case SetKind::Ball: {
      const double n = p.norm();
      if (n <= ball_radius_) return p;
      if (n == 0.0) return Vector::Zero(dim_);
      return p * (ball_radius_ / n);
    }
    case SetKind::VPolytope:
      break;
  }
  // Min-norm point over the vertex hull: FISTA on the simplex of convex
  // weights with adaptive restart, then an active-face KKT polish that
  // typically lands the exact solution.
  const int k = static_cast<int>(vertices_.size());
  if (k == 1) return vertices_.front();
  const Matrix& v = vmat_;
  const double step = 1.0 / lipschitz_;
  const double f_scale = std::max({1.0, p.squaredNorm(), radius_ * radius_});
  const double tol_gap = 1e-14 * f_scale;

  auto objective = [&](const Vector& lam) { return 0.5 * (v * lam - p).squaredNorm(); };
  auto gradient = [&](const Vector& lam) { return Vector(v.transpose() * (v * lam - p)); };
  auto fw_gap = [&](const Vector& lam, const Vector& g) {
    return g.dot(lam) - g.minCoeff();
  };

  Vector lam = Vector::Constant(k, 1.0 / k);
  Vector z = lam;
  double theta = 1.0;
  double f_prev = objective(lam);
  Vector g = gradient(lam);
  const int max_iter = 20000;
  for (int it = 0; it < max_iter; ++it) {
    if (fw_gap(lam, g) <= tol_gap) break;
    const Vector g_z = gradient(z);
    const Vector lam_next = project_simplex(z - step * g_z);
    const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    const double f_next = objective(lam_next);
    if (f_next > f_prev) {  // adaptive restart: drop momentum
      z = lam;
      theta = 1.0;
      const Vector plain = project_simplex(lam - step * gradient(lam));
      const double f_plain = objective(plain);
      lam = plain;
      f_prev = f_plain;
    } else {
      z = lam_next + ((theta - 1.0) / theta_next) * (lam_next - lam);
      lam = lam_next;
      theta = theta_next;
      f_prev = f_next;
    }
    g = gradient(lam);
  }

  // Active-face polish: equality-constrained least squares on the support of
  // lam; accepted only when it stays feasible and does not increase the gap.
  for (int round = 0; round < 4; ++round) {
    std::vector<int> active;
    for (int j = 0; j < k; ++j)
      if (lam[j] > 1e-10) active.push_back(j);
    if (active.empty() || static_cast<int>(active.size()) == 0) break;
    const int a = static_cast<int>(active.size());
    Matrix va(dim_, a);
    for (int j = 0; j < a; ++j) va.col(j) = v.col(active[j]);
    Matrix kkt = Matrix::Zero(a + 1, a + 1);
    kkt.topLeftCorner(a, a) = va.transpose() * va;
    kkt.topLeftCorner(a, a).diagonal().array() += 1e-13 * lipschitz_;
    kkt.block(0, a, a, 1).setOnes();
    kkt.block(a, 0, 1, a).setOnes();
    Vector rhs(a + 1);
    rhs.head(a) = va.transpose() * p;
    rhs[a] = 1.0;
    const Vector sol = kkt.ldlt().solve(rhs);
    Vector mu = sol.head(a);
    if ((mu.array() < -1e-12).any()) break;
    mu = mu.cwiseMax(0.0);
    const double total = mu.sum();
    if (total <= 0.0) break;
    mu /= total;
    Vector cand = Vector::Zero(k);
    for (int j = 0; j < a; ++j) cand[active[j]] = mu[j];
    if (objective(cand) <= f_prev + 1e-15 * f_scale) {
      lam = cand;
      f_prev = objective(lam);
      g = gradient(lam);
      if (fw_gap(lam, g) <= tol_gap) break;
    } else {
      break;
    }
  }
  return v * lam;
}

bool ConvexSetHandle::contains(const Vector& p, double tol) const {
  if (p.size() != dim_) return false;
  if (!all_finite(p)) return false;
  switch (kind_) {
    case SetKind::Box:
      return ((p - lo_).array() >= -tol).all() && ((hi_ - p).array() >= -tol).all();
    case SetKind::Simplex:
      return (p.array() >= -tol).all() && std::abs(p.sum() - 1.0) <= tol;
    case SetKind::Singleton:
      return (p - point_).lpNorm<Eigen::Infinity>() <= tol;
    case SetKind::BallPos:
      return (p.array() >= -tol).all() && p.norm() <= ball_radius_ + tol;
    case SetKind::Ball:
      return p.norm() <= ball_radius_ + tol;
    case SetKind::VPolytope:
      return (p - project(p)).norm() <= tol;
  }
  return false;
}

const std::vector<Vector>& ConvexSetHandle::vertices() const {
  if (vertices_.empty())
    throw InputError("vertex enumeration unavailable for this set realization");
  return vertices_;
}

ShiftedScaledSetView make_view(std::shared_ptr<const ConvexSetHandle> base, double scale,
                               double shift_radius) {
  if (!base) throw InputError("view: null base set");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InputError("view: scale must be positive");
  if (!(shift_radius >= 0.0) || !std::isfinite(shift_radius))
    throw InputError("view: shift radius must be nonnegative");
  return ShiftedScaledSetView{std::move(base), scale, shift_radius};
}

ShiftedScaledSetView make_view(ConvexSetHandle base, double scale, double shift_radius) {
  return make_view(std::make_shared<const ConvexSetHandle>(std::move(base)), scale,
                   shift_radius);
}

SupportResult support_point(const ConvexSetHandle& set, const Vector& w) {
  return set.support(w);
}

Vector euclidean_project(const ConvexSetHandle& set, const Vector& p) {
  return set.project(p);
}

double distance_to_set(const Vector& p, const ConvexSetHandle& set) {
  const Vector proj = set.project(p);
  const double d = (p - proj).norm();
  if (d > 1e-9) {
    const Vector w = (p - proj) / d;
    const double dual = w.dot(p) - set.support(w).value;
    if (std::abs(dual - d) > 1e-7)
      throw InternalError("distance_to_set: dual certificate mismatch (projection inaccurate)");
  }
  return d;
}

SupportResult support_shifted_scaled(const ShiftedScaledSetView& view, const Vector& w) {
  const SupportResult base = view.base->support(w);
  const Vector wneg = negative_part(w);
  SupportResult r;
  r.value = view.scale * (base.value + view.shift_radius * wneg.norm());
  r.point = view.scale * (base.point + view.shift_radius * unit_or_zero(wneg));
  return r;
}

ViewDistanceResult distance_to_view(const Vector& p, const ShiftedScaledSetView& view,
                                    const std::optional<Vector>& warm_base_point) {
  if (p.size() != view.dim()) throw DimensionError("distance_to_view: dimension mismatch");
  const ConvexSetHandle& base = *view.base;
  const double sc = view.scale;
  if (view.shift_radius == 0.0) {
    const Vector s = base.project(p / sc);
    ViewDistanceResult r;
    r.point = sc * s;
    r.distance = (p - r.point).norm();
    return r;
  }
  const ConvexSetHandle shift_ball = ConvexSetHandle::ball_pos(view.dim(), view.shift_radius);
  const Vector q = p / sc;  // minimize ||q - (s - b)||^2 over s in base, b in B+
  auto run_from = [&](Vector s) {
    Vector b = shift_ball.project(s - q);
    double f_prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 3000; ++it) {
      s = base.project(q + b);
      b = shift_ball.project(s - q);
      const double f = (q - s + b).squaredNorm();
      if (f_prev - f <= 1e-16 * (1.0 + f)) {
        f_prev = f;
        break;
      }
      f_prev = f;
    }
    return std::make_pair(f_prev, std::make_pair(s, b));
  };

  std::vector<Vector> starts;
  if (warm_base_point && warm_base_point->size() == view.dim())
    starts.push_back(*warm_base_point);
  const int d = view.dim();
  std::vector<Vector> dirs;
  dirs.push_back(Vector::Ones(d));
  dirs.push_back(-Vector::Ones(d));
  Vector e1 = Vector::Zero(d);
  e1[0] = 1.0;
  dirs.push_back(e1);
  dirs.push_back(-e1);
  if (d >= 2) {
    Vector e2 = Vector::Zero(d);
    e2[1] = 1.0;
    dirs.push_back(e2);
  }
  for (const auto& w : dirs) starts.push_back(base.support(w).point);
  starts.push_back(base.project(q));

  double best_f = std::numeric_limits<double>::infinity();
  Vector best_s, best_b;
  for (const auto& s0 : starts) {
    auto [f, sb] = run_from(s0);
    if (f < best_f) {
      best_f = f;
      best_s = sb.first;
      best_b = sb.second;
    }
  }
  ViewDistanceResult r;
  r.point = sc * (best_s - best_b);
  r.distance = (p - r.point).norm();
  return r;
}

DownwardDistanceResult distance_to_downward_closure(
    const Vector& p, const ShiftedScaledSetView& view,
    const std::optional<Vector>& warm_base_point) {
  if (p.size() != view.dim()) throw DimensionError("downward distance: dimension mismatch");
  const ConvexSetHandle& base = *view.base;
  const double sc = view.scale;
  const int d = view.dim();
  DownwardDistanceResult out;

  auto finish = [&](const Vector& s) {
    out.base_point = s;
    const Vector residual = positive_part(p - sc * s);
    out.distance = residual.norm();
    out.closure_point = p - residual;
  };

  // The downward closure absorbs the B+ shift, and box/singleton bases admit
  // an exact coordinatewise minimizer.
  if (base.kind() == SetKind::Singleton) {
    finish(base.project(p));
    return out;
  }
  if (base.kind() == SetKind::Box) {
    finish(base.project(p / sc));
    return out;
  }

  auto objective = [&](const Vector& s) { return positive_part(p - sc * s).squaredNorm(); };
  auto gradient = [&](const Vector& s) { return Vector(-2.0 * sc * positive_part(p - sc * s)); };
  const double step = 1.0 / (4.0 * sc * sc);  // 1/(2L), L = 2*scale^2

  std::vector<Vector> starts;
  if (warm_base_point && warm_base_point->size() == d) starts.push_back(*warm_base_point);
  std::vector<Vector> dirs;
  dirs.push_back(Vector::Ones(d));
  dirs.push_back(-Vector::Ones(d));
  Vector e1 = Vector::Zero(d);
  e1[0] = 1.0;
  dirs.push_back(e1);
  dirs.push_back(-e1);
  if (d >= 2) {
    Vector e2 = Vector::Zero(d);
    e2[1] = 1.0;
    dirs.push_back(e2);
  } else {
    dirs.push_back(e1);
  }
  for (const auto& w : dirs) starts.push_back(base.support(w).point);

  double best_f = std::numeric_limits<double>::infinity();
  Vector best_s;
  for (const auto& s0 : starts) {
    Vector s = s0;
    for (int it = 0; it < 500; ++it) {
      const Vector s_next = base.project(s - step * gradient(s));
      const double moved = (s_next - s).norm();
      s = s_next;
      if (moved <= 1e-13 * (1.0 + p.norm())) break;
    }
    const double f = objective(s);
    if (f < best_f) {
      best_f = f;
      best_s = s;
    }
  }

  const double conv_tol = 1e-7 * (1.0 + p.norm() + sc * base.radius());
  const Vector mapped = base.project(best_s - step * gradient(best_s));
  if ((mapped - best_s).norm() > conv_tol)
    throw ConvergenceError("downward-closure distance solver did not converge",
                           std::sqrt(best_f));
  finish(best_s);
  return out;
}

}  // namespace blackwell
