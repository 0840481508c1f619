#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "blackwell/linalg.hpp"

namespace blackwell {

enum class SetKind { Box, Simplex, VPolytope, BallPos, Ball, Singleton };

struct SupportResult {
  double value = 0.0;  // max over the set of <w, .>
  Vector point;        // a maximizer inside the set (deterministic tie rule)
};

/// Immutable handle to a compact convex set with closed-form (or solver-backed)
/// support, projection, and membership. Realizations:
///   Box        [lo, hi] coordinatewise
///   Simplex    probability simplex {x >= 0, sum x = 1}
///   VPolytope  convex hull of explicit vertices
///   BallPos    {x >= 0, ||x|| <= R}
///   Ball       {||x|| <= R} (sign-unrestricted; internal OCO domain)
///   Singleton  {p}
class ConvexSetHandle {
 public:
  static ConvexSetHandle box(Vector lo, Vector hi);
  static ConvexSetHandle simplex(int dim);
  static ConvexSetHandle vpolytope(std::vector<Vector> vertices);
  static ConvexSetHandle ball_pos(int dim, double radius);
  static ConvexSetHandle ball(int dim, double radius);
  static ConvexSetHandle singleton(Vector point);

  SetKind kind() const { return kind_; }
  int dim() const { return dim_; }
  /// True when the set lies inside the nonnegative orthant.
  bool nonneg() const { return nonneg_; }
  /// Exact max Euclidean norm over the set.
  double radius() const { return radius_; }
  /// Exact max pairwise Euclidean distance.
  double diameter() const { return diameter_; }

  SupportResult support(const Vector& w) const;
  Vector project(const Vector& p) const;
  bool contains(const Vector& p, double tol = 1e-9) const;

  /// Vertex enumeration: available for polytopal kinds of moderate dimension.
  bool has_vertices() const { return !vertices_.empty(); }
  const std::vector<Vector>& vertices() const;

 private:
  ConvexSetHandle() = default;

  SetKind kind_ = SetKind::Singleton;
  int dim_ = 0;
  bool nonneg_ = false;
  double radius_ = 0.0;
  double diameter_ = 0.0;
  Vector lo_, hi_;                 // Box
  Vector point_;                   // Singleton
  double ball_radius_ = 0.0;       // BallPos / Ball
  std::vector<Vector> vertices_;   // VPolytope / enumerable kinds
  // Cached solver constants for VPolytope projection.
  Matrix vmat_;                    // dim x k, columns = vertices
  double lipschitz_ = 0.0;         // largest eigenvalue of vmat^T vmat
};

/// View of scale * (base - B+(shift_radius)): the base set, optionally eroded
/// downward by a nonnegative-orthant ball and then scaled. scale > 0,
/// shift_radius >= 0. shift_radius == 0 gives plain scaling.
struct ShiftedScaledSetView {
  std::shared_ptr<const ConvexSetHandle> base;
  double scale = 1.0;
  double shift_radius = 0.0;

  int dim() const { return base->dim(); }
  /// Upper bound on max norm over the view.
  double radius() const { return scale * (base->radius() + shift_radius); }
};

ShiftedScaledSetView make_view(std::shared_ptr<const ConvexSetHandle> base,
                               double scale, double shift_radius);
ShiftedScaledSetView make_view(ConvexSetHandle base, double scale = 1.0,
                               double shift_radius = 0.0);

SupportResult support_point(const ConvexSetHandle& set, const Vector& w);
Vector euclidean_project(const ConvexSetHandle& set, const Vector& p);

/// ||p - project(p)||, with a dual self-consistency check
/// (<w*, p> - h(w*) must match within 1e-7 when the distance exceeds 1e-9).
double distance_to_set(const Vector& p, const ConvexSetHandle& set);

/// Support of the view: value = scale * (h_base(w) + shift_radius * ||w^-||),
/// attained at scale * (argmax_base + shift_radius * unit(w^-)).
SupportResult support_shifted_scaled(const ShiftedScaledSetView& view, const Vector& w);

struct ViewDistanceResult {
  double distance = 0.0;
  Vector point;  // nearest point of the view
};

/// Euclidean distance from p to the view scale*(base - B+(shift)). Exact
/// closed path when shift == 0; otherwise alternating exact minimization over
/// the (base point, shift point) blocks with deterministic restarts.
ViewDistanceResult distance_to_view(const Vector& p, const ShiftedScaledSetView& view,
                                    const std::optional<Vector>& warm_base_point = {});

struct DownwardDistanceResult {
  double distance = 0.0;
  Vector base_point;     // s* in base coordinates
  Vector closure_point;  // nearest point of the downward closure
};

/// Distance from p to the downward closure (view - nonneg orthant). The
/// orthant absorbs the view's B+ shift, so this equals
/// min_{s in base} ||(p - scale*s)^+|| regardless of shift_radius.
/// Solved by projected gradient (500 steps, step 1/(2*Lipschitz), five
/// deterministic support-point restarts plus the optional warm start);
/// box/singleton bases use the exact coordinatewise solution.
DownwardDistanceResult distance_to_downward_closure(
    const Vector& p, const ShiftedScaledSetView& view,
    const std::optional<Vector>& warm_base_point = {});

}  // namespace blackwell
