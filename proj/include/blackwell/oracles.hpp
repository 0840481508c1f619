#pragma once

#include <functional>
#include <istream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "blackwell/sets.hpp"

namespace blackwell {

/// A minimizing oracle with ratio alpha >= 1 returns a point whose value is at
/// most alpha times the true minimum of <., c> over the set; a maximizing
/// oracle with 0 < alpha <= 1 returns at least alpha times the true maximum.
/// Both only accept entrywise-nonnegative cost vectors and only serve sets
/// inside the nonnegative orthant.
enum class OracleMode { Minimizing, Maximizing };

struct ExtendedOracleOutput {
  Vector v;  // surrogate iterate (may leave the set)
  Vector s;  // feasible point backing v
};

class ApproxOracle {
 public:
  /// trusted_membership: set by built-in oracles whose outputs are feasible by
  /// construction (support points, convex blends, validated covers); skips the
  /// per-call membership check that would otherwise dominate tight loops.
  ApproxOracle(std::shared_ptr<const ConvexSetHandle> set, double alpha, OracleMode mode,
               std::function<Vector(const Vector&)> impl, std::string name = "oracle",
               bool trusted_membership = false);

  const ConvexSetHandle& set() const { return *set_; }
  std::shared_ptr<const ConvexSetHandle> set_ptr() const { return set_; }
  double alpha() const { return alpha_; }
  OracleMode mode() const { return mode_; }
  double radius() const { return set_->radius(); }
  const std::string& name() const { return name_; }

  /// One counted oracle call. Rejects any negative cost coordinate and any
  /// returned point that leaves the set.
  Vector approx_call(const Vector& cost) const;

  /// One counted oracle call serving an arbitrary-sign cost c = c+ + c-.
  /// Minimizing: v = O(c+) - alpha*R*unit(c-), s = O(c+), and s <= v.
  /// Maximizing: v = O(-c-) - R*unit(c+),      s = O(-c-), and v <= s.
  /// In both modes <v, c> <= min over the mode's surrogate set and
  /// ||v|| <= (alpha + 2) * R.
  ExtendedOracleOutput extended_call(const Vector& cost) const;

  /// A fixed feasible point (the oracle's answer at cost 0), computed once and
  /// never charged to the call counter.
  const Vector& feasible_point() const;

  long long calls() const { return *calls_; }
  void reset_calls() const { *calls_ = 0; }

 private:
  std::shared_ptr<const ConvexSetHandle> set_;
  double alpha_ = 1.0;
  OracleMode mode_ = OracleMode::Minimizing;
  std::function<Vector(const Vector&)> impl_;
  std::string name_;
  bool trusted_membership_ = false;
  std::shared_ptr<long long> calls_;
  mutable std::shared_ptr<Vector> feasible_;
};

/// alpha = 1 linear optimization through the set's own support machinery.
ApproxOracle exact_oracle(std::shared_ptr<const ConvexSetHandle> set, OracleMode mode);

/// Deliberately sloppy but valid minimizing oracle (alpha >= 1): over the
/// set's vertices, returns the worst vertex whose value still respects the
/// ratio. Exercises approximation slack in tests.
ApproxOracle sloppy_vertex_oracle(std::shared_ptr<const ConvexSetHandle> set, double alpha);

/// Valid maximizing oracle with exact ratio alpha in (0, 1]: blends the true
/// argmax with the set's minimum-norm point.
ApproxOracle scaled_midpoint_oracle(std::shared_ptr<const ConvexSetHandle> set, double alpha);

// ---- vertex cover -----------------------------------------------------------

struct Graph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

/// Validates and normalizes: vertices 0-based, no self-loops, duplicate edges
/// collapsed, at least one edge.
Graph make_graph(int num_vertices, std::vector<std::pair<int, int>> edges);

/// Reads "u v" per line; '#' starts a comment. Vertex ids are 0-based; the
/// vertex count is max id + 1.
Graph parse_edge_list(std::istream& in);

/// Local-ratio 2-approximation for minimum weighted vertex cover: repeatedly
/// pick an uncovered edge, subtract the smaller residual weight from both
/// endpoints, and output the vertices whose residual hits zero.
/// Returns the cover's indicator vector. Requires nonnegative weights.
Vector vertex_cover_oracle(const Graph& g, const Vector& weights);

/// All vertex covers (as indicator vectors) for graphs with at most 16
/// vertices, in deterministic order.
std::vector<Vector> enumerate_vertex_covers(const Graph& g);

/// Wraps vertex_cover_oracle as a minimizing alpha = 2 approximation oracle
/// whose set is the convex hull of all cover indicators.
ApproxOracle vertex_cover_approx_oracle(const Graph& g);
ApproxOracle vertex_cover_approx_oracle(const Graph& g,
                                        std::shared_ptr<const ConvexSetHandle> cover_hull);

/// Builds the convex hull handle of all vertex covers of g.
std::shared_ptr<const ConvexSetHandle> make_cover_hull(const Graph& g);

}  // namespace blackwell
