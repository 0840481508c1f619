#include "blackwell/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace blackwell {

ApproxOracle::ApproxOracle(std::shared_ptr<const ConvexSetHandle> set, double alpha,
                           OracleMode mode, std::function<Vector(const Vector&)> impl,
                           std::string name, bool trusted_membership)
    : set_(std::move(set)),
      alpha_(alpha),
      mode_(mode),
      impl_(std::move(impl)),
      name_(std::move(name)),
      trusted_membership_(trusted_membership),
      calls_(std::make_shared<long long>(0)) {
  if (!set_) throw InputError("oracle: null set");
  if (!set_->nonneg())
    throw InputError("oracle: the served set must lie in the nonnegative orthant");
  if (!std::isfinite(alpha_) || alpha_ <= 0.0) throw InputError("oracle: alpha must be positive");
  if (mode_ == OracleMode::Minimizing && alpha_ < 1.0)
    throw InputError("oracle: minimizing mode requires alpha >= 1");
  if (mode_ == OracleMode::Maximizing && alpha_ > 1.0)
    throw InputError("oracle: maximizing mode requires alpha <= 1");
  if (!impl_) throw InputError("oracle: null implementation");
}

Vector ApproxOracle::approx_call(const Vector& cost) const {
  if (cost.size() != set_->dim()) throw DimensionError("oracle: cost dimension mismatch");
  if (!all_finite(cost)) throw InputError("oracle: non-finite cost");
  if ((cost.array() < 0.0).any())
    throw ContractViolationError("oracle '" + name_ +
                                 "': cost vector has a negative coordinate");
  ++(*calls_);
  Vector out = impl_(cost);
  if (out.size() != set_->dim())
    throw ContractViolationError("oracle '" + name_ + "': returned point has wrong dimension");
  if (!trusted_membership_ && !set_->contains(out, 1e-7))
    throw ContractViolationError("oracle '" + name_ + "': returned point leaves the set");
  return out;
}

ExtendedOracleOutput ApproxOracle::extended_call(const Vector& cost) const {
  if (cost.size() != set_->dim()) throw DimensionError("oracle: cost dimension mismatch");
  const Vector cp = positive_part(cost);
  const Vector cn = negative_part(cost);
  ExtendedOracleOutput out;
  if (mode_ == OracleMode::Minimizing) {
    out.s = approx_call(cp);
    out.v = out.s - alpha_ * radius() * unit_or_zero(cn);
  } else {
    out.s = approx_call(-cn);
    out.v = out.s - radius() * unit_or_zero(cp);
  }
  return out;
}

const Vector& ApproxOracle::feasible_point() const {
  if (!feasible_) {
    Vector p = impl_(Vector::Zero(set_->dim()));
    if (p.size() != set_->dim() || !set_->contains(p, 1e-7))
      throw ContractViolationError("oracle '" + name_ + "': feasible point leaves the set");
    feasible_ = std::make_shared<Vector>(std::move(p));
  }
  return *feasible_;
}

ApproxOracle exact_oracle(std::shared_ptr<const ConvexSetHandle> set, OracleMode mode) {
  auto raw = set.get();
  std::function<Vector(const Vector&)> impl;
  if (mode == OracleMode::Minimizing)
    impl = [raw](const Vector& c) { return raw->support(-c).point; };
  else
    impl = [raw](const Vector& c) { return raw->support(c).point; };
  return ApproxOracle(std::move(set), 1.0, mode, std::move(impl), "exact", true);
}

ApproxOracle sloppy_vertex_oracle(std::shared_ptr<const ConvexSetHandle> set, double alpha) {
  if (!set || !set->has_vertices())
    throw InputError("sloppy oracle: needs a vertex-enumerable set");
  auto raw = set.get();
  auto impl = [raw, alpha](const Vector& c) {
    const auto& verts = raw->vertices();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : verts) best = std::min(best, c.dot(v));
    const double budget = alpha * best;
    size_t pick = 0;
    double pick_val = -std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < verts.size(); ++j) {
      const double val = c.dot(verts[j]);
      if (val <= budget && val > pick_val) {
        pick_val = val;
        pick = j;
      }
    }
    return verts[pick];
  };
  return ApproxOracle(std::move(set), alpha, OracleMode::Minimizing, std::move(impl), "sloppy",
                      true);
}

ApproxOracle scaled_midpoint_oracle(std::shared_ptr<const ConvexSetHandle> set, double alpha) {
  if (!set) throw InputError("scaled oracle: null set");
  auto raw = set.get();
  const Vector anchor = raw->project(Vector::Zero(raw->dim()));
  auto impl = [raw, alpha, anchor](const Vector& c) {
    return Vector(alpha * raw->support(c).point + (1.0 - alpha) * anchor);
  };
  return ApproxOracle(std::move(set), alpha, OracleMode::Maximizing, std::move(impl),
                      "scaled-midpoint", true);
}

// ---- vertex cover -----------------------------------------------------------

Graph make_graph(int num_vertices, std::vector<std::pair<int, int>> edges) {
  if (num_vertices < 1) throw InputError("graph: needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> clean;
  for (auto [u, v] : edges) {
    if (u == v) throw InputError("graph: self-loop");
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices)
      throw InputError("graph: edge endpoint out of range");
    if (u > v) std::swap(u, v);
    if (seen.insert({u, v}).second) clean.emplace_back(u, v);
  }
  if (clean.empty()) throw InputError("graph: needs at least one edge");
  Graph g;
  g.num_vertices = num_vertices;
  g.edges = std::move(clean);
  return g;
}

Graph parse_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  int max_id = -1;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int u, v;
    if (!(ls >> u)) continue;  // blank or comment-only line
    if (!(ls >> v)) throw InputError("edge list: line with a single endpoint");
    int extra;
    if (ls >> extra) throw InputError("edge list: more than two endpoints on a line");
    if (u < 0 || v < 0) throw InputError("edge list: negative vertex id");
    edges.emplace_back(u, v);
    max_id = std::max({max_id, u, v});
  }
  if (edges.empty()) throw InputError("edge list: no edges");
  return make_graph(max_id + 1, std::move(edges));
}

Vector vertex_cover_oracle(const Graph& g, const Vector& weights) {
  if (weights.size() != g.num_vertices)
    throw DimensionError("vertex cover oracle: weight dimension mismatch");
  if ((weights.array() < 0.0).any())
    throw ContractViolationError("vertex cover oracle: negative weight");
  Vector residual = weights;
  for (const auto& [u, v] : g.edges) {
    if (residual[u] > 0.0 && residual[v] > 0.0) {
      const double m = std::min(residual[u], residual[v]);
      residual[u] -= m;
      residual[v] -= m;
    }
  }
  Vector cover = Vector::Zero(g.num_vertices);
  for (int i = 0; i < g.num_vertices; ++i)
    if (residual[i] <= 0.0) cover[i] = 1.0;
  return cover;
}

std::vector<Vector> enumerate_vertex_covers(const Graph& g) {
  if (g.num_vertices > 16)
    throw InputError("vertex cover enumeration limited to 16 vertices");
  std::vector<Vector> covers;
  const size_t total = size_t{1} << g.num_vertices;
  for (size_t mask = 0; mask < total; ++mask) {
    bool ok = true;
    for (const auto& [u, v] : g.edges) {
      if (!(mask & (size_t{1} << u)) && !(mask & (size_t{1} << v))) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Vector ind = Vector::Zero(g.num_vertices);
    for (int i = 0; i < g.num_vertices; ++i)
      if (mask & (size_t{1} << i)) ind[i] = 1.0;
    covers.push_back(std::move(ind));
  }
  return covers;
}

std::shared_ptr<const ConvexSetHandle> make_cover_hull(const Graph& g) {
  return std::make_shared<const ConvexSetHandle>(
      ConvexSetHandle::vpolytope(enumerate_vertex_covers(g)));
}

ApproxOracle vertex_cover_approx_oracle(const Graph& g,
                                        std::shared_ptr<const ConvexSetHandle> cover_hull) {
  Graph copy = g;
  auto impl = [copy](const Vector& w) {
    Vector cover = vertex_cover_oracle(copy, w);
    for (const auto& [u, v] : copy.edges)
      if (cover[u] == 0.0 && cover[v] == 0.0)
        throw InternalError("vertex cover oracle produced a non-cover");
    return cover;
  };
  return ApproxOracle(std::move(cover_hull), 2.0, OracleMode::Minimizing, std::move(impl),
                      "vertex-cover", true);
}

ApproxOracle vertex_cover_approx_oracle(const Graph& g) {
  return vertex_cover_approx_oracle(g, make_cover_hull(g));
}

}  // namespace blackwell
