#include "blackwell/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace blackwell {
namespace {

void check_partition(const Graph& g, const std::vector<int>& side_one,
                     const std::vector<int>& side_two) {
  if (g.num_vertices <= 0) throw InputError("vertex cover game: empty graph");
  // An empty side is fine; it just zeroes out that loss coordinate.
  std::vector<int> seen(g.num_vertices, 0);
  for (int v : side_one) {
    if (v < 0 || v >= g.num_vertices) throw InputError("vertex cover game: side out of range");
    ++seen[v];
  }
  for (int v : side_two) {
    if (v < 0 || v >= g.num_vertices) throw InputError("vertex cover game: side out of range");
    ++seen[v];
  }
  for (int v = 0; v < g.num_vertices; ++v)
    if (seen[v] != 1)
      throw InputError("vertex cover game: sides must partition the vertex set exactly");
}

Vector side_indicator(int n, const std::vector<int>& side) {
  Vector ind = Vector::Zero(n);
  for (int v : side) ind[v] = 1.0;
  return ind;
}

std::shared_ptr<const ConvexSetHandle> default_target(const Graph& g, double* cost_out) {
  const Vector cover = vertex_cover_oracle(g, Vector::Ones(g.num_vertices));
  const double cost = cover.sum();
  if (cost_out) *cost_out = cost;
  return std::make_shared<const ConvexSetHandle>(
      ConvexSetHandle::box(Vector::Zero(2), Vector::Constant(2, cost)));
}

}  // namespace

VertexCoverGame build_vertex_cover_game(const Graph& g, std::vector<int> side_one,
                                        std::vector<int> side_two, double weight_bound,
                                        std::shared_ptr<const ConvexSetHandle> target) {
  check_partition(g, side_one, side_two);
  if (!(weight_bound > 0.0) || !std::isfinite(weight_bound))
    throw InputError("vertex cover game: weight bound must be positive");
  const int n = g.num_vertices;

  VertexCoverGame game;
  game.graph = g;
  game.side_one = std::move(side_one);
  game.side_two = std::move(side_two);
  game.weight_bound = weight_bound;
  game.covers = enumerate_vertex_covers(g);

  std::vector<Matrix> mats;
  mats.push_back(Matrix(side_indicator(n, game.side_one).asDiagonal()));
  mats.push_back(Matrix(side_indicator(n, game.side_two).asDiagonal()));

  auto x_set = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::vpolytope(game.covers));
  auto y_set = std::make_shared<const ConvexSetHandle>(
      ConvexSetHandle::box(Vector::Zero(n), Vector::Constant(n, weight_bound)));
  auto s_set = target ? std::move(target) : default_target(g, &game.default_target_cost);
  if (!game.default_target_cost)
    game.default_target_cost = vertex_cover_oracle(g, Vector::Ones(n)).sum();

  game.instance =
      make_instance(std::move(x_set), std::move(y_set), std::move(s_set),
                    make_bilinear_loss(std::move(mats)));
  return game;
}

VertexCoverGame build_vertex_cover_game_mixture(
    const Graph& g, std::vector<int> side_one, std::vector<int> side_two, double weight_bound,
    std::shared_ptr<const ConvexSetHandle> target) {
  check_partition(g, side_one, side_two);
  if (!(weight_bound > 0.0) || !std::isfinite(weight_bound))
    throw InputError("vertex cover game: weight bound must be positive");
  const int n = g.num_vertices;

  VertexCoverGame game;
  game.graph = g;
  game.side_one = std::move(side_one);
  game.side_two = std::move(side_two);
  game.weight_bound = weight_bound;
  game.mixture = true;
  game.covers = enumerate_vertex_covers(g);
  const int k = static_cast<int>(game.covers.size());

  Matrix cover_rows(k, n);
  for (int j = 0; j < k; ++j) cover_rows.row(j) = game.covers[j].transpose();
  std::vector<Matrix> mats;
  mats.push_back(cover_rows * Matrix(side_indicator(n, game.side_one).asDiagonal()));
  mats.push_back(cover_rows * Matrix(side_indicator(n, game.side_two).asDiagonal()));

  auto x_set = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::simplex(k));
  auto y_set = std::make_shared<const ConvexSetHandle>(
      ConvexSetHandle::box(Vector::Zero(n), Vector::Constant(n, weight_bound)));
  auto s_set = target ? std::move(target) : default_target(g, &game.default_target_cost);
  if (!game.default_target_cost)
    game.default_target_cost = vertex_cover_oracle(g, Vector::Ones(n)).sum();

  game.instance =
      make_instance(std::move(x_set), std::move(y_set), std::move(s_set),
                    make_bilinear_loss(std::move(mats)));
  return game;
}

ApproxOracle make_cover_oracle(const VertexCoverGame& game) {
  if (game.mixture)
    throw InputError("cover oracle: the mixture representation is exact-projection only");
  return vertex_cover_approx_oracle(game.graph, game.instance.x_set);
}

double balanced_cover_cost(const Graph& g, const std::vector<int>& side_one,
                           const std::vector<int>& side_two) {
  check_partition(g, side_one, side_two);
  const Vector i1 = side_indicator(g.num_vertices, side_one);
  const Vector i2 = side_indicator(g.num_vertices, side_two);
  const auto covers = enumerate_vertex_covers(g);
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> mass;
  mass.reserve(covers.size());
  for (const auto& c : covers) {
    const double m1 = i1.dot(c), m2 = i2.dot(c);
    mass.emplace_back(m1, m2);
    best = std::min(best, std::max(m1, m2));
  }
  // The minimum of a max of two linear functions over a hull sits at a vertex
  // or on the m1 == m2 crossing of a segment between two vertices.
  for (size_t i = 0; i < mass.size(); ++i)
    for (size_t j = i + 1; j < mass.size(); ++j) {
      const auto [a1, a2] = mass[i];
      const auto [b1, b2] = mass[j];
      const double denom = (a1 - a2) - (b1 - b2);
      if (denom == 0.0) continue;
      const double lam = (a1 - a2) / denom;  // blend weight on vertex j
      if (lam <= 0.0 || lam >= 1.0) continue;
      const double m1 = (1.0 - lam) * a1 + lam * b1;
      const double m2 = (1.0 - lam) * a2 + lam * b2;
      best = std::min(best, std::max(m1, m2));
    }
  return best;
}

NegativeInstance build_negative_instance(double alpha_x) {
  if (!(alpha_x > 1.0) || !std::isfinite(alpha_x))
    throw InputError("negative instance: alpha_x must exceed 1");
  std::vector<Vector> xverts;
  xverts.push_back((Vector(2) << 1.0, 1.0).finished());
  xverts.push_back((Vector(2) << alpha_x, 1.0).finished());
  auto x_set = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::vpolytope(xverts));
  auto y_set = std::make_shared<const ConvexSetHandle>(
      ConvexSetHandle::singleton(Vector::Ones(1)));
  auto s_set = std::make_shared<const ConvexSetHandle>(
      ConvexSetHandle::singleton(Vector::Ones(2)));
  std::vector<Matrix> mats;
  mats.push_back((Matrix(2, 1) << 1.0, 0.0).finished());
  mats.push_back((Matrix(2, 1) << 0.0, 1.0).finished());
  NegativeInstance ni;
  ni.alpha_x = alpha_x;
  ni.instance = make_instance(std::move(x_set), std::move(y_set), std::move(s_set),
                              make_bilinear_loss(std::move(mats)));
  return ni;
}

ApproxOracle make_negative_oracle(const NegativeInstance& ni) {
  const double alpha = ni.alpha_x;
  Vector fixed(2);
  fixed << alpha, 1.0;
  auto impl = [fixed](const Vector&) { return fixed; };
  return ApproxOracle(ni.instance.x_set, alpha, OracleMode::Minimizing, std::move(impl),
                      "stubborn", true);
}

}  // namespace blackwell
