#pragma once

#include <memory>
#include <vector>

#include "blackwell/approachability.hpp"

namespace blackwell {

/// Two-objective weighted vertex cover as a repeated game. The player picks a
/// cover (or a point of the cover hull), the adversary picks vertex weights in
/// [0, weight_bound]^V, and the loss splits the paid weight across the two
/// sides of a vertex partition:
///   loss_1(x, y) = sum over side one of x_v y_v,
///   loss_2(x, y) = sum over side two of x_v y_v.
struct VertexCoverGame {
  BlackwellInstance instance;
  Graph graph;
  std::vector<int> side_one, side_two;
  double weight_bound = 1.0;
  double default_target_cost = 0.0;  // unit-weight cost of the 2-approx cover
  bool mixture = false;              // true when X is the simplex over covers
  std::vector<Vector> covers;        // enumerated covers (mixture order)
};

/// target == nullptr selects the default box [0, c*]^2, c* the unit-weight
/// cost of the cover the 2-approximation picks. The partition must split the
/// vertex set exactly; either side may not be empty.
VertexCoverGame build_vertex_cover_game(const Graph& g, std::vector<int> side_one,
                                        std::vector<int> side_two, double weight_bound,
                                        std::shared_ptr<const ConvexSetHandle> target = nullptr);

/// Same game over mixed cover weights: pure actions are the enumerated covers,
/// X is the probability simplex over them, and the payoff matrices fold the
/// cover indicators in. Exact-projection friendly.
VertexCoverGame build_vertex_cover_game_mixture(
    const Graph& g, std::vector<int> side_one, std::vector<int> side_two, double weight_bound,
    std::shared_ptr<const ConvexSetHandle> target = nullptr);

/// The minimizing alpha = 2 oracle for the hull representation.
ApproxOracle make_cover_oracle(const VertexCoverGame& game);

/// Exact value of min over the cover hull of max(side-one mass, side-two
/// mass) at unit weights: the smallest c for which the box [0, c]^2 scaled by
/// the weight bound remains an approachable target. Searched over vertices
/// and vertex pairs, which is exhaustive for a max of two linear functions.
double balanced_cover_cost(const Graph& g, const std::vector<int>& side_one,
                           const std::vector<int>& side_two);

/// Worst-case instance showing that unmodified targets are out of reach with
/// a ratio-alpha oracle: X is the segment from (1,1) to (alpha,1), Y = {1},
/// loss(x, y) = x y, S = {(1,1)}. The bundled oracle always answers
/// (alpha, 1), which is a valid alpha-approximation, and forces the average
/// loss to (alpha, 1): distance alpha - 1 from S, distance 0 from the
/// downward closure of alpha S.
struct NegativeInstance {
  BlackwellInstance instance;
  double alpha_x = 1.0;
};

NegativeInstance build_negative_instance(double alpha_x);

/// The adversarial constant oracle of the negative instance.
ApproxOracle make_negative_oracle(const NegativeInstance& ni);

}  // namespace blackwell
