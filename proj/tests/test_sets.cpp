#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "blackwell/sets.hpp"

using namespace blackwell;

TEST_CASE("box support, projection, vertices") {
  Vector lo(2), hi(2);
  lo << 0.0, 0.0;
  hi << 1.0, 2.0;
  const ConvexSetHandle box = ConvexSetHandle::box(lo, hi);
  CHECK(box.nonneg());
  CHECK(box.radius() == doctest::Approx(std::sqrt(5.0)));

  Vector w(2);
  w << -1.0, 1.0;
  const SupportResult s = box.support(w);
  CHECK(s.value == doctest::Approx(2.0));
  CHECK(s.point[0] == 0.0);
  CHECK(s.point[1] == 2.0);

  Vector p(2);
  p << 2.0, -1.0;
  const Vector proj = box.project(p);
  CHECK(proj[0] == 1.0);
  CHECK(proj[1] == 0.0);

  CHECK(box.has_vertices());
  CHECK(box.vertices().size() == 4);
  CHECK(box.contains(proj));
  CHECK_FALSE(box.contains(p));
}

TEST_CASE("simplex support and exact projection") {
  const ConvexSetHandle simplex = ConvexSetHandle::simplex(3);
  Vector w(3);
  w << 1.0, 3.0, 2.0;
  const SupportResult s = simplex.support(w);
  CHECK(s.value == doctest::Approx(3.0));
  CHECK(s.point[1] == 1.0);

  Vector p(3);
  p << 0.5, 0.5, 2.0;
  const Vector proj = simplex.project(p);
  CHECK(proj[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(proj[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(proj[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(proj.sum() == doctest::Approx(1.0).epsilon(1e-12));

  // Projection optimality: <p - proj, v - proj> <= 0 for all vertices v.
  for (const Vector& v : simplex.vertices()) {
    CHECK((p - proj).dot(v - proj) <= 1e-10);
  }
}

TEST_CASE("nonnegative ball support and projection") {
  const ConvexSetHandle ball = ConvexSetHandle::ball_pos(2, 2.0);
  Vector w(2);
  w << 3.0, 4.0;
  const SupportResult s = ball.support(w);
  CHECK(s.value == doctest::Approx(10.0));
  CHECK(s.point[0] == doctest::Approx(1.2));
  CHECK(s.point[1] == doctest::Approx(1.6));

  Vector wneg(2);
  wneg << -1.0, -1.0;
  const SupportResult s2 = ball.support(wneg);
  CHECK(s2.value == doctest::Approx(0.0));
  CHECK(s2.point.norm() == doctest::Approx(0.0));

  Vector p(2);
  p << 3.0, -4.0;
  const Vector proj = ball.project(p);
  CHECK(proj[0] == doctest::Approx(2.0));
  CHECK(proj[1] == doctest::Approx(0.0));
}

TEST_CASE("centered ball support allows negative coordinates") {
  const ConvexSetHandle ball = ConvexSetHandle::ball(2, 1.0);
  Vector w(2);
  w << -1.0, 0.0;
  const SupportResult s = ball.support(w);
  CHECK(s.value == doctest::Approx(1.0));
  CHECK(s.point[0] == doctest::Approx(-1.0));
  Vector p(2);
  p << 3.0, 4.0;
  const Vector proj = ball.project(p);
  CHECK(proj[0] == doctest::Approx(0.6));
  CHECK(proj[1] == doctest::Approx(0.8));
}

TEST_CASE("polytope projection is exact on a triangle") {
  std::vector<Vector> verts;
  Vector a(2), b(2), c(2);
  a << 0.0, 0.0;
  b << 1.0, 0.0;
  c << 0.0, 1.0;
  verts = {a, b, c};
  const ConvexSetHandle tri = ConvexSetHandle::vpolytope(verts);

  Vector p(2);
  p << 1.0, 1.0;
  const Vector proj = tri.project(p);
  CHECK(proj[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(proj[1] == doctest::Approx(0.5).epsilon(1e-9));

  Vector q(2);
  q << -1.0, -1.0;
  CHECK(tri.project(q).norm() == doctest::Approx(0.0).epsilon(1e-9));

  Vector inside(2);
  inside << 0.2, 0.3;
  CHECK((tri.project(inside) - inside).norm() <= 1e-8);
}

TEST_CASE("polytope projection satisfies the variational inequality on random instances") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vector> verts;
    const int k = 4 + static_cast<int>(trial % 4);
    for (int i = 0; i < k; ++i) {
      Vector v(3);
      for (int j = 0; j < 3; ++j) v[j] = u(rng);
      verts.push_back(v);
    }
    const ConvexSetHandle poly = ConvexSetHandle::vpolytope(verts);
    Vector p(3);
    for (int j = 0; j < 3; ++j) p[j] = u(rng) * 2.0 - 1.0;
    const Vector proj = poly.project(p);
    for (const Vector& v : verts) {
      CHECK((p - proj).dot(v - proj) <= 1e-7 * (1.0 + p.norm()));
    }
  }
}

TEST_CASE("singleton behaves as a point") {
  Vector p(2);
  p << 1.0, 1.0;
  const ConvexSetHandle s = ConvexSetHandle::singleton(p);
  CHECK(s.diameter() == 0.0);
  Vector q(2);
  q << 5.0, -3.0;
  CHECK((s.project(q) - p).norm() == 0.0);
  Vector w(2);
  w << 2.0, -1.0;
  CHECK(s.support(w).value == doctest::Approx(1.0));
}

TEST_CASE("shifted scaled support matches the closed form") {
  Vector p(2);
  p << 1.0, 1.0;
  auto base = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::singleton(p));
  const ShiftedScaledSetView view = make_view(base, 2.0, 3.0);

  Vector w(2);
  w << -1.0, 0.0;
  const SupportResult s = support_shifted_scaled(view, w);
  // 2 * (<w,(1,1)> + 3*|w^-|) = 2 * (-1 + 3) = 4.
  CHECK(s.value == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(w.dot(s.point) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(s.point[0] == doctest::Approx(-4.0));
  CHECK(s.point[1] == doctest::Approx(2.0));
}

TEST_CASE("distance to a scaled set and its shifted variant") {
  Vector one(2);
  one << 1.0, 1.0;
  auto base = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::singleton(one));

  Vector p(2);
  p << 2.0, 2.0;
  const ViewDistanceResult plain = distance_to_view(p, make_view(base, 1.0, 0.0));
  CHECK(plain.distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  // Shift absorbs points dominated by the base: (0.5, 1) in {(1,1)} - B+(1).
  Vector q(2);
  q << 0.5, 1.0;
  const ViewDistanceResult shifted = distance_to_view(q, make_view(base, 1.0, 1.0));
  CHECK(shifted.distance == doctest::Approx(0.0).epsilon(1e-9));

  // Scaled box distance: [0,1]^2 scaled by 2 from (3,3) is sqrt(2).
  Vector lo = Vector::Zero(2), hi = Vector::Ones(2);
  auto box = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::box(lo, hi));
  Vector r(2);
  r << 3.0, 3.0;
  const ViewDistanceResult scaled = distance_to_view(r, make_view(box, 2.0, 0.0));
  CHECK(scaled.distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("downward-closure distance closed forms") {
  Vector one(2);
  one << 1.0, 1.0;
  auto base = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::singleton(one));
  const ShiftedScaledSetView view = make_view(base, 1.0, 0.0);

  Vector p(2);
  p << 2.0, 2.0;
  CHECK(distance_to_downward_closure(p, view).distance ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  Vector q(2);
  q << 2.0, 0.5;
  CHECK(distance_to_downward_closure(q, view).distance == doctest::Approx(1.0).epsilon(1e-12));

  Vector r(2);
  r << 0.9, -5.0;
  CHECK(distance_to_downward_closure(r, view).distance == doctest::Approx(0.0));
}

TEST_CASE("downward-closure distance to a shifted view equals distance to the scaled closure") {
  // The downward closure of s*(S - B+(rho)) coincides with that of s*S.
  Vector one(2);
  one << 1.0, 1.0;
  auto base = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::singleton(one));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 3.0);
  for (int it = 0; it < 50; ++it) {
    Vector p(2);
    p << u(rng), u(rng);
    const double with_shift =
        distance_to_downward_closure(p, make_view(base, 2.0, 1.5)).distance;
    const double no_shift = distance_to_downward_closure(p, make_view(base, 2.0, 0.0)).distance;
    CHECK(with_shift == doctest::Approx(no_shift).epsilon(1e-9));
  }
}

TEST_CASE("downward-closure distance for a polytope base agrees with dense sampling") {
  std::vector<Vector> verts;
  Vector a(2), b(2), c(2);
  a << 0.0, 0.0;
  b << 1.0, 0.0;
  c << 0.0, 1.0;
  verts = {a, b, c};
  auto tri = std::make_shared<const ConvexSetHandle>(ConvexSetHandle::vpolytope(verts));
  const ShiftedScaledSetView view = make_view(tri, 1.0, 0.0);

  Vector p(2);
  p << 1.0, 1.0;
  // Best base point is (0.5, 0.5) on the diagonal edge: distance sqrt(0.5).
  const DownwardDistanceResult res = distance_to_downward_closure(p, view);
  CHECK(res.distance == doctest::Approx(std::sqrt(0.5)).epsilon(1e-7));
  CHECK(positive_part(p - res.base_point).norm() ==
        doctest::Approx(res.distance).epsilon(1e-7));
}

TEST_CASE("distance dual certificate is consistent") {
  Vector lo = Vector::Zero(2), hi = Vector::Ones(2);
  const ConvexSetHandle box = ConvexSetHandle::box(lo, hi);
  Vector p(2);
  p << 3.0, 0.5;
  CHECK(distance_to_set(p, box) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("construction rejects malformed inputs") {
  Vector lo(2), hi(2);
  lo << 1.0, 0.0;
  hi << 0.0, 1.0;
  CHECK_THROWS_AS(ConvexSetHandle::box(lo, hi), InputError);
  CHECK_THROWS_AS(ConvexSetHandle::vpolytope({}), InputError);
  CHECK_THROWS_AS(ConvexSetHandle::ball_pos(2, -1.0), InputError);
  CHECK_THROWS_AS(ConvexSetHandle::simplex(0), DimensionError);
  const ConvexSetHandle ball = ConvexSetHandle::ball_pos(2, 1.0);
  CHECK_FALSE(ball.has_vertices());
  CHECK_THROWS_AS(ball.vertices(), InputError);
}
