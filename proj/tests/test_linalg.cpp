#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "blackwell/linalg.hpp"

using namespace blackwell;

namespace {

BilinearLoss two_coordinate_loss() {
  Matrix l1 = Matrix::Zero(2, 2), l2 = Matrix::Zero(2, 2);
  l1(0, 0) = 1.0;
  l2(1, 1) = 1.0;
  return make_bilinear_loss({l1, l2});
}

}  // namespace

TEST_CASE("loss evaluation matches hand-computed components") {
  const BilinearLoss loss = two_coordinate_loss();
  Vector x(2), y(2);
  x << 1.0, 2.0;
  y << 3.0, 4.0;
  const Vector out = eval_loss(loss, x, y);
  CHECK(out.size() == 2);
  CHECK(out[0] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("weighted matrix reproduces the weighted loss") {
  const BilinearLoss loss = two_coordinate_loss();
  Vector w(2);
  w << 2.0, -1.0;
  const Matrix a = weighted_matrix(loss, w);
  CHECK(a(0, 0) == 2.0);
  CHECK(a(1, 1) == -1.0);
  CHECK(a(0, 1) == 0.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int it = 0; it < 100; ++it) {
    Vector x(2), y(2), ww(2);
    for (int i = 0; i < 2; ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
      ww[i] = u(rng);
    }
    const double direct = ww.dot(eval_loss(loss, x, y));
    const double via = x.dot(weighted_matrix(loss, ww) * y);
    CHECK(direct == doctest::Approx(via).epsilon(1e-12));
  }
}

TEST_CASE("norm bound is the root of summed squared Frobenius norms") {
  const BilinearLoss loss = two_coordinate_loss();
  CHECK(loss_norm_bound(loss) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("norm bound dominates the loss on random inputs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Matrix> mats;
    const int d = 2 + static_cast<int>(trial % 3);
    for (int i = 0; i < d; ++i) {
      Matrix m(3, 2);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 2; ++c) m(r, c) = u(rng);
      mats.push_back(m);
    }
    const BilinearLoss loss = make_bilinear_loss(mats);
    for (int it = 0; it < 25; ++it) {
      Vector x(3), y(2);
      for (int i = 0; i < 3; ++i) x[i] = u(rng);
      for (int i = 0; i < 2; ++i) y[i] = u(rng);
      CHECK(eval_loss(loss, x, y).norm() <=
            loss_norm_bound(loss) * x.norm() * y.norm() + 1e-12);
    }
  }
}

TEST_CASE("sign split helpers") {
  Vector v(3);
  v << 1.5, -2.0, 0.0;
  const Vector p = positive_part(v), n = negative_part(v);
  CHECK(p[0] == 1.5);
  CHECK(p[1] == 0.0);
  CHECK(n[1] == -2.0);
  CHECK(n[0] == 0.0);
  CHECK((p + n - v).norm() == 0.0);
  CHECK(unit_or_zero(Vector::Zero(3)).norm() == 0.0);
  CHECK(unit_or_zero(v).norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(make_bilinear_loss({}), DimensionError);
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 3);
  CHECK_THROWS_AS(make_bilinear_loss({a, b}), DimensionError);
  const BilinearLoss loss = two_coordinate_loss();
  CHECK_THROWS_AS(eval_loss(loss, Vector::Zero(3), Vector::Zero(2)), DimensionError);
  CHECK_THROWS_AS(weighted_matrix(loss, Vector::Zero(3)), DimensionError);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(make_bilinear_loss({bad}), InputError);
}
