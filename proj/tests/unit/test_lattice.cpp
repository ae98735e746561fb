#include "tnl/lattice.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace tnl;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Vec random_vec(std::mt19937_64& rng, int m, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  Vec v(m);
  for (int i = 0; i < m; ++i) v[i] = d(rng);
  return v;
}

}  // namespace

TEST(Exponent, ParsesNumbersAndInfinity) {
  EXPECT_TRUE(parse_exponent("inf").is_infinite());
  EXPECT_TRUE(parse_exponent("infinity").is_infinite());
  EXPECT_TRUE(parse_exponent("1").is_one());
  EXPECT_TRUE(parse_exponent("2").is_two());
  EXPECT_DOUBLE_EQ(parse_exponent("1.5").value(), 1.5);
  EXPECT_THROW(parse_exponent("0.5"), std::invalid_argument);
  EXPECT_THROW(parse_exponent("abc"), std::invalid_argument);
  EXPECT_THROW(Exponent(0.99), std::invalid_argument);
}

TEST(Exponent, FormatsShortest) {
  EXPECT_EQ(Exponent::infinity().to_string(), "inf");
  EXPECT_EQ(Exponent(2.0).to_string(), "2");
  EXPECT_EQ(Exponent(1.5).to_string(), "1.5");
  EXPECT_EQ(Exponent::infinity().reciprocal(), 0.0);
  EXPECT_TRUE(std::isinf(Exponent::infinity().value()));
}

TEST(Exponent, Conjugates) {
  EXPECT_TRUE(conjugate_exponent(Exponent(1.0)).is_infinite());
  EXPECT_TRUE(conjugate_exponent(Exponent::infinity()).is_one());
  EXPECT_TRUE(conjugate_exponent(Exponent(2.0)).is_two());
  EXPECT_NEAR(conjugate_exponent(Exponent(3.0)).value(), 1.5, 1e-15);
}

TEST(SequenceSpace, RejectsBadWeights) {
  EXPECT_THROW(SequenceSpace(2, Exponent(1.0), vec({1.0, 0.0})), std::invalid_argument);
  EXPECT_THROW(SequenceSpace(2, Exponent(1.0), vec({1.0})), std::invalid_argument);
  EXPECT_THROW(SequenceSpace(0, Exponent(1.0)), std::invalid_argument);
  EXPECT_TRUE(SequenceSpace(3, Exponent(2.0)).unit_weights());
}

TEST(Norm, UnweightedValues) {
  EXPECT_DOUBLE_EQ(norm(SequenceSpace(2, Exponent(1.0)), vec({1, -2})), 3.0);
  EXPECT_DOUBLE_EQ(norm(SequenceSpace(2, Exponent(2.0)), vec({3, 4})), 5.0);
  EXPECT_DOUBLE_EQ(norm(SequenceSpace(2, Exponent::infinity()), vec({1, -2})), 2.0);
  EXPECT_NEAR(norm(SequenceSpace(2, Exponent(3.0)), vec({1, 1})), std::cbrt(2.0), 1e-15);
}

TEST(Norm, WeightedValues) {
  EXPECT_NEAR(norm(SequenceSpace(2, Exponent(2.0), vec({4, 1})), vec({1, 1})), std::sqrt(5.0),
              1e-15);
  EXPECT_DOUBLE_EQ(norm(SequenceSpace(2, Exponent::infinity(), vec({4, 1})), vec({1, -3})), 4.0);
  EXPECT_DOUBLE_EQ(norm(SequenceSpace(2, Exponent(1.0), vec({2, 3})), vec({1, -1})), 5.0);
}

TEST(Norm, LatticeMonotone) {
  std::mt19937_64 rng(7);
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    const SequenceSpace space(4, Exponent(p), random_vec(rng, 4, 0.5, 2.0));
    for (int t = 0; t < 50; ++t) {
      const Vec x = random_vec(rng, 4, -1, 1);
      const Vec shrink = random_vec(rng, 4, 0, 1);
      EXPECT_LE(norm(space, x.cwiseProduct(shrink)), norm(space, x) + 1e-15);
      EXPECT_DOUBLE_EQ(norm(space, lattice_abs(x)), norm(space, x));
    }
  }
}

TEST(Lattice, AbsAndMeet) {
  EXPECT_EQ(lattice_abs(vec({-1, 2})), vec({1, 2}));
  EXPECT_EQ(meet(vec({1, 5}), vec({3, 2})), vec({1, 2}));
  EXPECT_DOUBLE_EQ(signed_pow(-2.0, 2.0), -4.0);
}

TEST(Dual, WeightsAndInvolution) {
  const SequenceSpace s(2, Exponent(3.0), vec({8, 1}));
  const SequenceSpace d = dual_of(s);
  EXPECT_NEAR(d.exponent().value(), 1.5, 1e-15);
  EXPECT_NEAR(d.weights()[0], std::pow(8.0, 1.0 - 1.5), 1e-15);
  const SequenceSpace back = dual_of(d);
  EXPECT_NEAR(back.exponent().value(), 3.0, 1e-12);
  EXPECT_NEAR(back.weights()[0], 8.0, 1e-12);
  const SequenceSpace box = dual_of(SequenceSpace(2, Exponent(1.0), vec({2, 4})));
  EXPECT_TRUE(box.exponent().is_infinite());
  EXPECT_DOUBLE_EQ(box.weights()[1], 0.25);
  EXPECT_TRUE(dual_of(SequenceSpace(3, Exponent(1.5))).unit_weights());
}

// max <c, y> over a ball equals the dual norm of c, and the attainer reproduces it.
TEST(LinearMax, IsTheDualNormWithAttainer) {
  std::mt19937_64 rng(11);
  for (Exponent p : {Exponent(1.0), Exponent(1.5), Exponent(2.0), Exponent(3.0), Exponent::infinity()}) {
    for (int t = 0; t < 40; ++t) {
      const SequenceSpace ball(4, p, random_vec(rng, 4, 0.3, 3.0));
      const Vec c = random_vec(rng, 4, -1, 1);
      const LinearMax lm = linear_max_over_ball(c, ball);
      EXPECT_NEAR(lm.value, norm(dual_of(ball), c), 1e-12);
      EXPECT_NEAR(c.dot(lm.attainer), lm.value, 1e-12);
      EXPECT_LE(norm(ball, lm.attainer), 1.0 + 1e-12);

      const LinearMax pos = linear_max_over_ball(c, ball, true);
      EXPECT_NEAR(pos.value, norm(dual_of(ball), c.cwiseMax(0.0)), 1e-12);
      EXPECT_TRUE((pos.attainer.array() >= 0.0).all());
      EXPECT_NEAR(c.dot(pos.attainer), pos.value, 1e-12);
    }
  }
}

TEST(LinearMax, EndpointTieBreaks) {
  const SequenceSpace box(3, Exponent::infinity());
  EXPECT_EQ(linear_max_over_ball(vec({0, -1, 2}), box).attainer, vec({1, -1, 1}));
  const SequenceSpace cross(3, Exponent(1.0));
  EXPECT_EQ(linear_max_over_ball(vec({2, -2, 1}), cross).attainer, vec({1, 0, 0}));
  EXPECT_EQ(linear_max_over_ball(vec({-2, -1}), SequenceSpace(2, Exponent(1.0)), true).attainer,
            vec({0, 0}));
}

TEST(HolderMean, GeometricMeanOfFunctionals) {
  const std::vector<Vec> xs{vec({1, 4}), vec({4, 1})};
  EXPECT_TRUE(holder_mean_functional(xs).isApprox(vec({2, 2})));
  const std::vector<Vec> bad{vec({1, -1})};
  EXPECT_THROW(holder_mean_functional(bad), std::invalid_argument);
}

TEST(Holder, ExamplesAndGuards) {
  const std::vector<Vec> v{vec({1, 1}), vec({1, 1})};
  const std::vector<Exponent> half{Exponent(2.0), Exponent(2.0)};
  const HolderResult r = holder_check(v, half);
  EXPECT_NEAR(r.lhs, 2.0, 1e-15);
  EXPECT_NEAR(r.rhs, 2.0, 1e-15);
  EXPECT_TRUE(r.holds);
  const std::vector<Exponent> bad{Exponent(2.0), Exponent(3.0)};
  EXPECT_THROW(holder_check(v, bad), std::invalid_argument);
  const std::vector<Exponent> ends{Exponent(1.0), Exponent::infinity()};
  const HolderResult e = holder_check(std::vector<Vec>{vec({1, -2}), vec({3, 1})}, ends);
  EXPECT_DOUBLE_EQ(e.lhs, 5.0);
  EXPECT_DOUBLE_EQ(e.rhs, 9.0);
}
