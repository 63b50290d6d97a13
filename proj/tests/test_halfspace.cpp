#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wvol/errors.hpp"
#include "wvol/halfspace.hpp"

using namespace wvol::hs;

namespace {

cplx random_cplx(std::mt19937_64& rng, double scale = 2.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

HyperbolicPoint3 random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> t(0.2, 3.0);
  return {random_cplx(rng), t(rng)};
}

MoebiusMap random_map(std::mt19937_64& rng) {
  return {random_cplx(rng), random_cplx(rng), random_cplx(rng), random_cplx(rng)};
}

}  // namespace

TEST(HypDistance, VerticalGeodesic) {
  EXPECT_NEAR(hyp_distance({0.0, 1.0}, {0.0, std::exp(1.0)}), 1.0, 1e-15);
}

TEST(HypDistance, IdentityIsZero) {
  HyperbolicPoint3 p{{0.3, -0.7}, 1.4};
  EXPECT_EQ(hyp_distance(p, p), 0.0);
}

TEST(HypDistance, HorizontalPairMatchesGeodesicIntegral) {
  // The geodesic through (0,1) and (1,1) is the semicircle of radius sqrt(5)/2
  // centred at 1/2; its length is the integral of R dphi/(R sin phi).
  const double R = std::sqrt(5.0) / 2;
  const double a = std::acos(0.5 / R);
  const double b = std::acos(-0.5 / R);
  auto f = [](double phi) { return 1.0 / std::sin(phi); };
  double len = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b);
  EXPECT_NEAR(hyp_distance({{1.0, 0.0}, 1.0}, {0.0, 1.0}), len, 1e-12);
  EXPECT_NEAR(len, std::acosh(1.5), 1e-12);
}

TEST(HypDistance, SymmetricAndTriangleInequality) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    auto p = random_point(rng), q = random_point(rng), r = random_point(rng);
    double pq = hyp_distance(p, q);
    EXPECT_DOUBLE_EQ(pq, hyp_distance(q, p));
    EXPECT_LE(hyp_distance(p, r), pq + hyp_distance(q, r) + 1e-12);
  }
}

TEST(HyperbolicPoint3, RejectsNonPositiveHeight) {
  EXPECT_THROW(HyperbolicPoint3({0.0, 0.0}, 0.0), wvol::ValidationError);
  EXPECT_THROW(HyperbolicPoint3({0.0, 0.0}, -1.0), wvol::ValidationError);
}

TEST(Polar, Accessors) {
  EXPECT_DOUBLE_EQ(polar_rho({3.0, 4.0}), 5.0);
  EXPECT_NEAR(polar_theta({0.0, -1.0}), 1.5 * std::numbers::pi, 1e-15);
  EXPECT_GE(polar_theta({-1.0, -1e-300}), 0.0);
}

TEST(Moebius, NormalizedOnConstruction) {
  MoebiusMap m({2.0, 1.0}, {0.5, 0.0}, {1.0, -1.0}, {3.0, 0.0});
  EXPECT_NEAR(std::abs(m.a() * m.d() - m.b() * m.c() - 1.0), 0.0, 1e-14);
  EXPECT_THROW(MoebiusMap(1.0, 2.0, 2.0, 4.0), wvol::ValidationError);
}

TEST(Moebius, IdentityAndDilation) {
  cplx z{0.4, -1.3};
  EXPECT_EQ(MoebiusMap::identity().apply_finite(z), z);
  auto p = MoebiusMap::dilation(2.0).extend({0.0, 1.0});
  EXPECT_NEAR(std::abs(p.horizontal()), 0.0, 1e-15);
  EXPECT_NEAR(p.height(), 2.0, 1e-15);
}

TEST(Moebius, PoleMapsToInfinity) {
  MoebiusMap m(1.0, 0.0, 1.0, 1.0);
  SpherePoint w = m.apply(cplx{-1.0, 0.0});
  EXPECT_TRUE(std::holds_alternative<Infinity>(w));
  SpherePoint back = m.apply(Infinity{});
  ASSERT_TRUE(std::holds_alternative<cplx>(back));
  EXPECT_NEAR(std::abs(std::get<cplx>(back) - 1.0), 0.0, 1e-15);
  EXPECT_THROW(m.apply_finite({-1.0, 0.0}), wvol::DomainError);
}

TEST(Moebius, CompositionAndInverse) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    auto f = random_map(rng), g = random_map(rng);
    cplx z = random_cplx(rng);
    cplx lhs = f.compose(g).apply_finite(z);
    cplx rhs = f.apply_finite(g.apply_finite(z));
    EXPECT_LE(std::abs(lhs - rhs), 1e-9 * (1.0 + std::abs(rhs)));
    cplx back = f.inverse().apply_finite(f.apply_finite(z));
    EXPECT_LE(std::abs(back - z), 1e-9 * (1.0 + std::abs(z)));
  }
}

TEST(Moebius, ExtensionIsAnIsometry) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    auto m = random_map(rng);
    auto p = random_point(rng), q = random_point(rng);
    double d = hyp_distance(p, q);
    EXPECT_NEAR(hyp_distance(moebius_extend(m, p), moebius_extend(m, q)), d, 1e-12 * std::max(1.0, d));
  }
}

TEST(Moebius, DerivativesMatchFiniteDifferences) {
  MoebiusMap m({1.0, 0.5}, {0.2, 0.0}, {0.3, -0.1}, {1.0, 0.0});
  cplx z{0.4, 0.2};
  const double h = 1e-4;
  auto f = [&](cplx w) { return m.apply_finite(w); };
  cplx d1 = (f(z + h) - f(z - h)) / (2 * h);
  cplx d2 = (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h);
  EXPECT_LE(std::abs(m.derivative(z) - d1), 1e-7);
  EXPECT_LE(std::abs(m.second_over_first(z) - d2 / d1), 1e-5);
  // Schwarzian of a Moebius map vanishes.
  cplx r2 = m.second_over_first(z);
  EXPECT_LE(std::abs(m.third_over_first(z) - 1.5 * r2 * r2), 1e-13);
}
