#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wvol/cusp.hpp"
#include "wvol/errors.hpp"
#include "wvol/fit.hpp"
#include "wvol/tube.hpp"

using namespace wvol;
using namespace wvol::tube;

namespace {

constexpr double pi = std::numbers::pi;

// Length of |z| = e^s in the metric, as a line integral over the circle.
double circle_line_integral(const TubeSpec& spec, double s) {
  auto f = [&](double th) {
    cplx z = std::polar(std::exp(s), th);
    return std::exp(s) * std::sqrt(tube_density(spec, z));
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 2 * pi);
}

}  // namespace

TEST(TubeSpec, Validation) {
  EXPECT_NO_THROW(TubeSpec::make(0.1, 0.5));
  EXPECT_THROW(TubeSpec::make(0.0, 0.5), ValidationError);
  EXPECT_THROW(TubeSpec::make(0.5, 0.5), ValidationError);
  EXPECT_THROW(TubeSpec::make(0.1, 1.8), ValidationError);
  auto t = TubeSpec::make(0.1, 0.5);
  EXPECT_LT(t.log_inner(), t.log_core());
  EXPECT_LT(t.log_core(), t.log_outer());
  EXPECT_NEAR(t.log_inner() + t.log_outer(), 2 * t.log_core(), 1e-12);
}

TEST(TubeDensity, CoreAndBoundaryLengths) {
  for (auto [ell, eps] : {std::pair{0.1, 0.5}, {0.5, 1.2}, {1.0, 1.7}}) {
    auto spec = TubeSpec::make(ell, eps);
    EXPECT_NEAR(circle_line_integral(spec, spec.log_core()), ell, 1e-12 * ell);
    // Just inside the boundary circles.
    const double d = 1e-9 * std::abs(spec.log_core());
    EXPECT_NEAR(circle_line_integral(spec, spec.log_outer() - d), eps, 1e-6 * eps);
    EXPECT_NEAR(circle_line_integral(spec, spec.log_inner() + d), eps, 1e-6 * eps);
    EXPECT_NEAR(circle_length(spec, spec.log_outer()), eps, 1e-12 * eps);
  }
}

TEST(TubeDensity, CoreIsTheShortestCircle) {
  auto spec = TubeSpec::make(0.2, 1.0);
  double lo = spec.log_inner(), hi = spec.log_outer();
  for (int k = 0; k <= 200; ++k) {
    double s = lo + (hi - lo) * k / 200;
    double len = circle_length(spec, s);
    if (std::abs(s - spec.log_core()) < 1e-12)
      EXPECT_NEAR(len, spec.ell, 1e-12);
    else
      EXPECT_GT(len, spec.ell);
  }
}

TEST(TubeDensity, ConvergesToCuspDensity) {
  std::vector<double> ells{0.4, 0.2, 0.1, 0.05}, errs;
  for (double ell : ells) {
    auto spec = TubeSpec::make(ell, 1.7);
    double worst = 0;
    for (double s = -8.0; s <= -4.0; s += 0.25) {
      cplx z = std::polar(std::exp(s), 0.5);
      worst = std::max(worst, std::abs(tube_density(spec, z) / cusp::i0_density(z) - 1));
    }
    errs.push_back(worst);
  }
  EXPECT_NEAR(fit::fit_exponent(ells, errs), 2.0, 0.1);
  EXPECT_LT(errs.back(), 2e-3);
}

TEST(TubeDensity, OutsideAnnulusThrows) {
  auto spec = TubeSpec::make(0.1, 0.5);
  EXPECT_THROW(tube_density(spec, std::polar(std::exp(spec.log_outer() + 0.1), 0.0)), DomainError);
  EXPECT_THROW(tube_density(spec, cplx{}), DomainError);
}

TEST(TubeSchwarzian, ClosedForm) {
  cplx z{0.3, -0.4};
  EXPECT_NEAR(std::abs(tube_schwarzian(2 * pi, z) * z * z - 1.0), 0.0, 1e-15);
  for (double ell : {0.1, 0.5, 1.0}) {
    for (cplx w : {cplx{0.7, 0.2}, cplx{-1.5, 0.3}, cplx{0.02, -0.01}}) {
      cplx exact = tube_schwarzian(ell, w);
      EXPECT_LE(std::abs(schwarzian_fd_f_ell(ell, w) - exact) / std::abs(exact), 1e-6);
    }
  }
}

TEST(TubeSchwarzian, MoebiusMapsVanish) {
  hs::MoebiusMap m({1.0, 2.0}, {0.5, 0.0}, {0.3, 0.1}, {1.0, -1.0});
  for (cplx z : {cplx{0.1, 0.1}, cplx{2.0, -1.0}}) EXPECT_LE(std::abs(schwarzian_fd_moebius(m, z)), 1e-10);
}

TEST(TubeSchwarzian, ContourStencilRecoversDerivatives) {
  auto d = contour_derivatives([](cplx w) { return std::exp(2.0 * w); }, 0.3);
  EXPECT_LE(std::abs(d.d1 - 2.0), 1e-13);
  EXPECT_LE(std::abs(d.d2 - 4.0), 1e-12);
  EXPECT_LE(std::abs(d.d3 - 8.0), 1e-11);
  EXPECT_THROW(contour_derivatives([](cplx w) { return w; }, 0.0), ValidationError);
}

TEST(TubeInversion, FixesCoreAndIsInvolutive) {
  auto spec = TubeSpec::make(0.3, 1.0);
  cplx core = std::polar(std::exp(spec.log_core()), 1.2);
  EXPECT_LE(std::abs(tube_inversion(spec, core) - core) / std::abs(core), 1e-14);
  for (double s : {spec.log_inner() + 0.1, spec.log_core() + 2.0}) {
    cplx z = std::polar(std::exp(s), -0.7);
    EXPECT_LE(std::abs(tube_inversion(spec, tube_inversion(spec, z)) - z) / std::abs(z), 1e-14);
  }
  EXPECT_THROW(tube_inversion(spec, cplx{}), DomainError);
}

TEST(TubeInversion, SwapsHalvesIsometrically) {
  auto spec = TubeSpec::make(0.3, 1.0);
  double c = spec.log_core();
  for (double s = spec.log_inner() + 0.05; s < spec.log_outer(); s += 0.5) {
    cplx z = std::polar(std::exp(s), 0.4);
    cplx w = tube_inversion(spec, z);
    EXPECT_NEAR(std::log(std::abs(w)) - c, c - s, 1e-12 * std::abs(c));
    // |dr/dzbar| = e^{2c}/|z|^2 for the anti-holomorphic inversion.
    double jac = std::exp(2 * c) / std::norm(z);
    EXPECT_NEAR(tube_density(spec, w) * jac * jac / tube_density(spec, z), 1.0, 1e-10);
  }
}

TEST(TubeField, CoreValueAndCuspRelation) {
  auto spec = TubeSpec::make(0.2, 1.0);
  auto u = w_ell(spec);
  EXPECT_NEAR(u.u(spec.log_core()), std::log(pi / 2), 1e-14);
  TubeProfile tp(spec.ell);
  cusp::CuspProfile cp;
  for (double s : {spec.log_core(), -9.0, spec.log_outer() * 1.01}) {
    EXPECT_NEAR(tp.f(s), cp.f(s) + u.u(s), 1e-12);
    EXPECT_NEAR(tp.f1(s), cp.f1(s) + u.us(s), 1e-12);
    EXPECT_NEAR(tp.f2(s), cp.f2(s) + u.uss(s), 1e-12 * std::max(1.0, std::abs(tp.f2(s))));
  }
}

TEST(TubeWVolume, RoutesAgree) {
  auto spec = TubeSpec::make(0.1, 0.5);
  auto r = tube_w_volume_routes(spec, {});
  EXPECT_NEAR(r.polyakov_route, r.direct.total_W, 1e-9 * std::abs(r.direct.total_W));
  EXPECT_NEAR(r.doubling_defect_edge_free, 0.0, 1e-9);
  // Edge terms of the full ledger do not double.
  tube::TubeProfile p(spec.ell);
  double edge = engine::edge_term(pi / 2, engine::edge_length(engine::boundary_jet(p, spec.log_outer())));
  EXPECT_NEAR(r.doubling_defect, -2 * edge, 1e-9);
}

TEST(TubeWVolume, CoreBoundaryTermClosedForm) {
  for (double ell : {0.05, 0.2, 0.8}) {
    auto spec = TubeSpec::make(ell, 1.0);
    EXPECT_NEAR(core_boundary_term(spec), pi * pi * pi / (4 * ell) - pi * ell / 16, 1e-12 / ell);
  }
}

TEST(TubeWVolume, DivergenceWithoutBoundaryTermConverges) {
  // W + pi^3/l - 2 pi^2/eps settles to a constant as l -> 0.
  std::vector<double> v;
  for (double ell : {0.2, 0.1, 0.05}) {
    auto spec = TubeSpec::make(ell, 0.5);
    v.push_back(tube_w_volume(spec, {}).total_W + pi * pi * pi / ell - 2 * pi * pi / 0.5);
  }
  double d1 = v[0] - v[1], d2 = v[1] - v[2];
  EXPECT_GT(std::abs(d1 / d2), 2.0);
}

TEST(TubeAsymptote, EpsScalingArithmetic) {
  auto a = TubeSpec::make(0.1, 1.0), b = TubeSpec::make(0.1, 0.5);
  double diff = tube_wvol_asymptote(a) - tube_wvol_asymptote(b);
  double expected = 2 * pi * pi / 1.0 - 2 * pi * pi / 0.5 + 2 * (cusp::boundary_term_b_eps(1.0) - cusp::boundary_term_b_eps(0.5));
  EXPECT_NEAR(diff, expected, 1e-10 * std::abs(expected));
  EXPECT_DOUBLE_EQ(tube_residual(a, 3.0), 3.0 - tube_wvol_asymptote(a));
}

TEST(TubePolyakov, BoundaryTermIsOrderEll) {
  // Leading term l log(pi/2)/pi from the core; the eps circle contributes O(l^2).
  std::vector<double> ells{0.01, 0.005, 0.0025, 0.00125}, vals;
  for (double ell : ells) vals.push_back(polyakov_boundary_term(TubeSpec::make(ell, 0.5)));
  EXPECT_GE(fit::fit_exponent(ells, vals), 0.99);
  EXPECT_NEAR(vals.back() / ells.back(), std::log(pi / 2) / pi, 1e-3);
}

TEST(TubeGeneral, ErrorBudget) {
  EXPECT_NEAR(general_tube_error_budget(0.5, 2.0), 2.0 * std::exp(-pi * pi) / 0.25, 1e-18);
  EXPECT_EQ(general_tube_error_budget(0.1, 0.0), 0.0);
  EXPECT_THROW(general_tube_error_budget(0.0, 1.0), ValidationError);
  EXPECT_THROW(general_tube_error_budget(0.1, -1.0), ValidationError);
}
