#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "wvol/cusp.hpp"
#include "wvol/epstein.hpp"
#include "wvol/errors.hpp"
#include "wvol/fit.hpp"
#include "wvol/tube.hpp"

using namespace wvol;
using hs::cplx;

namespace {

constexpr double pi = std::numbers::pi;

hs::ConformalMetric flat(double c = 0.0) {
  return hs::ConformalMetric::radial(std::make_shared<hs::FlatProfile>(c), hs::Annulus{0.0, 0.0, 10.0});
}

Eigen::Vector3d to_r3(const hs::HyperbolicPoint3& p) {
  return {p.horizontal().real(), p.horizontal().imag(), p.height()};
}

// Mean curvature of a parametrized surface X(u, v) in the upper half-space,
// normal pointing to the ideal endpoint z, from Euclidean data:
// H = -(t H_E + N_t) with H_E = tr(I^{-1} II)/2.
template <class F>
double embedding_mean_curvature(F X, double u, double v, cplx z, double h) {
  Eigen::Vector3d p = X(u, v);
  Eigen::Vector3d xu = (X(u + h, v) - X(u - h, v)) / (2 * h);
  Eigen::Vector3d xv = (X(u, v + h) - X(u, v - h)) / (2 * h);
  Eigen::Vector3d xuu = (X(u + h, v) - 2 * p + X(u - h, v)) / (h * h);
  Eigen::Vector3d xvv = (X(u, v + h) - 2 * p + X(u, v - h)) / (h * h);
  Eigen::Vector3d xuv = (X(u + h, v + h) - X(u + h, v - h) - X(u - h, v + h) + X(u - h, v - h)) / (4 * h * h);
  Eigen::Vector3d n = xu.cross(xv).normalized();
  Eigen::Vector3d toward{z.real() - p.x(), z.imag() - p.y(), -p.z()};
  if (n.dot(toward) < 0) n = -n;
  Eigen::Matrix2d I, II;
  I << xu.dot(xu), xu.dot(xv), xu.dot(xv), xv.dot(xv);
  II << xuu.dot(n), xuv.dot(n), xuv.dot(n), xvv.dot(n);
  double HE = 0.5 * (I.inverse() * II).trace();
  return -(p.z() * HE + n.z());
}

// Radial Epstein surface in (s, theta).
auto radial_surface(const hs::ConformalMetric& g) {
  return [&g](double s, double th) { return to_r3(eps::epstein_point(g, std::polar(std::exp(s), th))); };
}

double rel_matrix_err(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) { return (a - b).norm() / b.norm(); }

// Induced metric of the offset surface in (x, y) coordinates.
Eigen::Matrix2d induced_metric(const hs::ConformalMetric& g, cplx z, double r, double h) {
  auto X = [&](double dx, double dy) { return to_r3(eps::equidistant_offset(g, z + cplx{dx, dy}, r)); };
  Eigen::Vector3d xu = (X(h, 0) - X(-h, 0)) / (2 * h);
  Eigen::Vector3d xv = (X(0, h) - X(0, -h)) / (2 * h);
  double t = X(0, 0).z();
  Eigen::Matrix2d I;
  I << xu.dot(xu), xu.dot(xv), xu.dot(xv), xv.dot(xv);
  return I / (t * t);
}

}  // namespace

TEST(LiouvilleJet, FlatIsZero) {
  hs::Jet j = hs::liouville_jet(flat(), {0.3, 0.1});
  EXPECT_EQ(j.phi, 0.0);
  EXPECT_EQ(j.phi_z, cplx{});
  EXPECT_EQ(j.phi_zz, cplx{});
  EXPECT_EQ(j.phi_zzbar, 0.0);
  EXPECT_EQ(hs::gaussian_curvature(flat(), {0.3, 0.1}), 0.0);
}

TEST(LiouvilleJet, CuspLaplacianAtUnitLog) {
  hs::Jet j = hs::liouville_jet(cusp::i0_metric(), std::polar(std::exp(-1.0), 0.7));
  EXPECT_NEAR(j.phi_zzbar, std::exp(2.0) / 4, 1e-13);
}

TEST(LiouvilleJet, AnalyticAndFiniteDifferenceAgreeWithOrderTwo) {
  auto g = cusp::i0_metric();
  cplx z{0.3, 0.2};
  hs::Jet a = g.analytic_jet(z);
  std::vector<double> hs_, errs;
  for (double h : {8e-3, 4e-3, 2e-3, 1e-3}) {
    hs::Jet f = g.fd_jet(z, h);
    hs_.push_back(h);
    errs.push_back(std::abs(f.phi_zz - a.phi_zz) + std::abs(f.phi_zzbar - a.phi_zzbar));
  }
  EXPECT_NEAR(fit::fit_exponent(hs_, errs), 2.0, 0.4);
}

TEST(LiouvilleJet, TubeCoreMatchesHandDerivatives) {
  auto spec = tube::TubeSpec::make(1.0, 1.5);
  auto g = tube::tube_metric(spec);
  const double a = spec.a(), s = spec.log_core();
  cplx z = std::polar(std::exp(s), 0.4);
  // phi = log a - s - log(-sin(a s)) with s = log|z|.
  double f1 = -1.0 - a * std::cos(a * s) / std::sin(a * s);
  double f2 = a * a / (std::sin(a * s) * std::sin(a * s));
  cplx phi_z = f1 / (2.0 * z);
  cplx phi_zz = (f2 - 2 * f1) / (4.0 * z * z);
  double phi_zzbar = f2 / (4 * std::norm(z));
  const double h = 1e-2 * std::abs(z);
  hs::Jet c = g.fd_jet(z, h), f = g.fd_jet(z, h / 2);
  // One Richardson step on the central differences.
  cplx rz = (4.0 * f.phi_z - c.phi_z) / 3.0;
  cplx rzz = (4.0 * f.phi_zz - c.phi_zz) / 3.0;
  double rzzbar = (4 * f.phi_zzbar - c.phi_zzbar) / 3;
  EXPECT_LE(std::abs(rz - phi_z) / std::abs(phi_z), 1e-8);
  EXPECT_LE(std::abs(rzz - phi_zz) / std::abs(phi_zz), 1e-8);
  EXPECT_LE(std::abs(rzzbar - phi_zzbar) / phi_zzbar, 1e-8);
  hs::Jet an = g.analytic_jet(z);
  EXPECT_LE(std::abs(an.phi_zz - phi_zz) / std::abs(phi_zz), 1e-12);
  EXPECT_LE(std::abs(an.phi_zzbar - phi_zzbar) / phi_zzbar, 1e-12);
}

TEST(LiouvilleJet, OutsideDomainThrows) {
  EXPECT_THROW(hs::liouville_jet(cusp::i0_metric(), {1.5, 0.0}), DomainError);
  EXPECT_THROW(cusp::i0_metric().fd_jet({1e-6, 0.0}, 1e-5), DomainError);
}

TEST(GaussianCurvature, CuspAndTubeAreHyperbolic) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(0, 2 * pi);
  auto g0 = cusp::i0_metric();
  for (double rho : {1e-8, 1e-3, 0.1, 0.5, 0.9})
    EXPECT_NEAR(hs::gaussian_curvature(g0, std::polar(rho, th(rng))), -1.0, 1e-12);
  for (double ell : {0.1, 0.5, 1.0}) {
    auto spec = tube::TubeSpec::make(ell, 1.5);
    auto g = tube::tube_metric(spec);
    for (int k = 1; k < 10; ++k) {
      double s = spec.log_inner() + k * (spec.log_outer() - spec.log_inner()) / 10;
      EXPECT_NEAR(hs::gaussian_curvature(g, std::polar(std::exp(s), th(rng))), -1.0, 1e-8);
    }
  }
}

TEST(EpsteinPoint, FlatMetricIsPlaneAtHeightTwo) {
  cplx z{0.2, -0.4};
  auto p = eps::epstein_point(flat(), z);
  EXPECT_NEAR(std::abs(p.horizontal() - z), 0.0, 1e-15);
  EXPECT_NEAR(p.height(), 2.0, 1e-15);
  EXPECT_NEAR(eps::epstein_point(flat(0.7), z).height(), 2 * std::exp(-0.7), 1e-15);
}

TEST(EpsteinPoint, CuspAtUnitLogMatchesClosedForm) {
  double rho = std::exp(-1.0);
  auto p = eps::epstein_point(cusp::i0_metric(), {rho, 0.0});
  EXPECT_NEAR(p.horizontal().real(), rho, 1e-12);
  EXPECT_NEAR(p.height(), 2 * rho, 1e-12);
  auto c = cusp::cusp_epstein_coords(rho);
  EXPECT_NEAR(c.r0, rho, 1e-15);
  EXPECT_NEAR(c.t0, 2 * rho, 1e-15);
  EXPECT_FALSE(c.theta_flip);
}

TEST(EpsteinPoint, LiesOnTheHorosphere) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> rho(1e-4, 0.95), th(0, 2 * pi);
  auto g = cusp::i0_metric();
  for (int i = 0; i < 200; ++i)
    EXPECT_LE(eps::horosphere_defect(g, std::polar(rho(rng), th(rng))), 1e-10);
}

TEST(EpsteinPoint, MoebiusNaturality) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  auto g = cusp::i0_metric();
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    hs::MoebiusMap f({1.0 + 0.3 * u(rng), 0.3 * u(rng)}, {0.5 * u(rng), 0.5 * u(rng)},
                     {0.3 * u(rng), 0.3 * u(rng)}, {1.0 + 0.3 * u(rng), 0.3 * u(rng)});
    auto pulled = g.pullback(f);
    cplx z = std::polar(0.05 + 0.8 * std::abs(u(rng)), pi * u(rng));
    cplx w = f.inverse().apply_finite(z);
    auto lhs = eps::epstein_point(g, z);
    auto rhs = f.extend(eps::epstein_point(pulled, w));
    EXPECT_LE(hs::hyp_distance(lhs, rhs), 1e-9);
    ++checked;
  }
  EXPECT_EQ(checked, 40);
}

TEST(FormsAtInfinity, FlatMetric) {
  auto fr = eps::forms_at_infinity(flat(), {0.5, 0.5});
  EXPECT_EQ(fr.q, cplx{});
  EXPECT_EQ(fr.II_hat.norm(), 0.0);
  EXPECT_EQ(fr.B_hat.norm(), 0.0);
  EXPECT_EQ(fr.mean_curvature, 1.0);
  EXPECT_EQ(eps::area_density_induced(flat(), {0.5, 0.5}), 0.25);
}

TEST(FormsAtInfinity, CuspClosedForms) {
  auto g = cusp::i0_metric();
  for (double rho : {1e-3, 0.05, 0.2, 0.6}) {
    cplx z = std::polar(rho, 1.1);
    auto fr = eps::forms_at_infinity(g, z);
    double L = std::log(rho);
    EXPECT_LE(std::abs(fr.q - 1.0 / (4.0 * z * z)) * std::norm(z), 1e-13);
    EXPECT_NEAR(fr.B_hat.determinant(), 1 - std::pow(L, 4), 1e-10 * std::pow(L, 4));
    double den = 1 + fr.B_hat.trace() + fr.B_hat.determinant();
    EXPECT_NEAR(fr.mean_curvature, std::pow(L, 4) / den, 1e-12 * std::abs(fr.mean_curvature));
    // I_hat is the metric itself.
    EXPECT_NEAR(rel_matrix_err(fr.I_hat, Eigen::Matrix2d::Identity() * cusp::i0_density(z)), 0.0, 1e-13);
    EXPECT_NEAR(rel_matrix_err(fr.B_hat, fr.I_hat.inverse() * fr.II_hat), 0.0, 1e-13);
  }
}

TEST(FormsAtInfinity, SecondFormInRealBasis) {
  auto fr = eps::forms_at_infinity(cusp::i0_metric(), {0.1, 0.07});
  hs::Jet j = cusp::i0_metric().jet({0.1, 0.07});
  double l = 4 * j.phi_zzbar;
  EXPECT_NEAR(fr.II_hat(0, 0), l + 4 * fr.q.real(), 1e-12 * std::abs(l));
  EXPECT_NEAR(fr.II_hat(1, 1), l - 4 * fr.q.real(), 1e-12 * std::abs(l));
  // dxdy counts the symmetric product twice.
  EXPECT_NEAR(fr.II_hat(0, 1), -4 * fr.q.imag(), 1e-12 * std::abs(l));
}

TEST(MeanCurvature, EmbeddingOracleOnCusp) {
  auto g = cusp::i0_metric();
  auto X = radial_surface(g);
  for (double s : {-3.0, -2.0, -0.5}) {
    double H = eps::mean_curvature_at(g, std::polar(std::exp(s), 0.3));
    EXPECT_NEAR(embedding_mean_curvature(X, s, 0.3, std::polar(std::exp(s), 0.3), 2e-4), H, 1e-6);
  }
}

TEST(MeanCurvature, EmbeddingOracleAtTubeCore) {
  auto spec = tube::TubeSpec::make(1.0, 1.5);
  auto g = tube::tube_metric(spec);
  auto X = radial_surface(g);
  const double s = spec.log_core();
  cplx z = std::polar(std::exp(s), 0.3);
  double H = eps::mean_curvature_at(g, z);
  // The surface scales with the core radius; work in the rescaled copy.
  auto Y = [&](double u, double v) { return Eigen::Vector3d(X(u, v) / std::exp(s)); };
  EXPECT_NEAR(embedding_mean_curvature(Y, s, 0.3, z / std::exp(s), 2e-4), H, 1e-6);
}

TEST(AreaDensity, CuspFormula) {
  double rho = std::exp(-2.0);
  cplx z{rho, 0.0};
  auto fr = eps::forms_at_infinity(cusp::i0_metric(), z);
  double expected = 0.25 * (1 + fr.B_hat.trace() + fr.B_hat.determinant()) / (rho * rho * 4.0);
  EXPECT_NEAR(eps::area_density_induced(cusp::i0_metric(), z), expected, 1e-12 * std::abs(expected));
}

TEST(AreaDensity, MatchesEmbeddingJacobian) {
  auto g = cusp::i0_metric();
  for (double rho : {std::exp(-2.0), 0.3}) {
    cplx z{rho, 0.0};
    const double h = 1e-6 * rho;
    auto X = [&](double dx, double dy) { return to_r3(eps::epstein_point(g, z + cplx{dx, dy})); };
    Eigen::Vector3d xu = (X(h, 0) - X(-h, 0)) / (2 * h);
    Eigen::Vector3d xv = (X(0, h) - X(0, -h)) / (2 * h);
    double t = X(0, 0).z();
    double jac = xu.cross(xv).norm() / (t * t);
    EXPECT_NEAR(std::abs(eps::area_density_induced(g, z)), jac, 1e-6 * jac);
  }
}

TEST(EquidistantOffset, ZeroShiftIsTheSurface) {
  auto g = cusp::i0_metric();
  cplx z{0.1, 0.2};
  EXPECT_EQ(hs::hyp_distance(eps::equidistant_offset(g, z, 0.0), eps::epstein_point(g, z)), 0.0);
}

TEST(EquidistantOffset, FlatLogTwo) {
  cplx z{0.3, 0.0};
  auto p = eps::equidistant_offset(flat(), z, std::log(2.0));
  EXPECT_NEAR(p.height(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(p.horizontal() - z), 0.0, 1e-15);
  EXPECT_NEAR(hs::hyp_distance(p, eps::epstein_point(flat(), z)), std::log(2.0), 1e-15);
}

TEST(EquidistantOffset, CuspUnitDistance) {
  auto g = cusp::i0_metric();
  for (double rho : {0.01, 0.1, 0.4}) {
    cplx z = std::polar(rho, 2.0);
    EXPECT_NEAR(hs::hyp_distance(eps::equidistant_offset(g, z, 1.0), eps::epstein_point(g, z)), 1.0, 1e-6);
  }
}

TEST(EquidistantOffset, ShiftsCompose) {
  auto g = cusp::i0_metric();
  cplx z{0.05, -0.1};
  auto a = eps::equidistant_offset(g, z, 0.7 + 0.4);
  auto b = eps::equidistant_offset(g.shifted(0.7), z, 0.4);
  EXPECT_LE(hs::hyp_distance(a, b), 1e-12);
}

TEST(EquidistantOffset, ConstantFieldGivesHorizontalPlane) {
  for (double c : {-1.0, 0.0, 2.0}) {
    auto g = flat(c);
    for (cplx z : {cplx{0.1, 0.0}, cplx{-1.0, 2.0}}) {
      EXPECT_NEAR(eps::epstein_point(g, z).height(), 2 * std::exp(-c), 1e-14);
      EXPECT_EQ(eps::mean_curvature_at(g, z), 1.0);
    }
  }
}

TEST(EquidistantOffset, FundamentalFormExpansion) {
  auto g = cusp::i0_metric();
  cplx z{0.1, 0.03};
  auto fr = eps::forms_at_infinity(g, z);
  for (double t : {0.0, 1.0, 3.0}) {
    Eigen::Matrix2d It = induced_metric(g, z, t, 1e-7);
    Eigen::Matrix2d expected =
        0.25 * (std::exp(2 * t) * fr.I_hat + 2 * fr.II_hat + std::exp(-2 * t) * fr.III_hat);
    EXPECT_LE(rel_matrix_err(It, expected), 1e-6);
  }
}

TEST(EquidistantOffset, RescaledInducedMetricTendsToIHat) {
  auto g = cusp::i0_metric();
  cplx z{0.1, 0.03};
  auto fr = eps::forms_at_infinity(g, z);
  std::vector<double> ts{2, 4, 8}, errs;
  for (double t : ts) errs.push_back(rel_matrix_err(4 * std::exp(-2 * t) * induced_metric(g, z, t, 1e-7), fr.I_hat));
  // Error decays like e^{-2t}.
  for (int i = 0; i + 1 < 3; ++i) {
    double rate = std::log(errs[i] / errs[i + 1]) / (ts[i + 1] - ts[i]);
    EXPECT_NEAR(rate, 2.0, 0.6);
  }
}

TEST(MeanCurvature, DegenerateDenominatorThrows) {
  // phi = -|z|^2/4 has B = -Id at the origin.
  hs::ConformalMetric g(hs::Domain{}, [](cplx z) { return -0.25 * std::norm(z); }, [](cplx z) {
    hs::Jet j;
    j.phi = -0.25 * std::norm(z);
    j.phi_z = -0.25 * std::conj(z);
    j.phi_zzbar = -0.25;
    return j;
  });
  EXPECT_THROW(eps::mean_curvature_at(g, cplx{}), DegenerateImmersion);
  EXPECT_NO_THROW(eps::mean_curvature_at(g, cplx{0.5, 0.0}));
}
