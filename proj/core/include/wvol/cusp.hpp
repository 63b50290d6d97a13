#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wvol/engine.hpp"
#include "wvol/fit.hpp"

namespace wvol::cusp {

using hs::cplx;

// phi_0 = -log|rho log rho| in s = log rho < 0.
class CuspProfile final : public hs::RadialProfile {
 public:
  double f(double s) const override;
  double f1(double s) const override;
  double f2(double s) const override;
  double g(double s) const override { return -s; }
  std::string name() const override { return "cusp"; }
};

hs::RadialProfilePtr i0_profile();
// The cusp metric on the punctured unit disk.
hs::ConformalMetric i0_metric();

// e^{2 phi_0} = 1/(rho^2 log^2 rho).
double i0_density(cplx z);
// Hyperbolic length 2 pi / |log rho| of the circle of radius rho.
double horocycle_length(double rho);

double rho_of_eps(double eps);
double eps_of_rho(double rho);
// e^{-sqrt 2}: the Epstein surface meets the axis there.
double flip_radius();

// 0 < rho1 < rho2 < e^{-sqrt 2}, stored as logarithms.
struct CuspTruncation {
  double log_rho1 = 0.0;
  double log_rho2 = 0.0;

  static CuspTruncation from_radii(double rho1, double rho2);
  static CuspTruncation from_eps(double eps1, double eps2);
  static CuspTruncation from_log(double L1, double L2);
  double rho1() const;
  double rho2() const;
};

struct CuspCoords {
  double r0;
  bool theta_flip;
  double t0;
};

CuspCoords cusp_epstein_coords(double rho);

// Closed forms in terms of L = log rho.
double cusp_H_integral_log(double L1, double L2);
double cusp_H_integral(double rho1, double rho2);
double c_term_log(double L);
double c_term(double rho);
double cusp_volume_log(double L1, double L2);
double cusp_volume(double rho1, double rho2);

// Caterpillar and edge pieces of one cusp boundary circle.
double caterpillar_log(double L);
double edge_log(double L);
double caterpillar_volume_log(double L);

// Exact b = 1/2 int_C H da + pi/8 l(d_1 C) and its leading asymptote.
double boundary_term_b_log(double L);
double boundary_term_b(double rho);
double boundary_term_b_eps(double eps);
double boundary_term_b_asymptote_log(double L);
// pi^3/(4 eps) + pi^2/eps.
double boundary_term_b_eps_leading(double eps);

// W-volume report assembled from closed forms.
engine::WVolumeReport cusp_w_volume_log(double L1, double L2);
engine::WVolumeReport cusp_w_volume(double rho1, double rho2);

enum class LimitForm { rho, eps };

struct LimitRow {
  double parameter = 0.0;  // rho, or eps
  double log_rho = 0.0;
  double W = 0.0;
  double renormalized = 0.0;
  double increment = 0.0;
  double b = 0.0;
  double edge = 0.0;
};

struct LimitResult {
  std::vector<LimitRow> rows;
  fit::RemainderFit fit;
  double last_term = 0.0;
  double limit_estimate = 0.0;
  bool cauchy = false;
  bool converged = false;
  std::string note;
};

// Cauchy test: increments shrink monotonically and the fitted order is positive.
bool is_cauchy(const std::vector<LimitRow>& rows);

enum class Route { direct, closed_form };

// Sequence W(D_rho^{rho_bar}) - pi/2 log rho + b(rho) over a schedule of
// log rho values (or the equivalent eps form), with a remainder fit in 1/|log rho|.
LimitResult truncated_cusp_renvol(double eps_bar, const std::vector<double>& log_rho_schedule,
                                  LimitForm form, Route route, const engine::QuadratureConfig& cfg);

// log rho = -k log 10 for k = k0..k1.
std::vector<double> decade_schedule(int k0, int k1);

// h_0 = e^{2 nu} I_0 for w = z e^{psi(z)}.
struct CuspPerturbation {
  std::function<cplx(cplx)> psi;
  std::function<cplx(cplx)> dpsi;
  std::function<cplx(cplx)> ddpsi;
  std::function<cplx(cplx)> dddpsi;
  // The perturbed metric is defined on the punctured disk of this radius.
  double radius = 0.25;

  static CuspPerturbation linear(cplx a);
  static CuspPerturbation zero();
  // Sampled check of nu = O(|z|) near 0; returns max |nu(z)|/|z|.
  double nu_ratio_bound(int samples = 64) const;
  double nu(cplx z) const;
  cplx nu_z(cplx z) const;
  engine::PlaneField field() const;
  hs::ConformalMetric metric() const;
};

struct PerturbedLimitResult {
  LimitResult base;
  std::vector<double> polyakov_terms;
  std::vector<double> totals;
  fit::RemainderFit fit;
  double limit_estimate = 0.0;
  bool converged = false;
};

PerturbedLimitResult perturbed_cusp_renvol(const CuspPerturbation& pert, double eps_bar,
                                           const std::vector<double>& log_rho_schedule,
                                           const engine::QuadratureConfig& cfg);

}  // namespace wvol::cusp
