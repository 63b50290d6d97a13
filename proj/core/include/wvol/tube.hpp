#pragma once

#include <functional>
#include <string>

#include "wvol/cusp.hpp"
#include "wvol/engine.hpp"

namespace wvol::tube {

using hs::cplx;

// Symmetric annulus A_l(eps) around the core circle |z| = e^{-pi^2/l}.
struct TubeSpec {
  double ell = 0.1;
  double eps = 0.5;

  // 0 < ell < eps <= 2 arsinh(1).
  static TubeSpec make(double ell, double eps);
  void validate() const;
  double a() const;
  double log_core() const;
  double log_inner() const;
  double log_outer() const;
};

// phi_l = log a - s - log(-sin(a s)) with a = l/(2 pi), s = log rho.
class TubeProfile final : public hs::RadialProfile {
 public:
  explicit TubeProfile(double ell);
  double f(double s) const override;
  double f1(double s) const override;
  double f2(double s) const override;
  double g(double s) const override;
  std::string name() const override { return "tube"; }

 private:
  double a_;
};

hs::RadialProfilePtr tube_profile(const TubeSpec& spec);
hs::ConformalMetric tube_metric(const TubeSpec& spec);

double tube_density(const TubeSpec& spec, cplx z);
// Induced length of the circle |z| = e^s.
double circle_length(const TubeSpec& spec, double s);

// f_l(z) = z^{2 pi i / l} on the principal branch.
cplx f_ell(double ell, cplx z);
// Closed-form coefficient 1/(2 z^2)(1 + 4 pi^2/l^2).
cplx tube_schwarzian(double ell, cplx z);

struct Derivatives3 {
  cplx d1, d2, d3;
};

// Derivatives at 0 of a map given in local form w -> f(z + w), from the
// trapezoid rule on the circle |w| = r.
Derivatives3 contour_derivatives(const std::function<cplx(cplx)>& local, double r, int nodes = 128);
cplx schwarzian(const Derivatives3& d);
cplx schwarzian_fd_f_ell(double ell, cplx z, int nodes = 128);
cplx schwarzian_fd_moebius(const hs::MoebiusMap& m, cplx z, int nodes = 128);

// r(z) = e^{-2 pi^2/l} / conj(z).
cplx tube_inversion(const TubeSpec& spec, cplx z);

// w_l = log(a s / sin(a s)): the tube field relative to the cusp metric.
hs::RadialField w_ell(const TubeSpec& spec);

// Direct engine quadrature of W(A_l(eps), I_l).
engine::WVolumeReport tube_w_volume(const TubeSpec& spec, const engine::QuadratureConfig& cfg,
                                    const engine::EngineOptions& opt = {});

struct TubeRoutes {
  engine::WVolumeReport direct;
  // The half C from the core to the eps circle, both metrics.
  engine::WVolumeReport half;
  engine::WVolumeReport half_cusp;
  double polyakov = 0.0;
  // 2 (W'(C, I_0) + polyakov) minus the edge terms of A: the edge-free
  // functional transported by Polyakov, then completed.
  double polyakov_route = 0.0;
  // 2 (W(C, I_0) + polyakov) + 2 b_core with the full ledger.
  double ledger_route = 0.0;
  double b_core = 0.0;
  double b_rho_core = 0.0;
  // W(A) - 2 W(C) - 2 b_core.
  double doubling_defect = 0.0;
  double doubling_defect_edge_free = 0.0;
};

TubeRoutes tube_w_volume_routes(const TubeSpec& spec, const engine::QuadratureConfig& cfg);

// Caterpillar plus edge term of I_l at the core circle.
double core_boundary_term(const TubeSpec& spec);

// -pi^3/l + 2 pi^2/eps + 2 b(eps).
double tube_wvol_asymptote(const TubeSpec& spec);
double tube_residual(const TubeSpec& spec, double W);

// -pi [(1 + f1) w_l] between the core and the eps circle for the cusp metric.
double polyakov_boundary_term(const TubeSpec& spec);

// A e^{-pi^2/(2l)}/l^2 for a Schwarzian perturbation bounded by A.
double general_tube_error_budget(double ell, double schwarzian_bound);

}  // namespace wvol::tube
