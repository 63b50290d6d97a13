#include "wvol/tube.hpp"

#include <cmath>
#include <numbers>

#include <tbb/parallel_invoke.h>

#include "wvol/errors.hpp"

namespace wvol::tube {

namespace {
constexpr double pi = std::numbers::pi;
const double eps0 = 2 * std::asinh(1.0);
}  // namespace

TubeSpec TubeSpec::make(double ell, double eps) {
  TubeSpec t{ell, eps};
  t.validate();
  return t;
}

void TubeSpec::validate() const {
  if (!(ell > 0) || !std::isfinite(ell)) throw ValidationError("tube core length must be positive");
  if (!(eps > ell)) throw ValidationError("tube boundary length must exceed the core length");
  if (!(eps <= eps0)) throw ValidationError("tube boundary length must not exceed 2 arsinh(1)");
}

double TubeSpec::a() const { return ell / (2 * pi); }
double TubeSpec::log_core() const { return -pi * pi / ell; }
double TubeSpec::log_inner() const { return -2 * pi * pi / ell + (2 * pi / ell) * std::asin(ell / eps); }
double TubeSpec::log_outer() const { return -(2 * pi / ell) * std::asin(ell / eps); }

TubeProfile::TubeProfile(double ell) : a_(ell / (2 * pi)) {}
double TubeProfile::f(double s) const { return std::log(a_) - s - std::log(-std::sin(a_ * s)); }
double TubeProfile::f1(double s) const { return -1.0 - a_ * std::cos(a_ * s) / std::sin(a_ * s); }
double TubeProfile::f2(double s) const {
  double sn = std::sin(a_ * s);
  return a_ * a_ / (sn * sn);
}
double TubeProfile::g(double s) const { return -std::sin(a_ * s) / a_; }

hs::RadialProfilePtr tube_profile(const TubeSpec& spec) {
  spec.validate();
  return std::make_shared<TubeProfile>(spec.ell);
}

hs::ConformalMetric tube_metric(const TubeSpec& spec) {
  return hs::ConformalMetric::radial(tube_profile(spec),
                                     hs::Annulus{0.0, std::exp(spec.log_inner()), std::exp(spec.log_outer())});
}

double tube_density(const TubeSpec& spec, cplx z) {
  spec.validate();
  double rho = std::abs(z);
  if (!(rho > 0)) throw DomainError("tube density needs z != 0");
  double s = std::log(rho);
  if (!(s > spec.log_inner()) || !(s < spec.log_outer())) throw DomainError("point lies outside the tube annulus");
  double sn = std::sin(spec.a() * s);
  return spec.ell * spec.ell / (4 * pi * pi * rho * rho * sn * sn);
}

double circle_length(const TubeSpec& spec, double s) {
  spec.validate();
  return 2 * pi * spec.a() / std::abs(std::sin(spec.a() * s));
}

cplx f_ell(double ell, cplx z) {
  if (z == cplx{}) throw DomainError("f_l needs z != 0");
  return std::exp(cplx{0.0, 2 * pi / ell} * std::log(z));
}

cplx tube_schwarzian(double ell, cplx z) {
  if (!(ell > 0)) throw ValidationError("tube core length must be positive");
  return 0.5 / (z * z) * (1.0 + 4 * pi * pi / (ell * ell));
}

Derivatives3 contour_derivatives(const std::function<cplx(cplx)>& local, double r, int nodes) {
  if (!(r > 0) || nodes < 8) throw ValidationError("contour stencil needs r > 0 and at least 8 nodes");
  cplx f0 = local(cplx{});
  cplx c1{}, c2{}, c3{};
  for (int k = 0; k < nodes; ++k) {
    double th = 2 * pi * k / nodes;
    cplx v = local(std::polar(r, th)) - f0;
    c1 += v * std::polar(1.0, -th);
    c2 += v * std::polar(1.0, -2 * th);
    c3 += v * std::polar(1.0, -3 * th);
  }
  double n = nodes;
  return {c1 / (n * r), 2.0 * c2 / (n * r * r), 6.0 * c3 / (n * r * r * r)};
}

cplx schwarzian(const Derivatives3& d) {
  cplx a = d.d2 / d.d1;
  return d.d3 / d.d1 - 1.5 * a * a;
}

cplx schwarzian_fd_f_ell(double ell, cplx z, int nodes) {
  if (z == cplx{}) throw DomainError("f_l needs z != 0");
  cplx c{0.0, 2 * pi / ell};
  // Up to the constant factor z^c, which cancels in S.
  auto local = [c, z](cplx w) { return std::exp(c * std::log(1.0 + w / z)); };
  double r = std::abs(z) * std::min(0.2, ell / (2 * pi));
  return schwarzian(contour_derivatives(local, r, nodes));
}

cplx schwarzian_fd_moebius(const hs::MoebiusMap& m, cplx z, int nodes) {
  double dist = m.c() == cplx{} ? 1.0 : std::abs(z + m.d() / m.c());
  if (!(dist > 0)) throw DomainError("point is the pole of the map");
  auto local = [&m, z](cplx w) { return m.apply_finite(z + w); };
  return schwarzian(contour_derivatives(local, 0.25 * std::min(dist, 1.0), nodes));
}

cplx tube_inversion(const TubeSpec& spec, cplx z) {
  if (z == cplx{}) throw DomainError("inversion needs z != 0");
  return std::exp(2 * spec.log_core()) / std::conj(z);
}

hs::RadialField w_ell(const TubeSpec& spec) {
  double a = spec.a();
  hs::RadialField u;
  u.u = [a](double s) { return std::log(a * s / std::sin(a * s)); };
  u.us = [a](double s) { return 1.0 / s - a * std::cos(a * s) / std::sin(a * s); };
  u.uss = [a](double s) {
    double sn = std::sin(a * s);
    return -1.0 / (s * s) + a * a / (sn * sn);
  };
  return u;
}

engine::WVolumeReport tube_w_volume(const TubeSpec& spec, const engine::QuadratureConfig& cfg,
                                    const engine::EngineOptions& opt) {
  auto region = engine::RegionSpec::log_annulus(tube_metric(spec), spec.log_inner(), spec.log_outer());
  engine::WVolumeReport rep = engine::w_volume(region, cfg, opt);
  rep.label = "tube";
  return rep;
}

double core_boundary_term(const TubeSpec& spec) {
  TubeProfile p(spec.ell);
  engine::BoundaryJet b = engine::boundary_jet(p, spec.log_core());
  return engine::caterpillar_H_integral(b, -1) + engine::edge_term(pi / 2, engine::edge_length(b));
}

TubeRoutes tube_w_volume_routes(const TubeSpec& spec, const engine::QuadratureConfig& cfg) {
  spec.validate();
  TubeRoutes out;
  const double sc = spec.log_core(), so = spec.log_outer();
  tbb::parallel_invoke(
      [&] { out.direct = tube_w_volume(spec, cfg); },
      [&] {
        auto half = engine::RegionSpec::log_annulus(tube_metric(spec), sc, so);
        out.half = engine::w_volume(half, cfg);
      },
      [&] {
        out.half_cusp = cusp::cusp_w_volume_log(sc, so);
        auto region = engine::RegionSpec::log_annulus(cusp::i0_metric(), sc, so);
        out.polyakov = engine::polyakov_delta(region, w_ell(spec), cfg);
      });
  TubeProfile p(spec.ell);
  double edges = 0.0;
  const double ends[2] = {spec.log_inner(), spec.log_outer()};
  for (int i = 0; i < 2; ++i) {
    double len = engine::edge_length(engine::boundary_jet(p, ends[i]));
    edges += (i == 0 ? 1.0 : -1.0) * engine::edge_term(pi / 2, len);
  }
  out.b_core = core_boundary_term(spec);
  out.b_rho_core = cusp::boundary_term_b_log(sc);
  out.polyakov_route = 2 * (out.half_cusp.edge_free_W + out.polyakov) - edges;
  out.ledger_route = 2 * (out.half_cusp.total_W + out.polyakov) + 2 * out.b_core;
  out.doubling_defect = out.direct.total_W - 2 * out.half.total_W - 2 * out.b_core;
  out.doubling_defect_edge_free = out.direct.edge_free_W - 2 * out.half.edge_free_W;
  return out;
}

double tube_wvol_asymptote(const TubeSpec& spec) {
  spec.validate();
  return -pi * pi * pi / spec.ell + 2 * pi * pi / spec.eps + 2 * cusp::boundary_term_b_eps(spec.eps);
}

double tube_residual(const TubeSpec& spec, double W) { return W - tube_wvol_asymptote(spec); }

double polyakov_boundary_term(const TubeSpec& spec) {
  hs::RadialField u = w_ell(spec);
  cusp::CuspProfile p;
  auto edge = [&](double s) { return (1.0 + p.f1(s)) * u.u(s); };
  return -pi * (edge(spec.log_outer()) - edge(spec.log_core()));
}

double general_tube_error_budget(double ell, double schwarzian_bound) {
  if (!(ell > 0)) throw ValidationError("tube core length must be positive");
  if (!(schwarzian_bound >= 0)) throw ValidationError("Schwarzian bound must be nonnegative");
  return schwarzian_bound * std::exp(-pi * pi / (2 * ell)) / (ell * ell);
}

}  // namespace wvol::tube
