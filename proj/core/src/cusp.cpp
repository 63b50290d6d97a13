#include "wvol/cusp.hpp"

#include <cmath>
#include <numbers>

#include <tbb/parallel_for.h>

#include "wvol/errors.hpp"

namespace wvol::cusp {

namespace {

constexpr double pi = std::numbers::pi;

void require_cusp_log(double L) {
  if (!(L < -std::numbers::sqrt2)) throw DomainError("cusp truncation needs rho < e^{-sqrt 2}");
}

}  // namespace

double CuspProfile::f(double s) const { return -std::log(-s) - s; }
double CuspProfile::f1(double s) const { return -1.0 - 1.0 / s; }
double CuspProfile::f2(double s) const { return 1.0 / (s * s); }

hs::RadialProfilePtr i0_profile() {
  static const hs::RadialProfilePtr p = std::make_shared<CuspProfile>();
  return p;
}

hs::ConformalMetric i0_metric() { return hs::ConformalMetric::radial(i0_profile(), hs::Annulus{0.0, 0.0, 1.0}); }

double i0_density(cplx z) {
  double rho = std::abs(z);
  if (!(rho > 0) || !(rho < 1)) throw DomainError("cusp density needs 0 < |z| < 1");
  double L = std::log(rho);
  return 1.0 / (rho * rho * L * L);
}

double horocycle_length(double rho) {
  if (!(rho > 0) || !(rho < 1)) throw DomainError("horocycle needs 0 < rho < 1");
  return 2 * pi / std::abs(std::log(rho));
}

double rho_of_eps(double eps) {
  if (!(eps > 0)) throw DomainError("horocycle length must be positive");
  return std::exp(-2 * pi / eps);
}

double eps_of_rho(double rho) { return horocycle_length(rho); }

double flip_radius() { return std::exp(-std::numbers::sqrt2); }

CuspTruncation CuspTruncation::from_log(double L1, double L2) {
  if (!std::isfinite(L1) || !std::isfinite(L2)) throw DomainError("cusp truncation radii must be positive");
  if (L1 > L2) throw DomainError("cusp truncation needs rho1 <= rho2");
  require_cusp_log(L2);
  return {L1, L2};
}

CuspTruncation CuspTruncation::from_radii(double rho1, double rho2) {
  if (!(rho1 > 0) || !(rho2 > 0)) throw DomainError("cusp truncation radii must be positive");
  return from_log(std::log(rho1), std::log(rho2));
}

CuspTruncation CuspTruncation::from_eps(double eps1, double eps2) {
  if (!(eps1 > 0) || !(eps2 > 0)) throw DomainError("horocycle lengths must be positive");
  return from_log(-2 * pi / eps1, -2 * pi / eps2);
}

double CuspTruncation::rho1() const { return std::exp(log_rho1); }
double CuspTruncation::rho2() const { return std::exp(log_rho2); }

CuspCoords cusp_epstein_coords(double rho) {
  if (!(rho > 0) || !(rho < 1)) throw DomainError("cusp coordinates need 0 < rho < 1");
  double L = std::log(rho);
  double A = L * L + 2 * L + 2;
  return {std::abs(rho * (L * L - 2) / A), rho <= flip_radius(), -2 * rho * L / A};
}

double cusp_H_integral_log(double L1, double L2) {
  return pi / 12 * (L2 * L2 * L2 - L1 * L1 * L1);
}

double cusp_H_integral(double rho1, double rho2) {
  CuspTruncation t = CuspTruncation::from_radii(rho1, rho2);
  return cusp_H_integral_log(t.log_rho1, t.log_rho2);
}

double c_term_log(double L) {
  return pi * std::log1p(2 / L + 2 / (L * L)) - 0.5 * pi * std::log1p(4 / (L * L * L * L));
}

double c_term(double rho) {
  if (!(rho > 0) || !(rho < 1)) throw DomainError("c(rho) needs 0 < rho < 1");
  return c_term_log(std::log(rho));
}

double cusp_volume_log(double L1, double L2) {
  return cusp_H_integral_log(L1, L2) - 0.5 * pi * (L2 - L1) + c_term_log(L2) - c_term_log(L1);
}

double cusp_volume(double rho1, double rho2) {
  CuspTruncation t = CuspTruncation::from_radii(rho1, rho2);
  return cusp_volume_log(t.log_rho1, t.log_rho2);
}

double caterpillar_log(double L) { return -0.5 * pi * L + pi / (6 * L); }

double edge_log(double L) { return pi * pi / 8 * std::abs(-L - 1.0 / (-L)); }

double caterpillar_volume_log(double L) {
  double g2 = L * L;
  auto G = [g2](double w) {
    double w2 = w * w;
    return -g2 * w2 * w2 / 8 + 2 * g2 * w2 * w / 3 - g2 * w2 - w2 / 4 + std::log1p(g2 * w2);
  };
  return pi * (G(1.0) - G(1.0 + 1.0 / L));
}

double boundary_term_b_log(double L) { return caterpillar_log(L) + edge_log(L); }

double boundary_term_b(double rho) {
  if (!(rho > 0) || !(rho < flip_radius())) throw DomainError("b(rho) needs 0 < rho < e^{-sqrt 2}");
  return boundary_term_b_log(std::log(rho));
}

double boundary_term_b_eps(double eps) {
  if (!(eps > 0)) throw DomainError("horocycle length must be positive");
  double L = -2 * pi / eps;
  require_cusp_log(L);
  return boundary_term_b_log(L);
}

double boundary_term_b_asymptote_log(double L) { return -(pi * pi / 8 + pi / 2) * L; }

double boundary_term_b_eps_leading(double eps) { return pi * pi * pi / (4 * eps) + pi * pi / eps; }

engine::WVolumeReport cusp_w_volume_log(double L1, double L2) {
  CuspTruncation t = CuspTruncation::from_log(L1, L2);
  engine::WVolumeReport rep;
  rep.label = "cusp closed form";
  rep.log_rho1 = t.log_rho1;
  rep.log_rho2 = t.log_rho2;
  rep.caterpillar_terms = {0.0, 0.0};
  rep.edge_terms = {0.0, 0.0};
  rep.edge_lengths = {0.0, 0.0};
  rep.plus_h_terms = {0.0, 0.0};
  if (L1 == L2) return rep;
  // Between the hemisphere through the Epstein point and the caterpillar
  // capped by the hyperplane.
  auto cap_shift = [](double L) {
    double g = -L;
    double q_edge = (1 + g * g) / (2 * g);
    double q_eps = std::sqrt(L * L * L * L + 4) / (-2 * L);
    return caterpillar_volume_log(L) + engine::hemisphere_arc_volume(q_edge) -
           engine::hemisphere_arc_volume(q_eps);
  };
  rep.volume = cusp_volume_log(L1, L2) + cap_shift(L2) - cap_shift(L1);
  rep.epstein_H_integral = cusp_H_integral_log(L1, L2);
  rep.caterpillar_terms = {caterpillar_log(L1), -caterpillar_log(L2)};
  rep.edge_lengths = {pi * std::abs(-L1 + 1 / L1), pi * std::abs(-L2 + 1 / L2)};
  rep.edge_terms = {edge_log(L1), -edge_log(L2)};
  rep.plus_h_terms = {1.5 * pi / L1, 1.5 * pi / L2};
  rep.edge_free_W = rep.volume - rep.epstein_H_integral - rep.caterpillar_terms[0] - rep.caterpillar_terms[1];
  rep.total_W = rep.edge_free_W - rep.edge_terms[0] - rep.edge_terms[1];
  return rep;
}

engine::WVolumeReport cusp_w_volume(double rho1, double rho2) {
  CuspTruncation t = CuspTruncation::from_radii(rho1, rho2);
  return cusp_w_volume_log(t.log_rho1, t.log_rho2);
}

std::vector<double> decade_schedule(int k0, int k1) {
  std::vector<double> out;
  for (int k = k0; k <= k1; ++k) out.push_back(-k * std::log(10.0));
  return out;
}

bool is_cauchy(const std::vector<LimitRow>& rows) {
  if (rows.size() < 3) return false;
  for (std::size_t i = 2; i < rows.size(); ++i)
    if (!(std::abs(rows[i].increment) < std::abs(rows[i - 1].increment))) return false;
  std::vector<double> x, y;
  for (const LimitRow& r : rows) {
    x.push_back(1.0 / std::abs(r.log_rho));
    y.push_back(r.renormalized);
  }
  fit::RemainderFit f = fit::fit_remainder(x, y);
  return f.ok && f.order > 0;
}

LimitResult truncated_cusp_renvol(double eps_bar, const std::vector<double>& schedule, LimitForm form,
                                  Route route, const engine::QuadratureConfig& cfg) {
  double Lbar = -2 * pi / eps_bar;
  if (!(eps_bar > 0)) throw ValidationError("eps_bar must be positive");
  require_cusp_log(Lbar);
  if (schedule.size() < 3) throw ValidationError("limit schedule needs at least three points");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] < Lbar)) throw ValidationError("schedule radii must lie inside the outer circle");
    if (i > 0 && !(schedule[i] < schedule[i - 1]))
      throw ValidationError("schedule must decrease monotonically toward the cusp");
  }
  LimitResult res;
  res.rows.resize(schedule.size());
  tbb::parallel_for(std::size_t{0}, schedule.size(), [&](std::size_t i) {
    double L = schedule[i];
    LimitRow& row = res.rows[i];
    row.log_rho = L;
    if (route == Route::direct) {
      auto region = engine::RegionSpec::log_annulus(i0_metric(), L, Lbar);
      row.W = engine::w_volume(region, cfg).total_W;
    } else {
      row.W = cusp_w_volume_log(L, Lbar).total_W;
    }
    row.edge = edge_log(L);
    if (form == LimitForm::rho) {
      row.parameter = std::exp(L);
      row.b = boundary_term_b_log(L);
      row.renormalized = row.W - 0.5 * pi * L + row.b;
    } else {
      double eps = 2 * pi / std::abs(L);
      row.parameter = eps;
      row.b = boundary_term_b_eps(eps);
      row.renormalized = row.W + pi * pi / eps + row.b;
    }
  });
  for (std::size_t i = 1; i < res.rows.size(); ++i)
    res.rows[i].increment = res.rows[i].renormalized - res.rows[i - 1].renormalized;
  std::vector<double> x, y;
  for (const LimitRow& r : res.rows) {
    x.push_back(1.0 / std::abs(r.log_rho));
    y.push_back(r.renormalized);
  }
  res.fit = fit::fit_remainder(x, y);
  res.limit_estimate = fit::fit_linear(x, y).intercept;
  res.last_term = y.back();
  res.cauchy = is_cauchy(res.rows);
  res.converged = res.cauchy && res.fit.ok && res.fit.order > 0;
  if (!res.converged)
    res.note = "sequence is not Cauchy: fitted order " + std::to_string(res.fit.order) +
               " in 1/|log rho|";
  return res;
}

CuspPerturbation CuspPerturbation::linear(cplx a) {
  CuspPerturbation p;
  p.psi = [a](cplx z) { return a * z; };
  p.dpsi = [a](cplx) { return a; };
  p.ddpsi = [](cplx) { return cplx{}; };
  p.dddpsi = [](cplx) { return cplx{}; };
  if (std::abs(a) > 0) p.radius = std::min(0.25, 0.25 / std::abs(a));
  return p;
}

CuspPerturbation CuspPerturbation::zero() { return linear(cplx{}); }

double CuspPerturbation::nu(cplx z) const {
  cplx P1 = 1.0 + z * dpsi(z);
  double l = std::log(std::abs(z));
  double h = 1.0 + psi(z).real() / l;
  return std::log(std::abs(P1)) - std::log(h);
}

cplx CuspPerturbation::nu_z(cplx z) const {
  cplx d = dpsi(z);
  cplx P1 = 1.0 + z * d;
  cplx dP1 = d + z * ddpsi(z);
  double l = std::log(std::abs(z));
  double re = psi(z).real();
  double h = 1.0 + re / l;
  cplx hz = 0.5 * d / l - re / (2.0 * z * l * l);
  return 0.5 * dP1 / P1 - hz / h;
}

double CuspPerturbation::nu_ratio_bound(int samples) const {
  double worst = 0.0;
  for (int k = 1; k <= samples; ++k) {
    double r = radius * std::pow(0.5, k % 16 + 1);
    double th = 2 * pi * k / samples;
    cplx z = std::polar(r, th);
    worst = std::max(worst, std::abs(nu(z)) / r);
  }
  return worst;
}

engine::PlaneField CuspPerturbation::field() const {
  CuspPerturbation self = *this;
  return {[self](cplx z) { return self.nu(z); }, [self](cplx z) { return self.nu_z(z); }};
}

hs::ConformalMetric CuspPerturbation::metric() const {
  CuspPerturbation p = *this;
  hs::HoloMap F;
  F.f = [p](cplx z) { return z * std::exp(p.psi(z)); };
  F.d1 = [p](cplx z) { return std::exp(p.psi(z)) * (1.0 + z * p.dpsi(z)); };
  F.r2 = [p](cplx z) {
    cplx d = p.dpsi(z), P1 = 1.0 + z * d, dP1 = d + z * p.ddpsi(z);
    return (d * P1 + dP1) / P1;
  };
  F.r3 = [p](cplx z) {
    cplx d = p.dpsi(z), dd = p.ddpsi(z);
    cplx P1 = 1.0 + z * d, dP1 = d + z * dd, ddP1 = 2.0 * dd + z * p.dddpsi(z);
    cplx Q = d * P1 + dP1;
    cplx dQ = dd * P1 + d * dP1 + ddP1;
    return (d * Q + dQ) / P1;
  };
  return hs::pullback(i0_metric(), F, hs::Domain{hs::Annulus{0.0, 0.0, radius}});
}

PerturbedLimitResult perturbed_cusp_renvol(const CuspPerturbation& pert, double eps_bar,
                                           const std::vector<double>& schedule,
                                           const engine::QuadratureConfig& cfg) {
  double Lbar = -2 * pi / eps_bar;
  if (std::exp(Lbar) > pert.radius) throw ValidationError("outer circle lies outside the perturbation disk");
  PerturbedLimitResult res;
  res.base = truncated_cusp_renvol(eps_bar, schedule, LimitForm::rho, Route::closed_form, cfg);
  engine::PlaneField nu = pert.field();
  res.polyakov_terms.resize(schedule.size());
  tbb::parallel_for(std::size_t{0}, schedule.size(), [&](std::size_t i) {
    auto region = engine::RegionSpec::log_annulus(i0_metric(), schedule[i], Lbar);
    res.polyakov_terms[i] = engine::polyakov_delta(region, nu, cfg);
  });
  std::vector<double> x;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    res.totals.push_back(res.base.rows[i].renormalized + res.polyakov_terms[i]);
    x.push_back(1.0 / std::abs(schedule[i]));
  }
  res.fit = fit::fit_remainder(x, res.totals);
  res.limit_estimate = fit::fit_linear(x, res.totals).intercept;
  res.converged = res.base.converged && res.fit.ok && res.fit.order > 0;
  return res;
}

}  // namespace wvol::cusp
