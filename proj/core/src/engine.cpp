#include "wvol/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wvol/errors.hpp"

namespace wvol::engine {

namespace {

constexpr double pi = std::numbers::pi;

struct ProfileJet {
  double R, T, dT;
};

ProfileJet profile_jet(const hs::RadialProfile& p, double s) {
  double g = p.g(s), f1 = p.f1(s), f2 = p.f2(s);
  double g2 = g * g;
  double D = 1.0 + g2 * f1 * f1;
  double dg = -g * (f1 + 1.0);
  double dD = 2.0 * g2 * f1 * (f2 - f1 * (f1 + 1.0));
  ProfileJet j;
  j.R = 1.0 + 2.0 * g2 * f1 / D;
  j.T = 2.0 * g / D;
  j.dT = 2.0 * dg / D - 2.0 * g * dD / (D * D);
  return j;
}

// Quantities (1 + tr B + det B) and det B in scaled form.
std::pair<double, double> shape_invariants(const hs::RadialProfile& p, double s) {
  double g = p.g(s), f1 = p.f1(s), f2 = p.f2(s);
  double g2 = g * g;
  double Q = f2 - 2.0 * f1 - f1 * f1;
  double det = g2 * g2 * (f2 * f2 - Q * Q);
  double tr = 2.0 * f2 * g2;
  return {1.0 + tr + det, det};
}

bool segments_cross(std::pair<double, double> a, std::pair<double, double> b,
                    std::pair<double, double> c, std::pair<double, double> d) {
  auto orient = [](auto p, auto q, auto r) {
    return (q.first - p.first) * (r.second - p.second) - (q.second - p.second) * (r.first - p.first);
  };
  double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace

BoundaryJet boundary_jet(const hs::RadialProfile& p, double s) { return {s, p.g(s), p.f1(s)}; }

BoundaryJet boundary_jet(const Circle& c, double phi, double dphi_drho) {
  if (!(c.radius > 0)) throw DomainError("boundary circle needs a positive radius");
  return {std::log(c.radius), std::exp(-phi) / c.radius, c.radius * dphi_drho};
}

std::pair<double, double> caterpillar_bracket(const Circle& c, double phi, double dphi_drho) {
  (void)phi;
  return {-dphi_drho, 1.0 / c.radius};
}

std::pair<double, double> caterpillar_profile(double g, double w) {
  double den = 1.0 / (g * g) + w * w;
  return {1.0 - 2.0 * w / den, 2.0 / (g * den)};
}

HyperbolicPoint3 caterpillar_point(const Circle& c, double phi, double dphi_drho, double arc,
                                   double v) {
  auto [vs, vp] = caterpillar_bracket(c, phi, dphi_drho);
  double lo = std::min(vs, vp), hi = std::max(vs, vp);
  double slack = 1e-12 * std::max(std::abs(lo), std::abs(hi));
  if (v < lo - slack || v > hi + slack) throw DomainError("caterpillar parameter outside its bracket");
  BoundaryJet b = boundary_jet(c, phi, dphi_drho);
  auto [r, t] = caterpillar_profile(b.g, v * c.radius);
  cplx dir = std::polar(1.0, arc / c.radius);
  return {c.center + c.radius * r * dir, c.radius * t};
}

double caterpillar_H_integral(const BoundaryJet& b, int orientation) {
  auto F = [](double w) { return w * w - w * w * w / 3.0; };
  double cat = 0.5 * pi * b.g * b.g * (F(1.0) - F(b.w_surface()));
  return -static_cast<double>(orientation) * cat;
}

double caterpillar_H_integral(const Circle& c, double phi, double dphi_drho, int orientation) {
  return caterpillar_H_integral(boundary_jet(c, phi, dphi_drho), orientation);
}

double edge_term(double exterior_angle, double length) {
  if (!(exterior_angle > 0) || exterior_angle > pi) throw ValidationError("exterior angle must lie in (0, pi]");
  if (length < 0) throw ValidationError("edge length must be non-negative");
  return 0.25 * exterior_angle * length;
}

double edge_length(const BoundaryJet& b) { return pi * std::abs(1.0 / b.g - b.g); }

double edge_length(const Circle& c, double phi) {
  return edge_length(boundary_jet(c, phi, 0.0));
}

double caterpillar_volume(const BoundaryJet& b, const QuadratureConfig& cfg) {
  double g = b.g;
  auto integrand = [g](double w) {
    double den = 1.0 / (g * g) + w * w;
    double r = 1.0 - 2.0 * w / den;
    double t = 2.0 / (g * den);
    double dt = -4.0 * w / (g * den * den);
    return r * r / (t * t * t) * dt;
  };
  return pi * quad::integrate(integrand, b.w_surface(), 1.0, cfg).value;
}

double hemisphere_arc_volume(double q) { return pi * (0.5 * q * q - 0.5 - std::log(q)); }

RegionSpec RegionSpec::annulus(hs::ConformalMetric metric, double rho1, double rho2) {
  if (!(rho1 > 0) || !(rho2 > 0)) throw ValidationError("annulus radii must be positive");
  return log_annulus(std::move(metric), std::log(rho1), std::log(rho2));
}

RegionSpec RegionSpec::log_annulus(hs::ConformalMetric metric, double s1, double s2) {
  RegionSpec r{std::move(metric), s1, s2};
  r.validate();
  return r;
}

RegionSpec RegionSpec::with_metric(hs::ConformalMetric m) const {
  RegionSpec r = *this;
  r.metric = std::move(m);
  r.validate();
  return r;
}

void RegionSpec::validate() const {
  if (!metric.radial_profile())
    throw ValidationError("the W-volume engine needs a rotationally symmetric metric");
  if (!std::isfinite(s1) || !std::isfinite(s2)) throw ValidationError("annulus radii must be finite");
  if (s1 > s2) throw ValidationError("inner radius exceeds outer radius");
  if (euler_characteristic != 0) throw ValidationError("an annulus has Euler characteristic 0");
  if (std::abs(inner_orientation) != 1 || std::abs(outer_orientation) != 1 ||
      inner_orientation == outer_orientation)
    throw ValidationError("boundary orientations must be opposite unit signs");
}

const hs::RadialProfile& RegionSpec::profile() const { return *metric.radial_profile(); }

std::pair<double, double> epstein_profile(const hs::RadialProfile& p, double s) {
  ProfileJet j = profile_jet(p, s);
  return {j.R, j.T};
}

QuadResult epstein_profile_volume(const hs::RadialProfile& p, double s1, double s2,
                                  const QuadratureConfig& cfg) {
  auto integrand = [&p](double s) {
    ProfileJet j = profile_jet(p, s);
    return pi * j.R * j.R / (j.T * j.T * j.T) * (j.T + j.dT);
  };
  return quad::integrate(integrand, s1, s2, cfg);
}

QuadResult epstein_region_volume(const hs::RadialProfile& p, double s1, double s2,
                                 const QuadratureConfig& cfg) {
  QuadResult r = epstein_profile_volume(p, s1, s2, cfg);
  auto cap = [&p](double s) {
    ProfileJet j = profile_jet(p, s);
    return hemisphere_arc_volume(std::hypot(j.R, j.T) / j.T);
  };
  r.value += cap(s2) - cap(s1);
  return r;
}

QuadResult epstein_H_integral(const hs::RadialProfile& p, double s1, double s2,
                              const QuadratureConfig& cfg) {
  auto integrand = [&p](double s) {
    double g = p.g(s);
    auto [den, det] = shape_invariants(p, s);
    (void)den;
    return 0.25 * pi * (1.0 - det) / (g * g);
  };
  return quad::integrate(integrand, s1, s2, cfg);
}

void check_embedded(const hs::RadialProfile& p, double s1, double s2, int samples) {
  if (s1 == s2) return;
  samples = std::max(samples, 8);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(samples + 1);
  int r_sign = 0, a_sign = 0;
  for (int i = 0; i <= samples; ++i) {
    double s = s1 + (s2 - s1) * i / samples;
    ProfileJet j = profile_jet(p, s);
    auto [den, det] = shape_invariants(p, s);
    (void)det;
    if (!std::isfinite(j.R) || !std::isfinite(j.T) || !(j.T > 0))
      throw NotEmbedded("Epstein profile is not finite at s = " + std::to_string(s));
    if (std::abs(den) <= 1e-12) throw DegenerateImmersion("area density vanishes at s = " + std::to_string(s));
    int as = den > 0 ? 1 : -1;
    if (a_sign != 0 && as != a_sign)
      throw NotEmbedded("area density changes sign: offset the metric by a constant first");
    a_sign = as;
    if (j.R == 0) throw NotEmbedded("Epstein surface meets the rotation axis");
    int rs = j.R > 0 ? 1 : -1;
    if (r_sign != 0 && rs != r_sign)
      throw NotEmbedded("Epstein surface crosses the rotation axis: offset the metric by a constant first");
    r_sign = rs;
    // log|r| and log t are injective coordinates on the meridian quadrant.
    pts.emplace_back(s + std::log(std::abs(j.R)), s + std::log(j.T));
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    for (std::size_t k = i + 2; k + 1 < pts.size(); ++k)
      if (segments_cross(pts[i], pts[i + 1], pts[k], pts[k + 1]))
        throw NotEmbedded("Epstein meridian profile self-intersects");
}

WVolumeReport w_volume(const RegionSpec& region, const QuadratureConfig& cfg, const EngineOptions& opt) {
  region.validate();
  cfg.validate();
  const hs::RadialProfile& p = region.profile();
  WVolumeReport rep;
  rep.label = p.name();
  rep.log_rho1 = region.s1;
  rep.log_rho2 = region.s2;
  rep.caterpillar_terms = {0.0, 0.0};
  rep.edge_terms = {0.0, 0.0};
  rep.edge_lengths = {0.0, 0.0};
  rep.plus_h_terms = {0.0, 0.0};
  rep.plus_h_included = opt.include_plus_h;
  if (region.s1 == region.s2) return rep;
  if (opt.check_embedding) check_embedded(p, region.s1, region.s2, opt.embedding_samples);

  QuadResult vol = epstein_profile_volume(p, region.s1, region.s2, cfg);
  QuadResult hint = epstein_H_integral(p, region.s1, region.s2, cfg);

  BoundaryJet in = boundary_jet(p, region.s1);
  BoundaryJet out = boundary_jet(p, region.s2);
  auto cap = [&cfg](const BoundaryJet& b) {
    auto [r, t] = caterpillar_profile(b.g, 1.0);
    (void)r;
    return caterpillar_volume(b, cfg) + hemisphere_arc_volume(1.0 / t);
  };
  rep.volume = vol.value + cap(out) - cap(in);
  rep.epstein_H_integral = hint.value;

  const BoundaryJet* bj[2] = {&in, &out};
  const int orient[2] = {region.inner_orientation, region.outer_orientation};
  double all_cat = 0.0, all_edge = 0.0, all_plus = 0.0;
  for (int i = 0; i < 2; ++i) {
    rep.caterpillar_terms[i] = caterpillar_H_integral(*bj[i], orient[i]);
    rep.edge_lengths[i] = edge_length(*bj[i]);
    rep.edge_terms[i] = -orient[i] * edge_term(pi / 2, rep.edge_lengths[i]);
    rep.plus_h_terms[i] = -1.5 * pi * (1.0 + bj[i]->f1);
    all_cat += rep.caterpillar_terms[i];
    all_edge += rep.edge_terms[i];
    all_plus += rep.plus_h_terms[i];
  }
  rep.edge_free_W = rep.volume - rep.epstein_H_integral - all_cat;
  rep.total_W = rep.edge_free_W - all_edge + (opt.include_plus_h ? all_plus : 0.0);
  rep.error_estimate = vol.error + hint.error;
  rep.tree_depth = std::max(vol.depth, hint.depth);
  rep.cells = vol.cells + hint.cells;
  return rep;
}

RescaleCheck rescale_identity_check(const RegionSpec& region, double r, const QuadratureConfig& cfg) {
  WVolumeReport a = w_volume(region, cfg);
  WVolumeReport b = w_volume(region.with_metric(region.metric.shifted(r)), cfg);
  return {b.total_W - a.total_W, -r * pi * region.euler_characteristic, b.edge_free_W - a.edge_free_W};
}

}  // namespace wvol::engine
