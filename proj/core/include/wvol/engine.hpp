#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wvol/metric.hpp"
#include "wvol/quadrature.hpp"

namespace wvol::engine {

using hs::cplx;
using hs::HyperbolicPoint3;
using quad::QuadratureConfig;
using quad::QuadResult;

struct Circle {
  cplx center{};
  double radius = 1.0;
};

// A round boundary circle of a radial metric in scaled form: s = log radius,
// g = e^{-phi}/rho and f1 = rho phi'(rho). Caterpillar and edge quantities are
// invariant under dilation and depend on (g, f1) only.
struct BoundaryJet {
  double s = 0.0;
  double g = 1.0;
  double f1 = 0.0;

  // Scaled caterpillar parameter w = v rho runs from -f1 (surface) to 1 (plane).
  double w_surface() const { return -f1; }
};

BoundaryJet boundary_jet(const hs::RadialProfile& p, double s);
BoundaryJet boundary_jet(const Circle& c, double phi, double dphi_drho);

// Bracket [v_surface, v_plane] of the caterpillar parameter at this circle.
std::pair<double, double> caterpillar_bracket(const Circle& c, double phi, double dphi_drho);
// Point of the boundary Epstein tube at arclength s along the circle and parameter v.
HyperbolicPoint3 caterpillar_point(const Circle& c, double phi, double dphi_drho, double arc,
                                   double v);
// Scaled meridian profile (r/rho, t/rho) of the caterpillar at parameter w.
std::pair<double, double> caterpillar_profile(double g, double w);

// -1/2 int_C H da_C for an outward (orientation +1) circle; the sign flips for -1.
double caterpillar_H_integral(const BoundaryJet& b, int orientation);
double caterpillar_H_integral(const Circle& c, double phi, double dphi_drho, int orientation);

// 1/4 theta l.
double edge_term(double exterior_angle, double length);
double edge_length(const BoundaryJet& b);
double edge_length(const Circle& c, double phi);

// Volume swept between the caterpillar and the axis, and the hemisphere arc
// from the caterpillar edge to the top, both scale free.
double caterpillar_volume(const BoundaryJet& b, const QuadratureConfig& cfg);
double hemisphere_arc_volume(double q);

struct RegionSpec {
  hs::ConformalMetric metric;
  double s1 = 0.0;  // log of the inner radius
  double s2 = 0.0;  // log of the outer radius
  int euler_characteristic = 0;
  int inner_orientation = -1;
  int outer_orientation = +1;

  static RegionSpec annulus(hs::ConformalMetric metric, double rho1, double rho2);
  static RegionSpec log_annulus(hs::ConformalMetric metric, double s1, double s2);
  RegionSpec with_metric(hs::ConformalMetric m) const;
  void validate() const;
  const hs::RadialProfile& profile() const;
};

struct WVolumeReport {
  std::string label;
  double log_rho1 = 0.0;
  double log_rho2 = 0.0;
  double volume = 0.0;
  double epstein_H_integral = 0.0;
  // Per boundary, index 0 inner and 1 outer. Signed so that
  // total_W = volume - epstein_H_integral - sum(caterpillar) - sum(edge).
  std::vector<double> caterpillar_terms;
  std::vector<double> edge_terms;
  std::vector<double> edge_lengths;
  // -3/2 int (1 + H) da over each caterpillar; added to total_W only when included.
  std::vector<double> plus_h_terms;
  bool plus_h_included = false;
  // volume - epstein_H_integral - sum(caterpillar).
  double edge_free_W = 0.0;
  double total_W = 0.0;
  double error_estimate = 0.0;
  int tree_depth = 0;
  int cells = 0;

  bool operator==(const WVolumeReport&) const = default;
};

struct EngineOptions {
  bool include_plus_h = false;
  bool check_embedding = true;
  int embedding_samples = 256;
};

WVolumeReport w_volume(const RegionSpec& region, const QuadratureConfig& cfg,
                       const EngineOptions& opt = {});

// Volume bounded by the Epstein surface over [s1, s2] and the two hemispheres
// through its boundary points.
QuadResult epstein_region_volume(const hs::RadialProfile& p, double s1, double s2,
                                 const QuadratureConfig& cfg);
// Integral over [s1, s2] of the Epstein volume integrand alone.
QuadResult epstein_profile_volume(const hs::RadialProfile& p, double s1, double s2,
                                  const QuadratureConfig& cfg);
// 1/2 int H da over the Epstein annulus.
QuadResult epstein_H_integral(const hs::RadialProfile& p, double s1, double s2,
                              const QuadratureConfig& cfg);
// Scaled Epstein profile (R/rho, T/rho) at s.
std::pair<double, double> epstein_profile(const hs::RadialProfile& p, double s);

// Sampled test: the meridian profile is a simple curve off the axis and the
// area density keeps one sign. Throws NotEmbedded or DegenerateImmersion.
void check_embedded(const hs::RadialProfile& p, double s1, double s2, int samples);

// Field on the plane given with u_z.
struct PlaneField {
  std::function<double(cplx)> u;
  std::function<cplx(cplx)> u_z;
};

// Predicted W(e^{2u} g) - W(g) for the region's radial metric g, with K the
// scalar curvature (twice the Gaussian curvature).
double polyakov_delta(const RegionSpec& region, const hs::RadialField& u, const QuadratureConfig& cfg);
double polyakov_delta(const RegionSpec& region, const PlaneField& u, const QuadratureConfig& cfg);

struct RescaleCheck {
  double lhs = 0.0;  // W(e^{2r} g) - W(g)
  double rhs = 0.0;  // -r pi chi
  double lhs_edge_free = 0.0;
};

RescaleCheck rescale_identity_check(const RegionSpec& region, double r, const QuadratureConfig& cfg);

}  // namespace wvol::engine
