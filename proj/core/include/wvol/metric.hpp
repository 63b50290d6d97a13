#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "wvol/halfspace.hpp"

namespace wvol::hs {

// 2-jet of a Liouville field: phi, phi_z, phi_zz, phi_{z zbar}.
struct Jet {
  double phi = 0.0;
  cplx phi_z{};
  cplx phi_zz{};
  double phi_zzbar = 0.0;
};

// Rotationally symmetric field written in s = log|z - center|: phi = f(s),
// f1 = df/ds, f2 = d^2f/ds^2. Everything downstream that needs tiny radii
// works with s directly, so radii below the double range stay usable.
class RadialProfile {
 public:
  virtual ~RadialProfile() = default;
  virtual double f(double s) const = 0;
  virtual double f1(double s) const = 0;
  virtual double f2(double s) const = 0;
  // g = e^{-phi}/rho = e^{-f - s}.
  virtual double g(double s) const;
  virtual std::string name() const { return "radial"; }
};

using RadialProfilePtr = std::shared_ptr<const RadialProfile>;

// Radial field u(s) with its first two s-derivatives.
struct RadialField {
  std::function<double(double)> u;
  std::function<double(double)> us;
  std::function<double(double)> uss;

  static RadialField constant(double c);
};

// Profile of e^{2u} times the base metric.
RadialProfilePtr perturb(RadialProfilePtr base, RadialField u);

class FlatProfile final : public RadialProfile {
 public:
  explicit FlatProfile(double c = 0.0) : c_(c) {}
  double f(double) const override { return c_; }
  double f1(double) const override { return 0.0; }
  double f2(double) const override { return 0.0; }
  std::string name() const override { return "flat"; }

 private:
  double c_;
};

struct Annulus {
  cplx center{};
  double r_in = 0.0;  // 0 means punctured at the center
  double r_out = 1.0;
};

// {r_in <= |z| <= r_out, theta_a <= arg z <= theta_b} in the upper half-plane.
struct Sector {
  double theta_a = 0.0;
  double theta_b = 3.141592653589793;
  double r_in = 1.0;
  double r_out = 2.0;
};

struct WholePlane {};

class Domain {
 public:
  using Shape = std::variant<Annulus, Sector, WholePlane>;

  Domain() : shape_(WholePlane{}) {}
  Domain(Shape shape) : shape_(shape) {}

  const Shape& shape() const { return shape_; }
  // Chart w -> z: the domain is the preimage of the shape.
  const std::optional<MoebiusMap>& chart() const { return chart_; }
  Domain pulled_back(const MoebiusMap& m) const;

  bool contains(cplx w) const;
  // Lower bound for the distance from w to the boundary, in the w plane.
  double boundary_distance(cplx w) const;
  std::string describe() const;

 private:
  Shape shape_;
  std::optional<MoebiusMap> chart_;
};

enum class DerivativeMode { analytic, finite_difference };

struct HoloMap;

class ConformalMetric {
 public:
  using Field = std::function<double(cplx)>;
  using JetFn = std::function<Jet(cplx)>;

  // Without a jet callback the metric always differentiates numerically.
  ConformalMetric(Domain domain, Field phi, JetFn jet = {});

  static ConformalMetric radial(RadialProfilePtr profile, Annulus annulus);

  const Domain& domain() const { return domain_; }
  DerivativeMode mode() const { return mode_; }
  ConformalMetric with_mode(DerivativeMode mode) const;
  bool has_analytic_jet() const { return static_cast<bool>(jet_); }

  double phi(cplx z) const;
  Jet jet(cplx z) const;
  Jet analytic_jet(cplx z) const;
  Jet fd_jet(cplx z, double h) const;
  Jet fd_jet(cplx z) const;

  // Non-null for rotationally symmetric metrics.
  const RadialProfile* radial_profile() const { return profile_.get(); }
  RadialProfilePtr radial_profile_ptr() const { return profile_; }
  cplx center() const { return center_; }

  // The metric e^{2r} g.
  ConformalMetric shifted(double r) const;
  // f^* g = e^{2(phi o f + log|f'|)}|dw|^2 on f^{-1}(domain).
  ConformalMetric pullback(const MoebiusMap& f) const;

  friend ConformalMetric pullback(const ConformalMetric& g, const HoloMap& F, Domain domain);

 private:
  Domain domain_;
  Field phi_;
  JetFn jet_;
  DerivativeMode mode_ = DerivativeMode::analytic;
  RadialProfilePtr profile_;
  cplx center_{};
};

// Holomorphic map with f', f''/f' and f'''/f'.
struct HoloMap {
  std::function<cplx(cplx)> f;
  std::function<cplx(cplx)> d1;
  std::function<cplx(cplx)> r2;
  std::function<cplx(cplx)> r3;
};

// F^* g = e^{2(phi o F + log|F'|)}|dw|^2 on the given domain.
ConformalMetric pullback(const ConformalMetric& g, const HoloMap& F, Domain domain);

// Central-difference step used in finite-difference mode.
double fd_step(cplx z);

Jet liouville_jet(const ConformalMetric& g, cplx z);
// K = -4 phi_{z zbar} e^{-2 phi}.
double gaussian_curvature(const ConformalMetric& g, cplx z);

// Jets of a radial profile at a point z = center + e^{s + i theta}.
Jet radial_jet(const RadialProfile& p, cplx w);

}  // namespace wvol::hs
