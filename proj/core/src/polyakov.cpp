#include <cmath>
#include <numbers>

#include "wvol/engine.hpp"
#include "wvol/errors.hpp"

namespace wvol::engine {

namespace {
constexpr double pi = std::numbers::pi;
}

// In s = log rho: |grad u|^2 da = u_s^2 ds dtheta and K da = -2 f2 ds dtheta,
// while k ds integrates to (1 + f1) dtheta on an outward circle.
double polyakov_delta(const RegionSpec& region, const hs::RadialField& u, const QuadratureConfig& cfg) {
  region.validate();
  if (region.s1 == region.s2) return 0.0;
  const hs::RadialProfile& p = region.profile();
  auto integrand = [&](double s) {
    double us = u.us(s);
    return us * us - 2.0 * p.f2(s) * u.u(s);
  };
  double bulk = quad::integrate(integrand, region.s1, region.s2, cfg).value;
  auto edge = [&](double s) { return (1.0 + p.f1(s)) * u.u(s); };
  return -0.5 * pi * bulk - pi * (edge(region.s2) - edge(region.s1));
}

double polyakov_delta(const RegionSpec& region, const PlaneField& u, const QuadratureConfig& cfg) {
  region.validate();
  if (region.s1 == region.s2) return 0.0;
  if (region.s1 < -700) throw DomainError("non-radial fields need radii in double range");
  const hs::RadialProfile& p = region.profile();
  const cplx c = region.metric.center();
  auto at = [c](double s, double th) { return c + std::polar(std::exp(s), th); };
  auto integrand = [&](double s, double th) {
    cplx z = at(s, th);
    double rho2 = std::exp(2.0 * s);
    return 4.0 * std::norm(u.u_z(z)) * rho2 - 2.0 * p.f2(s) * u.u(z);
  };
  double bulk = quad::integrate2d(integrand, region.s1, region.s2, 0.0, 2 * pi, cfg).value;
  auto circle_mean = [&](double s) {
    auto f = [&](double th) { return u.u(at(s, th)); };
    return quad::integrate(f, 0.0, 2 * pi, cfg).value;
  };
  double b2 = (1.0 + p.f1(region.s2)) * circle_mean(region.s2);
  double b1 = (1.0 + p.f1(region.s1)) * circle_mean(region.s1);
  return -0.25 * bulk - 0.5 * (b2 - b1);
}

}  // namespace wvol::engine
