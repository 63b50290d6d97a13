#include "wvol/epstein.hpp"
#include <Eigen/LU>

#include <cmath>

#include "wvol/errors.hpp"

namespace wvol::eps {

HyperbolicPoint3 epstein_point(const hs::Jet& j, cplx z) {
  // grad phi = 2 phi_zbar = 2 conj(phi_z) as a complex number.
  cplx grad = 2.0 * std::conj(j.phi_z);
  double em = std::exp(-j.phi);
  double x = em * em * std::norm(grad);
  double den = 1.0 + x;
  return {z + 2.0 * em * em * grad / den, 2.0 * em / den};
}

HyperbolicPoint3 epstein_point(const hs::ConformalMetric& g, cplx z) {
  return epstein_point(g.jet(z), z);
}

EpsteinFrame forms_at_infinity(const hs::Jet& j, cplx z) {
  EpsteinFrame fr;
  fr.base = z;
  fr.normal_endpoint = z;
  fr.surface_point = epstein_point(j, z);
  fr.q = j.phi_zz - j.phi_z * j.phi_z;
  double e2 = std::exp(2.0 * j.phi);
  fr.I_hat = e2 * Mat2::Identity();
  double a = 4.0 * j.phi_zzbar, rq = 4.0 * fr.q.real(), iq = 4.0 * fr.q.imag();
  fr.II_hat << a + rq, -iq, -iq, a - rq;
  fr.B_hat = fr.II_hat / e2;
  fr.III_hat = fr.B_hat.transpose() * fr.I_hat * fr.B_hat;
  double tr = fr.B_hat.trace(), det = fr.B_hat.determinant();
  double den = 1.0 + tr + det;
  fr.area_density = 0.25 * den * e2;
  if (std::abs(den) <= 1e-14 * (1.0 + std::abs(tr) + std::abs(det))) {
    fr.mean_curvature = NAN;
  } else {
    fr.mean_curvature = (1.0 - det) / den;
  }
  return fr;
}

EpsteinFrame forms_at_infinity(const hs::ConformalMetric& g, cplx z) {
  return forms_at_infinity(g.jet(z), z);
}

double mean_curvature_at(const hs::ConformalMetric& g, cplx z) {
  EpsteinFrame fr = forms_at_infinity(g, z);
  if (std::isnan(fr.mean_curvature))
    throw DegenerateImmersion("principal curvature -1: 1 + tr B + det B vanishes");
  return fr.mean_curvature;
}

double area_density_induced(const hs::ConformalMetric& g, cplx z) {
  return forms_at_infinity(g, z).area_density;
}

HyperbolicPoint3 equidistant_offset(const hs::ConformalMetric& g, cplx z, double r) {
  return epstein_point(g.shifted(r), z);
}

double horosphere_defect(const hs::ConformalMetric& g, cplx z) {
  hs::Jet j = g.jet(z);
  HyperbolicPoint3 p = epstein_point(j, z);
  double r = std::exp(-j.phi);
  double lhs = std::norm(p.horizontal() - z) + (p.height() - r) * (p.height() - r);
  return std::abs(lhs - r * r) / (r * r);
}

}  // namespace wvol::eps
