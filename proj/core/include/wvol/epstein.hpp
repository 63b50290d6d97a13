#pragma once

#include <Eigen/Core>

#include "wvol/metric.hpp"

namespace wvol::eps {

using hs::cplx;
using hs::HyperbolicPoint3;
using Mat2 = Eigen::Matrix2d;

// Tensors are stored in the real (x, y) basis.
struct EpsteinFrame {
  cplx base{};
  HyperbolicPoint3 surface_point{cplx{}, 1.0};
  // The normal geodesic ray from surface_point ends at this ideal point.
  cplx normal_endpoint{};
  Mat2 I_hat = Mat2::Identity();
  Mat2 II_hat = Mat2::Zero();
  Mat2 III_hat = Mat2::Zero();
  Mat2 B_hat = Mat2::Zero();
  cplx q{};
  double mean_curvature = 1.0;
  double area_density = 0.25;
};

HyperbolicPoint3 epstein_point(const hs::Jet& j, cplx z);
HyperbolicPoint3 epstein_point(const hs::ConformalMetric& g, cplx z);

EpsteinFrame forms_at_infinity(const hs::Jet& j, cplx z);
EpsteinFrame forms_at_infinity(const hs::ConformalMetric& g, cplx z);

// (1 - det B) / (1 + tr B + det B); throws DegenerateImmersion at a zero denominator.
double mean_curvature_at(const hs::ConformalMetric& g, cplx z);
// 1/4 (1 + tr B + det B) e^{2 phi}.
double area_density_induced(const hs::ConformalMetric& g, cplx z);

HyperbolicPoint3 equidistant_offset(const hs::ConformalMetric& g, cplx z, double r);

// Relative residual of |w - z|^2 + (t - e^{-phi})^2 = e^{-2 phi} at the surface point.
double horosphere_defect(const hs::ConformalMetric& g, cplx z);

}  // namespace wvol::eps
