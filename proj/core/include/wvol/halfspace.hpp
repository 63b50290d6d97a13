#pragma once

#include <complex>
#include <variant>

namespace wvol::hs {

using cplx = std::complex<double>;
// Points of the plane are plain complex numbers.
using ComplexPoint = cplx;

struct Infinity {
  bool operator==(const Infinity&) const = default;
};

// A point of the Riemann sphere.
using SpherePoint = std::variant<cplx, Infinity>;

double polar_rho(cplx z);
// Argument in [0, 2pi).
double polar_theta(cplx z);

class HyperbolicPoint3 {
 public:
  HyperbolicPoint3(cplx horizontal, double height);

  cplx horizontal() const { return z_; }
  double height() const { return t_; }

 private:
  cplx z_;
  double t_;
};

double hyp_distance(const HyperbolicPoint3& p, const HyperbolicPoint3& q);

class MoebiusMap {
 public:
  MoebiusMap();
  // Normalized so that ad - bc = 1; throws if the matrix is singular.
  MoebiusMap(cplx a, cplx b, cplx c, cplx d);

  static MoebiusMap identity() { return {}; }
  static MoebiusMap dilation(cplx k);
  static MoebiusMap translation(cplx b);

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }

  MoebiusMap compose(const MoebiusMap& inner) const;  // this o inner
  MoebiusMap inverse() const;

  SpherePoint apply(const SpherePoint& z) const;
  // Boundary action on a finite point; throws DomainError at the pole.
  cplx apply_finite(cplx z) const;
  HyperbolicPoint3 extend(const HyperbolicPoint3& p) const;

  // f'(z), f''(z)/f'(z), f'''(z)/f'(z).
  cplx derivative(cplx z) const;
  cplx second_over_first(cplx z) const;
  cplx third_over_first(cplx z) const;

 private:
  cplx a_, b_, c_, d_;
};

SpherePoint moebius_apply(const MoebiusMap& m, const SpherePoint& z);
HyperbolicPoint3 moebius_extend(const MoebiusMap& m, const HyperbolicPoint3& p);

}  // namespace wvol::hs
