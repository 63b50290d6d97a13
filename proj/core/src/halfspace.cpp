#include "wvol/halfspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wvol/errors.hpp"

namespace wvol::hs {

double polar_rho(cplx z) { return std::abs(z); }

double polar_theta(cplx z) {
  if (z == cplx{}) throw DomainError("polar angle undefined at z = 0");
  double t = std::arg(z);
  if (t < 0) t += 2 * std::numbers::pi;
  if (t >= 2 * std::numbers::pi) t = 0.0;
  return t;
}

HyperbolicPoint3::HyperbolicPoint3(cplx horizontal, double height) : z_(horizontal), t_(height) {
  if (!(height > 0) || !std::isfinite(height) || !std::isfinite(horizontal.real()) ||
      !std::isfinite(horizontal.imag()))
    throw DomainError("point of H^3 needs finite coordinates and positive height");
}

double hyp_distance(const HyperbolicPoint3& p, const HyperbolicPoint3& q) {
  // 2 asinh(|p - q|_E / (2 sqrt(t_p t_q))) is the stable form of the arccosh law.
  double dz = std::abs(p.horizontal() - q.horizontal());
  double dt = p.height() - q.height();
  double e = std::hypot(dz, dt);
  return 2.0 * std::asinh(e / (2.0 * std::sqrt(p.height() * q.height())));
}

MoebiusMap::MoebiusMap() : a_(1), b_(0), c_(0), d_(1) {}

MoebiusMap::MoebiusMap(cplx a, cplx b, cplx c, cplx d) {
  cplx det = a * d - b * c;
  double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (scale == 0 || std::abs(det) <= 1e-300 || std::abs(det) <= 1e-14 * scale * scale)
    throw ValidationError("singular Moebius matrix");
  cplx s = std::sqrt(det);
  a_ = a / s;
  b_ = b / s;
  c_ = c / s;
  d_ = d / s;
}

MoebiusMap MoebiusMap::dilation(cplx k) { return {k, 0, 0, 1}; }
MoebiusMap MoebiusMap::translation(cplx b) { return {1, b, 0, 1}; }

MoebiusMap MoebiusMap::compose(const MoebiusMap& n) const {
  return {a_ * n.a_ + b_ * n.c_, a_ * n.b_ + b_ * n.d_, c_ * n.a_ + d_ * n.c_,
          c_ * n.b_ + d_ * n.d_};
}

MoebiusMap MoebiusMap::inverse() const { return {d_, -b_, -c_, a_}; }

SpherePoint MoebiusMap::apply(const SpherePoint& p) const {
  if (std::holds_alternative<Infinity>(p)) {
    if (c_ == cplx{}) return Infinity{};
    return a_ / c_;
  }
  cplx z = std::get<cplx>(p);
  cplx den = c_ * z + d_;
  if (den == cplx{}) return Infinity{};
  return (a_ * z + b_) / den;
}

cplx MoebiusMap::apply_finite(cplx z) const {
  SpherePoint w = apply(SpherePoint{z});
  if (std::holds_alternative<Infinity>(w)) throw DomainError("point maps to infinity");
  return std::get<cplx>(w);
}

HyperbolicPoint3 MoebiusMap::extend(const HyperbolicPoint3& p) const {
  cplx z = p.horizontal();
  double t = p.height();
  cplx cz = c_ * z + d_;
  double den = std::norm(cz) + std::norm(c_) * t * t;
  cplx w = ((a_ * z + b_) * std::conj(cz) + a_ * std::conj(c_) * t * t) / den;
  return {w, t / den};
}

cplx MoebiusMap::derivative(cplx z) const {
  cplx den = c_ * z + d_;
  if (den == cplx{}) throw DomainError("derivative at the pole");
  return 1.0 / (den * den);
}

cplx MoebiusMap::second_over_first(cplx z) const { return -2.0 * c_ / (c_ * z + d_); }

cplx MoebiusMap::third_over_first(cplx z) const {
  cplx den = c_ * z + d_;
  return 6.0 * c_ * c_ / (den * den);
}

SpherePoint moebius_apply(const MoebiusMap& m, const SpherePoint& z) { return m.apply(z); }
HyperbolicPoint3 moebius_extend(const MoebiusMap& m, const HyperbolicPoint3& p) {
  return m.extend(p);
}

}  // namespace wvol::hs
