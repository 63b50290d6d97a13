#include "wvol/metric.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wvol/errors.hpp"

namespace wvol::hs {

double RadialProfile::g(double s) const { return std::exp(-f(s) - s); }

RadialField RadialField::constant(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
}

namespace {

class PerturbedProfile final : public RadialProfile {
 public:
  PerturbedProfile(RadialProfilePtr base, RadialField u) : base_(std::move(base)), u_(std::move(u)) {}
  double f(double s) const override { return base_->f(s) + u_.u(s); }
  double f1(double s) const override { return base_->f1(s) + u_.us(s); }
  double f2(double s) const override { return base_->f2(s) + u_.uss(s); }
  double g(double s) const override { return base_->g(s) * std::exp(-u_.u(s)); }
  std::string name() const override { return base_->name() + "+u"; }

 private:
  RadialProfilePtr base_;
  RadialField u_;
};

bool angle_in_range(double theta, double a, double b) {
  // Angles of the upper half-plane sector are compared in (-pi, pi].
  return theta >= a && theta <= b;
}

}  // namespace

RadialProfilePtr perturb(RadialProfilePtr base, RadialField u) {
  return std::make_shared<PerturbedProfile>(std::move(base), std::move(u));
}

Domain Domain::pulled_back(const MoebiusMap& m) const {
  Domain d = *this;
  d.chart_ = chart_ ? chart_->compose(m) : m;
  return d;
}

bool Domain::contains(cplx w) const {
  cplx z = w;
  if (chart_) {
    SpherePoint p = chart_->apply(SpherePoint{w});
    if (std::holds_alternative<Infinity>(p)) return false;
    z = std::get<cplx>(p);
  }
  return std::visit(
      [z](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Annulus>) {
          double r = std::abs(z - s.center);
          return r > s.r_in && r < s.r_out && r > 0;
        } else if constexpr (std::is_same_v<S, Sector>) {
          double r = std::abs(z);
          if (r < s.r_in || r > s.r_out || r == 0) return false;
          return angle_in_range(std::arg(z), s.theta_a, s.theta_b);
        } else {
          return std::isfinite(z.real()) && std::isfinite(z.imag());
        }
      },
      shape_);
}

double Domain::boundary_distance(cplx w) const {
  cplx z = w;
  double scale = 1.0;
  if (chart_) {
    z = chart_->apply_finite(w);
    scale = 1.0 / std::abs(chart_->derivative(w));
  }
  double d = std::visit(
      [z](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Annulus>) {
          double r = std::abs(z - s.center);
          return std::min(r - s.r_in, s.r_out - r);
        } else if constexpr (std::is_same_v<S, Sector>) {
          double r = std::abs(z);
          double t = std::arg(z);
          double da = std::min({t - s.theta_a, s.theta_b - t, std::numbers::pi / 2});
          return std::min({r - s.r_in, s.r_out - r, r * std::sin(da)});
        } else {
          return INFINITY;
        }
      },
      shape_);
  return d * scale;
}

std::string Domain::describe() const {
  std::ostringstream os;
  std::visit(
      [&os](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Annulus>)
          os << "annulus(center=" << s.center << ", r_in=" << s.r_in << ", r_out=" << s.r_out << ")";
        else if constexpr (std::is_same_v<S, Sector>)
          os << "sector(theta=[" << s.theta_a << "," << s.theta_b << "], r=[" << s.r_in << ","
             << s.r_out << "])";
        else
          os << "plane";
      },
      shape_);
  if (chart_) os << " pulled back by a Moebius chart";
  return os.str();
}

ConformalMetric::ConformalMetric(Domain domain, Field phi, JetFn jet)
    : domain_(std::move(domain)), phi_(std::move(phi)), jet_(std::move(jet)) {
  if (!phi_) throw ValidationError("conformal metric needs a Liouville field");
  if (!jet_) mode_ = DerivativeMode::finite_difference;
}

ConformalMetric ConformalMetric::radial(RadialProfilePtr profile, Annulus annulus) {
  if (!profile) throw ValidationError("null radial profile");
  const RadialProfile* p = profile.get();
  cplx c = annulus.center;
  ConformalMetric m(
      Domain{annulus}, [p, c](cplx z) { return p->f(std::log(std::abs(z - c))); },
      [p, c](cplx z) { return radial_jet(*p, z - c); });
  m.profile_ = std::move(profile);
  m.center_ = c;
  return m;
}

ConformalMetric ConformalMetric::with_mode(DerivativeMode mode) const {
  if (mode == DerivativeMode::analytic && !jet_)
    throw ValidationError("no analytic jet available for this metric");
  ConformalMetric m = *this;
  m.mode_ = mode;
  return m;
}

double ConformalMetric::phi(cplx z) const {
  if (!domain_.contains(z)) throw DomainError("point outside the metric domain");
  return phi_(z);
}

Jet ConformalMetric::jet(cplx z) const {
  if (mode_ == DerivativeMode::analytic) return analytic_jet(z);
  return fd_jet(z);
}

Jet ConformalMetric::analytic_jet(cplx z) const {
  if (!jet_) throw ValidationError("no analytic jet available for this metric");
  if (!domain_.contains(z)) throw DomainError("point outside the metric domain");
  return jet_(z);
}

double fd_step(cplx z) { return std::max(1e-5, 1e-7 * std::abs(z)); }

Jet ConformalMetric::fd_jet(cplx z) const { return fd_jet(z, fd_step(z)); }

Jet ConformalMetric::fd_jet(cplx z, double h) const {
  if (!domain_.contains(z)) throw DomainError("point outside the metric domain");
  if (domain_.boundary_distance(z) < 2 * h)
    throw DomainError("finite-difference stencil leaves the domain");
  const cplx ex{h, 0}, ey{0, h};
  double f0 = phi_(z);
  double fxp = phi_(z + ex), fxm = phi_(z - ex);
  double fyp = phi_(z + ey), fym = phi_(z - ey);
  double fpp = phi_(z + ex + ey), fpm = phi_(z + ex - ey);
  double fmp = phi_(z - ex + ey), fmm = phi_(z - ex - ey);
  double fx = (fxp - fxm) / (2 * h);
  double fy = (fyp - fym) / (2 * h);
  double fxx = (fxp - 2 * f0 + fxm) / (h * h);
  double fyy = (fyp - 2 * f0 + fym) / (h * h);
  double fxy = (fpp - fpm - fmp + fmm) / (4 * h * h);
  Jet j;
  j.phi = f0;
  j.phi_z = 0.5 * cplx{fx, -fy};
  j.phi_zz = 0.25 * cplx{fxx - fyy, -2 * fxy};
  j.phi_zzbar = 0.25 * (fxx + fyy);
  return j;
}

ConformalMetric ConformalMetric::shifted(double r) const {
  Field phi = [f = phi_, r](cplx z) { return f(z) + r; };
  JetFn jet;
  if (jet_)
    jet = [j0 = jet_, r](cplx z) {
      Jet j = j0(z);
      j.phi += r;
      return j;
    };
  ConformalMetric m(domain_, std::move(phi), std::move(jet));
  m.mode_ = mode_;
  if (profile_) {
    m.profile_ = perturb(profile_, RadialField::constant(r));
    m.center_ = center_;
  }
  return m;
}

ConformalMetric pullback(const ConformalMetric& g, const HoloMap& F, Domain domain) {
  ConformalMetric::Field phi = [p = g.phi_, F](cplx w) {
    return p(F.f(w)) + std::log(std::abs(F.d1(w)));
  };
  ConformalMetric::JetFn jet;
  if (g.jet_)
    jet = [j0 = g.jet_, F](cplx w) {
      Jet j = j0(F.f(w));
      cplx d1 = F.d1(w);
      cplx r2 = F.r2(w);
      cplx r3 = F.r3(w);
      Jet out;
      out.phi = j.phi + std::log(std::abs(d1));
      out.phi_z = j.phi_z * d1 + 0.5 * r2;
      out.phi_zz = j.phi_zz * d1 * d1 + j.phi_z * (r2 * d1) + 0.5 * (r3 - r2 * r2);
      out.phi_zzbar = j.phi_zzbar * std::norm(d1);
      return out;
    };
  ConformalMetric m(std::move(domain), std::move(phi), std::move(jet));
  m.mode_ = g.jet_ ? g.mode_ : DerivativeMode::finite_difference;
  return m;
}

ConformalMetric ConformalMetric::pullback(const MoebiusMap& f) const {
  HoloMap F{[f](cplx w) { return f.apply_finite(w); }, [f](cplx w) { return f.derivative(w); },
            [f](cplx w) { return f.second_over_first(w); }, [f](cplx w) { return f.third_over_first(w); }};
  return hs::pullback(*this, F, domain_.pulled_back(f));
}

Jet radial_jet(const RadialProfile& p, cplx w) {
  double s = std::log(std::abs(w));
  double f1 = p.f1(s), f2 = p.f2(s);
  Jet j;
  j.phi = p.f(s);
  j.phi_z = f1 / (2.0 * w);
  j.phi_zz = (f2 - 2 * f1) / (4.0 * w * w);
  j.phi_zzbar = f2 / (4.0 * std::norm(w));
  return j;
}

Jet liouville_jet(const ConformalMetric& g, cplx z) { return g.jet(z); }

double gaussian_curvature(const ConformalMetric& g, cplx z) {
  Jet j = g.jet(z);
  return -4.0 * j.phi_zzbar * std::exp(-2.0 * j.phi);
}

}  // namespace wvol::hs
