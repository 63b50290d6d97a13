#include "wvol/adapted.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include <boost/math/tools/roots.hpp>
#include <tbb/parallel_for.h>

#include "wvol/errors.hpp"

namespace wvol::adapted {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double pi3 = pi * pi * pi;
constexpr double tie_tol = 1e-12;
constexpr int brute_force_limit = 20;

using Mask = std::uint64_t;

Mask bit(int i) { return Mask{1} << i; }

int mis(Mask cand, const std::vector<Mask>& adj) {
  if (cand == 0) return 0;
  // Vertices with no neighbor among the candidates are always taken.
  Mask free = 0;
  int pivot = -1, pivot_deg = -1;
  for (Mask m = cand; m; m &= m - 1) {
    int v = std::countr_zero(m);
    int deg = std::popcount(adj[v] & cand);
    if (deg == 0) free |= bit(v);
    else if (deg > pivot_deg) {
      pivot = v;
      pivot_deg = deg;
    }
  }
  if (free) return std::popcount(free) + mis(cand & ~free, adj);
  Mask rest = cand & ~bit(pivot);
  return std::max(1 + mis(rest & ~adj[pivot], adj), mis(rest, adj));
}

std::vector<Mask> adjacency(const std::vector<std::vector<bool>>& m, const std::vector<int>& idx) {
  std::vector<Mask> adj(idx.size(), 0);
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b)
      if (m[idx[a]][idx[b]]) adj[a] |= bit(static_cast<int>(b));
  return adj;
}

// Compressible curves ordered by length, ties by id.
struct Problem {
  std::vector<int> curve;  // index into system.curves
  std::vector<double> length;
  std::vector<int> id;
  std::vector<Mask> adj;
  std::vector<int> by_id;  // bit positions in ascending id order
  int cap = 0;

  double value(Mask m) const {
    double v = 0.0;
    for (int b : by_id)
      if (m & bit(b)) v += 1.0 / length[b];
    return pi3 * v;
  }
  std::vector<int> ids(Mask m) const {
    std::vector<int> out;
    for (int b : by_id)
      if (m & bit(b)) out.push_back(id[b]);
    return out;
  }
};

Problem make_problem(const CurveSystem& sys) {
  Problem p;
  for (std::size_t i = 0; i < sys.curves.size(); ++i)
    if (sys.curves[i].compressible) p.curve.push_back(static_cast<int>(i));
  std::sort(p.curve.begin(), p.curve.end(), [&](int a, int b) {
    const Curve &ca = sys.curves[a], &cb = sys.curves[b];
    return ca.length != cb.length ? ca.length < cb.length : ca.id < cb.id;
  });
  for (int c : p.curve) {
    p.length.push_back(sys.curves[c].length);
    p.id.push_back(sys.curves[c].id);
  }
  p.adj = adjacency(sys.matrix(), p.curve);
  p.by_id.resize(p.curve.size());
  for (std::size_t i = 0; i < p.by_id.size(); ++i) p.by_id[i] = static_cast<int>(i);
  std::sort(p.by_id.begin(), p.by_id.end(), [&](int a, int b) { return p.id[a] < p.id[b]; });
  p.cap = sys.max_components();
  return p;
}

struct Candidates {
  double best = 0.0;
  std::vector<Mask> sets;

  void offer(Mask m, double v) {
    if (v > best) best = v;
    if (v >= best * (1 - tie_tol)) sets.push_back(m);
  }
  void merge(const Candidates& o) {
    for (Mask m : o.sets) sets.push_back(m);
    best = std::max(best, o.best);
  }
};

Candidates brute_force(const Problem& p, Mask allowed, int cap) {
  int n = static_cast<int>(p.curve.size());
  Candidates out;
  for (Mask m = 0; m < bit(n); ++m) {
    if ((m & ~allowed) || std::popcount(m) > cap) continue;
    bool ok = true;
    for (Mask r = m; r && ok; r &= r - 1) ok = !(p.adj[std::countr_zero(r)] & m);
    if (ok) out.offer(m, p.value(m));
  }
  return out;
}

struct Node {
  int i;
  Mask chosen;
  Mask blocked;
  double sum;
};

void dfs(const Problem& p, int cap, Node nd, Candidates& local, std::atomic<double>& shared_best) {
  int n = static_cast<int>(p.curve.size());
  while (nd.i < n && (nd.blocked & bit(nd.i))) ++nd.i;
  int slots = cap - std::popcount(nd.chosen);
  if (nd.i >= n || slots == 0) {
    double v = p.value(nd.chosen);
    local.offer(nd.chosen, v);
    double cur = shared_best.load();
    while (v > cur && !shared_best.compare_exchange_weak(cur, v)) {
    }
    return;
  }
  double bound = nd.sum + pi3 * slots / p.length[nd.i];
  double ref = std::max(shared_best.load(), local.best);
  if (bound < ref * (1 - 2 * tie_tol)) return;
  Node take{nd.i + 1, nd.chosen | bit(nd.i), nd.blocked | p.adj[nd.i], nd.sum + pi3 / p.length[nd.i]};
  dfs(p, cap, take, local, shared_best);
  dfs(p, cap, Node{nd.i + 1, nd.chosen, nd.blocked, nd.sum}, local, shared_best);
}

Candidates branch_and_bound(const Problem& p, Mask allowed, int cap) {
  int n = static_cast<int>(p.curve.size());
  Mask start_block = 0;
  for (int i = 0; i < n; ++i)
    if (!(allowed & bit(i))) start_block |= bit(i);
  // Subtree roots from the first few decisions.
  std::vector<Node> roots{{0, 0, start_block, 0.0}};
  for (int depth = 0; depth < 6; ++depth) {
    std::vector<Node> next;
    for (Node nd : roots) {
      while (nd.i < n && (nd.blocked & bit(nd.i))) ++nd.i;
      if (nd.i >= n || std::popcount(nd.chosen) >= cap) {
        next.push_back(nd);
        continue;
      }
      next.push_back({nd.i + 1, nd.chosen | bit(nd.i), nd.blocked | p.adj[nd.i], nd.sum + pi3 / p.length[nd.i]});
      next.push_back({nd.i + 1, nd.chosen, nd.blocked, nd.sum});
    }
    roots.swap(next);
  }
  std::vector<Candidates> parts(roots.size());
  std::atomic<double> shared_best{0.0};
  tbb::parallel_for(std::size_t{0}, roots.size(),
                    [&](std::size_t r) { dfs(p, cap, roots[r], parts[r], shared_best); });
  Candidates out;
  for (const Candidates& c : parts) out.merge(c);
  return out;
}

Candidates solve(const Problem& p, Mask allowed, int cap, Solver solver) {
  int n = static_cast<int>(p.curve.size());
  if (solver == Solver::automatic) solver = n <= brute_force_limit ? Solver::brute_force : Solver::branch_and_bound;
  if (solver == Solver::brute_force && n > 24) throw ValidationError("too many compressible curves for brute force");
  Candidates c = solver == Solver::brute_force ? brute_force(p, allowed, cap) : branch_and_bound(p, allowed, cap);
  Candidates out;
  out.best = c.best;
  for (Mask m : c.sets)
    if (p.value(m) >= c.best * (1 - tie_tol)) out.sets.push_back(m);
  std::sort(out.sets.begin(), out.sets.end(), [&](Mask a, Mask b) { return p.ids(a) < p.ids(b); });
  out.sets.erase(std::unique(out.sets.begin(), out.sets.end()), out.sets.end());
  return out;
}

Mask all_bits(int n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }

}  // namespace

int CurveSystem::index_of(int id) const {
  for (std::size_t i = 0; i < curves.size(); ++i)
    if (curves[i].id == id) return static_cast<int>(i);
  throw ValidationError("unknown curve id " + std::to_string(id));
}

std::vector<std::vector<bool>> CurveSystem::matrix() const {
  std::vector<std::vector<bool>> m(curves.size(), std::vector<bool>(curves.size(), false));
  for (auto [a, b] : intersections) {
    int i = index_of(a), j = index_of(b);
    m[i][j] = m[j][i] = true;
  }
  return m;
}

int max_disjoint_family(const CurveSystem& system) {
  if (system.curves.size() > 64) throw ValidationError("at most 64 curves are supported");
  std::vector<int> idx(system.curves.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  auto adj = adjacency(system.matrix(), idx);
  return mis(all_bits(static_cast<int>(idx.size())), adj);
}

void CurveSystem::validate() const {
  if (genus_sum < 2) throw ValidationError("genus_sum must be at least 2");
  if (curves.size() > 64) throw ValidationError("at most 64 curves are supported");
  std::set<int> ids;
  for (const Curve& c : curves) {
    if (!ids.insert(c.id).second) throw ValidationError("duplicate curve id " + std::to_string(c.id));
    if (!(c.length > 0) || !std::isfinite(c.length))
      throw ValidationError("curve " + std::to_string(c.id) + " needs a positive finite length");
  }
  for (auto [a, b] : intersections) {
    if (a == b) throw ValidationError("a curve cannot intersect itself (diagonal must be false)");
    index_of(a);
    index_of(b);
  }
  auto m = matrix();
  for (std::size_t i = 0; i < curves.size() && check_collars; ++i)
    for (std::size_t j = i + 1; j < curves.size(); ++j)
      if (m[i][j] && std::sinh(curves[i].length / 2) * std::sinh(curves[j].length / 2) < 1.0)
        throw ValidationError("curves " + std::to_string(curves[i].id) + " and " + std::to_string(curves[j].id) +
                              " are too short to intersect");
  int fam = max_disjoint_family(*this);
  if (fam > max_components())
    throw ValidationError("a disjoint family of " + std::to_string(fam) + " curves exceeds 3g - 3 = " +
                          std::to_string(max_components()));
}

double multicurve_value(const CurveSystem& system, const std::vector<int>& ids) {
  std::vector<int> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  double v = 0.0;
  for (int id : sorted) v += 1.0 / system.curves[system.index_of(id)].length;
  return pi3 * v;
}

CorrectionResult correction_max(const CurveSystem& system, Solver solver) {
  system.validate();
  Problem p = make_problem(system);
  CorrectionResult res;
  int n = static_cast<int>(p.curve.size());
  res.solver = solver == Solver::automatic ? (n <= brute_force_limit ? Solver::brute_force : Solver::branch_and_bound)
                                           : solver;
  Candidates c = solve(p, all_bits(n), p.cap, res.solver);
  for (Mask m : c.sets) res.optima.push_back({p.ids(m), p.value(m)});
  if (res.optima.empty()) res.optima.push_back({});
  res.value = 0.0;
  for (const auto& o : res.optima) res.value = std::max(res.value, o.value);

  res.maximal_completion = res.optima.front().members;
  auto m = system.matrix();
  std::vector<int> order(system.curves.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return system.curves[a].id < system.curves[b].id; });
  std::vector<int> chosen;
  for (int id : res.maximal_completion) chosen.push_back(system.index_of(id));
  for (int i : order) {
    if (static_cast<int>(chosen.size()) >= system.max_components()) break;
    if (system.curves[i].compressible || std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
    bool disjoint = std::none_of(chosen.begin(), chosen.end(), [&](int k) { return m[i][k]; });
    if (disjoint) chosen.push_back(i);
  }
  res.maximal_completion.clear();
  for (int i : chosen) res.maximal_completion.push_back(system.curves[i].id);
  std::sort(res.maximal_completion.begin(), res.maximal_completion.end());
  return res;
}

std::vector<std::pair<int, double>> marginal_values(const CurveSystem& system) {
  CorrectionResult base = correction_max(system);
  Problem p = make_problem(system);
  int n = static_cast<int>(p.curve.size());
  std::vector<std::pair<int, double>> out;
  for (int b = 0; b < n; ++b) {
    Mask allowed = all_bits(n) & ~p.adj[b] & ~bit(b);
    Candidates c = solve(p, allowed, p.cap - 1, Solver::automatic);
    Mask best = c.sets.empty() ? 0 : c.sets.front();
    out.emplace_back(p.id[b], p.value(best | bit(b)) - base.value);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double adapted_value(double base_vr, const CurveSystem& system) {
  if (!std::isfinite(base_vr)) throw ValidationError("base renormalized volume must be finite");
  return base_vr + correction_max(system).value;
}

std::pair<double, double> correction_bounds(const CurveSystem& system) {
  double lmin = INFINITY;
  for (const Curve& c : system.curves)
    if (c.compressible) lmin = std::min(lmin, c.length);
  if (!std::isfinite(lmin)) return {0.0, 0.0};
  return {pi3 / lmin, system.max_components() * pi3 / lmin};
}

double var1_expression(int g, double eps) {
  return -pi3 / eps + pi3 * (3 * g - 3) / std::asinh(1.0 / std::sinh(eps / 2));
}

double epsilon0() { return 2 * std::asinh(1.0); }

double epsilon1_threshold(int g) {
  if (g < 2) throw ValidationError("genus must be at least 2");
  auto f = [g](double e) { return var1_expression(g, e); };
  double lo = 1e-3, hi = lo;
  if (!(f(lo) < 0)) throw NonConvergence("threshold expression is not negative near 0");
  while (f(hi) < 0) {
    lo = hi;
    hi *= 1.05;
    if (hi > 10) throw NonConvergence("no sign change of the threshold expression");
  }
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-10; };
  auto r = boost::math::tools::bisect(f, lo, hi, tol);
  return r.first;
}

bool short_curve_inclusion_check(const CurveSystem& system, double eps) {
  CorrectionResult res = correction_max(system);
  for (const Curve& c : system.curves) {
    if (!c.compressible || !(c.length < eps)) continue;
    for (const auto& o : res.optima)
      if (std::find(o.members.begin(), o.members.end(), c.id) == o.members.end()) return false;
  }
  return true;
}

double collar_width(double ell) {
  if (!(ell > 0)) throw ValidationError("curve length must be positive");
  return std::asinh(1.0 / std::sinh(ell / 2));
}

double collar_boundary_length(double ell) { return ell * std::cosh(collar_width(ell)); }

double qd_l1_on_sector(double ell, double theta_a, double theta_b) {
  if (!(ell > 0)) throw ValidationError("curve length must be positive");
  if (!(0 <= theta_a && theta_a <= theta_b && theta_b <= pi)) throw ValidationError("need 0 <= theta_a <= theta_b <= pi");
  return (theta_b - theta_a) * ell;
}

quad::QuadResult qd_l1_on_sector_quadrature(double ell, double theta_a, double theta_b,
                                            const quad::QuadratureConfig& cfg) {
  qd_l1_on_sector(ell, theta_a, theta_b);
  if (theta_a == theta_b) return {};
  // |dz^2/z^2| dx dy = rho^{-1} d rho d theta.
  auto f = [](double rho, double) { return 1.0 / rho; };
  return quad::integrate2d(f, 1.0, std::exp(ell), theta_a, theta_b, cfg);
}

double thin_angle(double ell) {
  if (!(ell > 0)) throw ValidationError("curve length must be positive");
  return std::asin(std::tanh(ell / 2));
}

double qd_thick_l1(double ell) {
  double th = thin_angle(ell);
  return 2 / (pi * ell * ell) * (qd_l1_on_sector(ell, 0, th) + qd_l1_on_sector(ell, pi - th, pi));
}

double qd_thick_l1_closed(double ell) { return 4 * thin_angle(ell) / (pi * ell); }

double qd_linf_thick_bound(double ell) {
  if (!(ell > 0) || !(ell <= epsilon0() + 1e-15)) throw ValidationError("need 0 < l <= 2 arsinh(1)");
  double t = std::tanh(ell / 2);
  return 2 * pi * pi / (ell * ell) * t * t;
}

double qd_linf_sampled(double theta_a, double theta_b, int samples) {
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    double th = theta_a + (theta_b - theta_a) * k / std::max(1, samples - 1);
    best = std::max(best, std::sin(th) * std::sin(th));
  }
  return best;
}

QdDiscrepancy qd_full_annulus_discrepancy(double ell, const quad::QuadratureConfig& cfg) {
  QdDiscrepancy d;
  d.ell = ell;
  d.quadrature = 2 / pi * qd_l1_on_sector_quadrature(ell, 0, pi, cfg).value;
  d.stated = 4 * ell;
  d.ratio = d.stated / d.quadrature;
  return d;
}

CurveSystem random_curve_system(std::uint64_t seed, const RandomSystemOptions& opt) {
  if (opt.curves < 0 || opt.curves > 64) throw ValidationError("random systems hold at most 64 curves");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CurveSystem sys;
  for (int i = 0; i < opt.curves; ++i) {
    double len = opt.min_length * std::pow(opt.max_length / opt.min_length, unit(rng));
    bool comp = unit(rng) < opt.compressible_probability;
    sys.curves.push_back({i + 1, len, comp});
  }
  for (int i = 0; i < opt.curves; ++i)
    for (int j = i + 1; j < opt.curves; ++j) {
      bool hit = unit(rng) < opt.intersection_probability;
      const Curve &a = sys.curves[i], &b = sys.curves[j];
      if (hit && std::sinh(a.length / 2) * std::sinh(b.length / 2) >= 1.0) sys.intersections.push_back({a.id, b.id});
    }
  int fam = max_disjoint_family(sys);
  sys.genus_sum = std::max(2, (fam + 5) / 3);
  return sys;
}

}  // namespace wvol::adapted
