#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "acceptance.hpp"
#include "wvol/adapted.hpp"
#include "wvol/cusp.hpp"
#include "wvol/epstein.hpp"
#include "wvol/errors.hpp"
#include "wvol/io.hpp"
#include "wvol/tube.hpp"

using nlohmann::json;
using namespace wvol;

namespace {

constexpr double pi = std::numbers::pi;

enum Exit { ok = 0, criteria_failed = 1, validation = 2, nonconvergence = 3 };

struct Common {
  double tol = 1e-10;
  std::string out;
  std::string format = "json";
  int jobs = 0;
  std::string schedule;
};

quad::QuadratureConfig quad_config(const Common& c) {
  quad::QuadratureConfig cfg;
  cfg.rel_tol = c.tol;
  cfg.validate();
  return cfg;
}

// Rows of a table emitted as CSV with 17 significant digits, or as JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string csv_number(double v) { return fmt::format("{:.17g}", v); }

std::string to_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
  s += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_number(row[i]);
    s += "\n";
  }
  return s;
}

json table_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = row[i];
    rows.push_back(r);
  }
  return rows;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw ValidationError("cannot write " + c.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << "\n";
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("bad schedule entry '" + item + "'");
    }
  }
  return out;
}

// "k0:k1" gives rho = 10^{-k}; otherwise a comma list of radii.
std::vector<double> cusp_schedule(const std::string& s) {
  if (s.empty()) return cusp::decade_schedule(2, 8);
  auto colon = s.find(':');
  if (colon != std::string::npos) {
    int k0 = std::stoi(s.substr(0, colon)), k1 = std::stoi(s.substr(colon + 1));
    if (k1 <= k0) throw ValidationError("schedule k0:k1 needs k0 < k1");
    return cusp::decade_schedule(k0, k1);
  }
  std::vector<double> out;
  for (double rho : parse_list(s)) {
    if (!(rho > 0)) throw ValidationError("schedule radii must be positive");
    out.push_back(std::log(rho));
  }
  return out;
}

hs::ConformalMetric choose_metric(const std::string& name, double ell, double eps, double psi, double c) {
  if (name == "cusp") return cusp::i0_metric();
  if (name == "tube") return tube::tube_metric(tube::TubeSpec::make(ell, eps));
  if (name == "flat")
    return hs::ConformalMetric::radial(std::make_shared<hs::FlatProfile>(c), hs::Annulus{0.0, 0.0, INFINITY});
  if (name == "perturbed") return cusp::CuspPerturbation::linear(psi).metric();
  throw ValidationError("unknown metric '" + name + "'");
}

struct EpsteinArgs {
  std::string metric = "cusp";
  double ell = 0.1, eps = 0.5, psi = 0.3, c = 0.0;
  std::optional<double> rho_min, rho_max;
  int n = 100, angles = 1;
};

int cmd_epstein(const Common& c, const EpsteinArgs& a) {
  if (a.n < 0 || a.angles < 1) throw ValidationError("grid needs n >= 0 and at least one angle");
  hs::ConformalMetric g = choose_metric(a.metric, a.ell, a.eps, a.psi, a.c);
  double lo = 0.05, hi = 0.2;
  if (a.metric == "tube") {
    // Default to the inner half of the tube annulus, core included.
    auto spec = tube::TubeSpec::make(a.ell, a.eps);
    lo = std::exp(0.9 * spec.log_inner() + 0.1 * spec.log_core());
    hi = std::exp(spec.log_core());
  }
  const double rho_min = a.rho_min.value_or(lo), rho_max = a.rho_max.value_or(hi);
  if (!(rho_min > 0)) throw ValidationError("grid radii must be positive");
  if (!(rho_min <= rho_max)) throw ValidationError("grid needs rho_min <= rho_max");
  Table t{{"z_re", "z_im", "x_re", "x_im", "t", "H", "q_re", "q_im", "K"}, {}};
  for (int i = 0; i < a.n; ++i) {
    double rho = a.n == 1 ? rho_min : rho_min * std::pow(rho_max / rho_min, double(i) / (a.n - 1));
    for (int k = 0; k < a.angles; ++k) {
      hs::cplx z = std::polar(rho, 2 * pi * k / a.angles);
      if (!g.domain().contains(z)) throw ValidationError(fmt::format("grid point rho = {} lies outside the metric domain", rho));
      eps::EpsteinFrame f = eps::forms_at_infinity(g, z);
      t.rows.push_back({z.real(), z.imag(), f.surface_point.horizontal().real(), f.surface_point.horizontal().imag(),
                        f.surface_point.height(), f.mean_curvature, f.q.real(), f.q.imag(), hs::gaussian_curvature(g, z)});
    }
  }
  emit(c, c.format == "csv" ? to_csv(t) : json{{"metric", a.metric}, {"rows", table_json(t)}}.dump(2));
  return ok;
}

struct WvolArgs {
  std::string model = "cusp";
  std::string route = "direct";
  double rho1 = std::exp(-4.0), rho2 = std::exp(-2.0);
  double ell = 0.1, eps = 0.5;
  bool compare = false, asymptote = false, plus_h = false;
};

std::string report_csv(const engine::WVolumeReport& r, const std::vector<std::pair<std::string, double>>& extra) {
  std::string s = "key,value\n";
  auto row = [&](const std::string& k, double v) { s += k + "," + csv_number(v) + "\n"; };
  row("log_rho1", r.log_rho1);
  row("log_rho2", r.log_rho2);
  row("volume", r.volume);
  row("epstein_H_integral", r.epstein_H_integral);
  for (std::size_t i = 0; i < r.caterpillar_terms.size(); ++i) row(fmt::format("caterpillar_term_{}", i), r.caterpillar_terms[i]);
  for (std::size_t i = 0; i < r.edge_terms.size(); ++i) row(fmt::format("edge_term_{}", i), r.edge_terms[i]);
  for (std::size_t i = 0; i < r.edge_lengths.size(); ++i) row(fmt::format("edge_length_{}", i), r.edge_lengths[i]);
  for (std::size_t i = 0; i < r.plus_h_terms.size(); ++i) row(fmt::format("plus_h_term_{}", i), r.plus_h_terms[i]);
  row("edge_free_W", r.edge_free_W);
  row("total_W", r.total_W);
  row("error_estimate", r.error_estimate);
  row("tree_depth", r.tree_depth);
  row("cells", r.cells);
  for (auto& [k, v] : extra) row(k, v);
  return s;
}

int cmd_wvol(const Common& c, const WvolArgs& a) {
  auto cfg = quad_config(c);
  engine::EngineOptions eo;
  eo.include_plus_h = a.plus_h;
  engine::WVolumeReport rep;
  std::vector<std::pair<std::string, double>> extra;
  if (a.model == "cusp") {
    if (!(a.rho1 > 0) || !(a.rho2 > 0)) throw ValidationError("radii must be positive");
    auto t = cusp::CuspTruncation::from_radii(a.rho1, a.rho2);
    auto direct = [&] {
      return engine::w_volume(engine::RegionSpec::log_annulus(cusp::i0_metric(), t.log_rho1, t.log_rho2), cfg, eo);
    };
    auto closed = [&] {
      auto r = cusp::cusp_w_volume_log(t.log_rho1, t.log_rho2);
      if (a.plus_h) {
        r.plus_h_included = true;
        r.total_W += r.plus_h_terms[0] + r.plus_h_terms[1];
      }
      return r;
    };
    if (a.route == "direct") rep = direct();
    else if (a.route == "closed-form") rep = closed();
    else throw ValidationError("the cusp model supports the direct and closed-form routes");
    if (a.compare) {
      auto other = a.route == "direct" ? closed() : direct();
      extra.emplace_back("route_delta", std::abs(rep.total_W - other.total_W) / std::abs(other.total_W));
    }
    extra.emplace_back("W", rep.total_W);
  } else if (a.model == "tube") {
    auto spec = tube::TubeSpec::make(a.ell, a.eps);
    double W = 0.0;
    if (a.route == "direct") {
      rep = tube::tube_w_volume(spec, cfg, eo);
      W = rep.total_W;
      if (a.compare) {
        auto routes = tube::tube_w_volume_routes(spec, cfg);
        extra.emplace_back("route_delta", std::abs(routes.polyakov_route - W) / std::abs(W));
      }
    } else if (a.route == "polyakov") {
      auto routes = tube::tube_w_volume_routes(spec, cfg);
      rep = routes.half_cusp;
      W = routes.polyakov_route;
      extra.emplace_back("polyakov_term", routes.polyakov);
      if (a.compare) extra.emplace_back("route_delta", std::abs(W - routes.direct.total_W) / std::abs(routes.direct.total_W));
    } else {
      throw ValidationError("the tube model supports the direct and polyakov routes");
    }
    extra.emplace_back("W", W);
    if (a.asymptote) {
      extra.emplace_back("asymptote", tube::tube_wvol_asymptote(spec));
      extra.emplace_back("residual", tube::tube_residual(spec, W));
    }
  } else {
    throw ValidationError("unknown model '" + a.model + "'");
  }
  if (c.format == "csv") {
    emit(c, report_csv(rep, extra));
  } else {
    json j = json::parse(io::to_json(rep));
    j["route"] = a.route;
    for (auto& [k, v] : extra) j[k] = v;
    emit(c, j.dump(2));
  }
  return ok;
}

struct LimitArgs {
  std::string model = "cusp";
  std::string form = "rho";
  std::string route = "direct";
  double eps_bar = pi;
  double eps = 0.5;
};

int cmd_renvol_limit(const Common& c, const LimitArgs& a) {
  auto cfg = quad_config(c);
  if (a.model == "cusp") {
    auto sched = cusp_schedule(c.schedule);
    auto form = a.form == "eps" ? cusp::LimitForm::eps : cusp::LimitForm::rho;
    if (a.form != "eps" && a.form != "rho") throw ValidationError("form must be rho or eps");
    if (a.route != "direct" && a.route != "closed-form") throw ValidationError("route must be direct or closed-form");
    auto route = a.route == "direct" ? cusp::Route::direct : cusp::Route::closed_form;
    auto res = cusp::truncated_cusp_renvol(a.eps_bar, sched, form, route, cfg);
    Table t{{a.form == "eps" ? "eps" : "rho", "log_rho", "W", "renormalized", "increment", "b"}, {}};
    for (const auto& r : res.rows) t.rows.push_back({r.parameter, r.log_rho, r.W, r.renormalized, r.increment, r.b});
    if (c.format == "csv") {
      emit(c, to_csv(t) + fmt::format("# fitted_order,{}\n# limit_estimate,{}\n# converged,{}\n", csv_number(res.fit.order),
                                      csv_number(res.limit_estimate), res.converged ? 1 : 0));
    } else {
      emit(c, json{{"model", "cusp"},
                   {"form", a.form},
                   {"eps_bar", a.eps_bar},
                   {"rows", table_json(t)},
                   {"fit", {{"order", res.fit.order}, {"coefficient", res.fit.coefficient}, {"limit", res.fit.limit}, {"ok", res.fit.ok}}},
                   {"limit_estimate", res.limit_estimate},
                   {"last_term", res.last_term},
                   {"cauchy", res.cauchy},
                   {"converged", res.converged},
                   {"note", res.note}}
                  .dump(2));
    }
    if (!res.converged) {
      std::cerr << "renvol-limit: " << res.note << "\n";
      return nonconvergence;
    }
    return ok;
  }
  if (a.model == "tube") {
    std::vector<double> ells = c.schedule.empty() ? std::vector<double>{0.2, 0.1, 0.05} : parse_list(c.schedule);
    if (ells.size() < 3) throw ValidationError("tube schedule needs at least three lengths");
    for (std::size_t i = 1; i < ells.size(); ++i)
      if (!(ells[i] < ells[i - 1])) throw ValidationError("tube schedule must decrease monotonically");
    Table t{{"ell", "W", "adapted", "residual", "increment"}, {}};
    std::vector<double> res;
    for (double ell : ells) {
      auto spec = tube::TubeSpec::make(ell, a.eps);
      double W = tube::tube_w_volume(spec, cfg).total_W;
      double r = tube::tube_residual(spec, W);
      t.rows.push_back({ell, W, W + pi * pi * pi / ell, r, res.empty() ? 0.0 : r - res.back()});
      res.push_back(r);
    }
    auto f = fit::fit_remainder(ells, res, 0.0, 4.0);
    bool conv = f.ok && f.order > 0 && std::abs(f.limit) <= 1e-3 * std::max(1.0, std::abs(res.front()));
    if (c.format == "csv") {
      emit(c, to_csv(t) + fmt::format("# fitted_order,{}\n# limit_estimate,{}\n# converged,{}\n", csv_number(f.order),
                                      csv_number(f.limit), conv ? 1 : 0));
    } else {
      emit(c, json{{"model", "tube"},
                   {"eps", a.eps},
                   {"rows", table_json(t)},
                   {"fit", {{"order", f.order}, {"coefficient", f.coefficient}, {"limit", f.limit}, {"ok", f.ok}}},
                   {"limit_estimate", f.limit},
                   {"converged", conv}}
                  .dump(2));
    }
    if (!conv) {
      std::cerr << "renvol-limit: residual does not tend to 0 (fitted limit " << f.limit << ")\n";
      return nonconvergence;
    }
    return ok;
  }
  throw ValidationError("unknown model '" + a.model + "'");
}

struct AdaptedArgs {
  std::string system;
  double base = NAN;
};

int cmd_adapted(const Common& c, const AdaptedArgs& a) {
  std::ifstream f(a.system);
  if (!f) throw ValidationError("cannot read " + a.system);
  std::stringstream ss;
  ss << f.rdbuf();
  auto sys = io::curve_system_from_json(ss.str());
  auto res = adapted::correction_max(sys);
  auto marg = adapted::marginal_values(sys);
  double e1 = adapted::epsilon1_threshold(sys.genus_sum);
  if (c.format == "csv") {
    Table t{{"id", "length", "compressible", "in_first_optimum", "marginal"}, {}};
    const auto& first = res.optima.front().members;
    for (const auto& cv : sys.curves) {
      double m = NAN;
      for (auto& [id, v] : marg)
        if (id == cv.id) m = v;
      bool in = std::find(first.begin(), first.end(), cv.id) != first.end();
      t.rows.push_back({double(cv.id), cv.length, cv.compressible ? 1.0 : 0.0, in ? 1.0 : 0.0, m});
    }
    emit(c, to_csv(t) + fmt::format("# value,{}\n# epsilon1,{}\n# optima,{}\n", csv_number(res.value), csv_number(e1),
                                    res.optima.size()));
  } else {
    json j = json::parse(io::to_json(res));
    j["epsilon1"] = e1;
    json m = json::array();
    for (auto& [id, v] : marg) m.push_back({{"id", id}, {"marginal", v}});
    j["marginals"] = m;
    if (!std::isnan(a.base)) j["adapted_value"] = a.base + res.value;
    emit(c, j.dump(2));
  }
  return ok;
}

int cmd_check(const Common& c) {
  auto results = acceptance::run_all();
  int failed = 0;
  json arr = json::array();
  Table t{{"criterion", "pass", "seconds"}, {}};
  for (const auto& r : results) {
    std::cout << acceptance::format_line(r) << "\n";
    for (const auto& d : r.details) std::cout << "      " << d << "\n";
    failed += !r.pass;
    arr.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"summary", r.summary}, {"details", r.details},
                   {"seconds", r.seconds}});
    t.rows.push_back({double(r.id), r.pass ? 1.0 : 0.0, r.seconds});
  }
  std::cout << fmt::format("{} of {} criteria passed\n", results.size() - failed, results.size());
  if (!c.out.empty()) emit(c, c.format == "csv" ? to_csv(t) : json{{"criteria", arr}}.dump(2));
  return failed ? criteria_failed : ok;
}

void error_json(const char* kind, const std::string& msg) {
  std::cerr << json{{"error", kind}, {"message", msg}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"W-volume and renormalized-volume computations"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--tol", common.tol, "relative quadrature tolerance")->check(CLI::PositiveNumber);
    s->add_option("--out", common.out, "output file (default stdout)");
    s->add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--jobs", common.jobs, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    s->add_option("--schedule", common.schedule, "limit schedule: k0:k1 decades or a comma list");
  };

  EpsteinArgs ea;
  auto* ep = app.add_subcommand("epstein", "sample the Epstein surface of a metric on a radial grid");
  add_common(ep);
  ep->add_option("--metric", ea.metric, "cusp, tube, flat or perturbed")->check(CLI::IsMember({"cusp", "tube", "flat", "perturbed"}));
  ep->add_option("--ell", ea.ell, "tube core length");
  ep->add_option("--eps", ea.eps, "tube boundary length");
  ep->add_option("--psi", ea.psi, "coefficient a of psi(z) = a z");
  ep->add_option("--phi", ea.c, "constant phi of the flat metric");
  ep->add_option("--rho-min", ea.rho_min, "smallest grid radius");
  ep->add_option("--rho-max", ea.rho_max, "largest grid radius");
  ep->add_option("-n,--points", ea.n, "radial grid points");
  ep->add_option("--angles", ea.angles, "angular grid points");

  WvolArgs wa;
  auto* wv = app.add_subcommand("wvol", "W-volume report of a cusp or tube region");
  add_common(wv);
  wv->add_option("--model", wa.model)->check(CLI::IsMember({"cusp", "tube"}));
  wv->add_option("--route", wa.route)->check(CLI::IsMember({"direct", "closed-form", "polyakov"}));
  wv->add_option("--rho1", wa.rho1);
  wv->add_option("--rho2", wa.rho2);
  wv->add_option("--ell", wa.ell);
  wv->add_option("--eps", wa.eps);
  wv->add_flag("--compare", wa.compare, "also run the other route and report the relative delta");
  wv->add_flag("--asymptote", wa.asymptote, "report the residual against the leading asymptote");
  wv->add_flag("--plus-h", wa.plus_h, "include the -3/2 int (1 + H) caterpillar terms");

  LimitArgs la;
  auto* rl = app.add_subcommand("renvol-limit", "convergence table of a renormalized limit");
  add_common(rl);
  rl->add_option("--model", la.model)->check(CLI::IsMember({"cusp", "tube"}));
  rl->add_option("--form", la.form)->check(CLI::IsMember({"rho", "eps"}));
  rl->add_option("--route", la.route)->check(CLI::IsMember({"direct", "closed-form"}));
  rl->add_option("--eps-bar", la.eps_bar, "outer horocycle length");
  rl->add_option("--eps", la.eps, "tube boundary length");

  AdaptedArgs aa;
  auto* ad = app.add_subcommand("adapted", "optimal compressible multicurves of a curve system");
  add_common(ad);
  ad->add_option("system", aa.system, "CurveSystem JSON file")->required();
  ad->add_option("--base", aa.base, "base renormalized volume");

  auto* ck = app.add_subcommand("check", "run the acceptance suite");
  add_common(ck);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return validation;
  }

  try {
    if (common.jobs > 0) quad::set_parallelism(common.jobs);
    if (*ep) return cmd_epstein(common, ea);
    if (*wv) return cmd_wvol(common, wa);
    if (*rl) return cmd_renvol_limit(common, la);
    if (*ad) return cmd_adapted(common, aa);
    if (*ck) return cmd_check(common);
  } catch (const ValidationError& e) {
    error_json("validation", e.what());
    return validation;
  } catch (const NonConvergence& e) {
    error_json("nonconvergence", e.what());
    return nonconvergence;
  } catch (const std::exception& e) {
    error_json("validation", e.what());
    return validation;
  }
  return ok;
}
