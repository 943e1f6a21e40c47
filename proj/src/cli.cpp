#include "ballbody/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ballbody/body_json.hpp"
#include "ballbody/curvature.hpp"
#include "ballbody/errors.hpp"
#include "ballbody/floating.hpp"
#include "ballbody/functionals.hpp"
#include "ballbody/inequality.hpp"
#include "ballbody/parallel.hpp"
#include "ballbody/report.hpp"

namespace ballbody {

namespace {

using ojson = nlohmann::ordered_json;

struct Outcome {
  std::string text;
  std::string gnuplot;
  std::string diagnostics;
  int code = kExitPass;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

int default_resolution(int n) { return n == 2 ? 4096 : n == 3 ? 32 : 100000; }

std::string format_of(const RunConfig& c, const char* fallback) {
  const std::string f = c.format.empty() ? fallback : c.format;
  if (f != "json" && f != "csv") throw UsageError("--format must be json or csv");
  return f;
}

SphereGrid grid_for(const RunConfig& c, int n) {
  const int res = c.resolution.value_or(default_resolution(n));
  if (n >= 4 && !c.seed) throw UsageError("--seed is required when dim >= 4");
  return default_grid(n, res, c.seed);
}

std::string vec_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_number(v[i]);
  return s + ")";
}

Body load_member(const RunConfig& c, const SphereGrid& grid) {
  if (c.body_path.empty()) throw UsageError("--body is required");
  Body body = load_body(c.body_path);
  if (c.dim && *c.dim != body.dim())
    throw UsageError("--dim " + std::to_string(*c.dim) + " does not match the body dimension " +
                     std::to_string(body.dim()));
  if (grid.dim != body.dim()) throw UsageError("grid dimension does not match the body");
  const MembershipCheck check = ball_body_check(body, grid, 1e-6);
  if (!check.member) {
    std::string msg = "body is not in the ball-body class";
    if (check.failure)
      msg += ": principal radii " + vec_string(check.failure->radii) + " at direction " +
             vec_string(check.failure->direction.coords()) + " leave [0, 1]";
    for (const auto& v : check.invariant_violations) msg += "; " + v;
    throw InvalidArgument(msg);
  }
  return body;
}

int body_dim(const RunConfig& c) {
  if (c.body_path.empty()) throw UsageError("--body is required");
  return load_body(c.body_path).dim();
}

Outcome cmd_functionals(const RunConfig& c) {
  const int n = c.dim.value_or(body_dim(c));
  const SphereGrid grid = grid_for(c, n);
  const Body body = load_member(c, grid);
  const FunctionalReport rep = compute_functionals(body, grid);
  Outcome o;
  if (format_of(c, "json") == "json") {
    ojson j;
    j["body"] = describe(body);
    const ojson fields = to_json(rep);
    for (auto& [k, v] : fields.items()) j[k] = v;
    o.text = dump_json(j);
  } else {
    o.text = to_csv(functionals_table(rep));
  }
  o.gnuplot = "# omega_c omega_classical surface_area mean_width_half volume\n" + format_number(rep.omega_c) + " " +
              format_number(rep.omega_classical) + " " + format_number(rep.surface_area) + " " +
              format_number(rep.mean_width_half) + " " + format_number(rep.volume) + "\n";
  return o;
}

Outcome cmd_dual_check(const RunConfig& c) {
  const int n = c.dim.value_or(body_dim(c));
  const SphereGrid grid = grid_for(c, n);
  const Body body = load_member(c, grid);
  std::vector<DualityResidual> res(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { res[i] = curvature_duality_residual(body, grid.nodes[i]); });
  double worst = 0.0;
  int skipped = 0;
  for (const auto& r : res) {
    if (!r.smooth) {
      ++skipped;
      continue;
    }
    worst = std::max(worst, r.value);
  }
  const double tol = c.tolerance.value_or(default_tolerance(InequalityKind::CurvatureDuality, body));
  Outcome o;
  o.code = worst <= tol ? kExitPass : kExitViolated;
  if (format_of(c, "json") == "json") {
    ojson j;
    j["body"] = describe(body);
    j["grid"] = grid.describe();
    j["nodes"] = grid.size();
    j["skipped_nonsmooth"] = skipped;
    j["max_residual"] = worst;
    j["tol"] = tol;
    j["finite_difference"] = uses_finite_differences(InequalityKind::CurvatureDuality, body);
    j["pass"] = o.code == kExitPass;
    o.text = dump_json(j);
  } else {
    Table t;
    t.header = {"node"};
    for (int i = 0; i < n; ++i) t.header.push_back("u" + std::to_string(i + 1));
    t.header.insert(t.header.end(), {"residual", "smooth"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::vector<Cell> row{static_cast<long long>(i)};
      for (double x : grid.nodes[i].coords()) row.emplace_back(x);
      row.emplace_back(res[i].value);
      row.emplace_back(res[i].smooth);
      t.rows.push_back(std::move(row));
    }
    o.text = to_csv(t);
  }
  std::ostringstream gp;
  gp << "# node residual\n";
  for (std::size_t i = 0; i < res.size(); ++i)
    if (res[i].smooth) gp << i << ' ' << format_number(res[i].value) << '\n';
  o.gnuplot = gp.str();
  return o;
}

std::vector<InequalityKind> parse_suite(const std::string& suite) {
  if (suite == "all") return {kAllInequalities.begin(), kAllInequalities.end()};
  std::vector<InequalityKind> kinds;
  std::stringstream ss(suite);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto k = parse_inequality_kind(item);
    if (!k) throw UsageError("unknown inequality kind '" + item + "'");
    kinds.push_back(*k);
  }
  return kinds;
}

Outcome cmd_verify(const RunConfig& c) {
  const int n = c.dim.value_or(body_dim(c));
  if (c.resolution && *c.resolution < 64) throw UsageError("verify needs --resolution >= 64");
  const std::vector<InequalityKind> kinds = parse_suite(c.suite);
  const SphereGrid grid = grid_for(c, n);
  const Body body = load_member(c, grid);
  InequalityEvaluator ev(body, grid);
  std::vector<InequalityRecord> records;
  for (InequalityKind k : kinds) records.push_back(ev.verify(k, c.tolerance));
  Outcome o;
  for (const auto& r : records)
    if (!r.pass) o.code = kExitViolated;
  o.text = format_of(c, "json") == "json" ? dump_json(to_json(records)) : to_csv(records_table(records));
  std::ostringstream gp;
  gp << "# index slack tol\n";
  for (std::size_t i = 0; i < records.size(); ++i)
    gp << i << ' ' << format_number(records[i].slack) << ' ' << format_number(records[i].tol) << '\n';
  o.gnuplot = gp.str();
  return o;
}

Outcome cmd_floating(const RunConfig& c) {
  const int n = c.dim.value_or(body_dim(c));
  if (n != 2) throw UsageError("floating supports planar bodies only");
  const SphereGrid grid = grid_for(c, n);
  const Body body = load_member(c, grid);
  FloatingOptions opts;
  opts.directions = c.directions;
  opts.relative = c.relative;
  const LimitFit fit = limit_estimate(body, c.deltas, opts, c.halfspace);
  const FunctionalReport rep = compute_functionals(body, grid);
  const double target = floating_constant(2) * (c.halfspace ? rep.omega_classical : rep.omega_c);
  const double rel = target != 0.0 ? std::abs(fit.estimate - target) / target : std::abs(fit.estimate);
  bool contained = true;
  for (const auto& r : fit.sweep) contained = contained && r.contained;
  const bool verdict = floating_limit_applies(body);
  Outcome o;
  if (!contained || (verdict && !(rel < c.accept))) o.code = kExitViolated;

  if (format_of(c, "csv") == "csv") {
    Table t;
    t.header = {"delta", "deficit", "ratio", "directions", "fit_estimate", "target", "rel_error"};
    for (const auto& r : fit.sweep)
      t.rows.push_back({r.delta, r.volume_deficit, r.ratio, static_cast<long long>(r.directions_used), fit.estimate,
                        target, rel});
    o.text = to_csv(t);
  } else {
    ojson j;
    j["body"] = describe(body);
    j["cutting_sets"] = c.halfspace ? "half-planes" : "unit discs";
    j["relative"] = c.relative;
    ojson sweep = ojson::array();
    for (const auto& r : fit.sweep) {
      ojson row;
      row["delta"] = r.delta;
      row["deficit"] = r.volume_deficit;
      row["ratio"] = r.ratio;
      row["directions"] = r.directions_used;
      row["max_cut_error"] = r.max_cut_error;
      row["contained"] = r.contained;
      sweep.push_back(row);
    }
    j["sweep"] = sweep;
    j["fit_estimate"] = fit.estimate;
    j["fit_slope"] = fit.slope;
    j["fit_residual"] = fit.fit_residual;
    j["target"] = target;
    j["rel_error"] = rel;
    j["accept"] = c.accept;
    j["verdict"] = verdict ? (o.code == kExitPass ? "pass" : "fail") : "none";
    o.text = dump_json(j);
  }
  std::ostringstream gp;
  gp << "# delta ratio\n";
  for (const auto& r : fit.sweep) gp << format_number(r.delta) << ' ' << format_number(r.ratio) << '\n';
  o.gnuplot = gp.str();
  return o;
}

Outcome cmd_search(const RunConfig& c) {
  const int n = c.dim.value_or(2);
  if (n < 2) throw UsageError("--dim must be at least 2");
  const SphereGrid grid = grid_for(c, n);
  SearchResult res;
  double expected = static_cast<double>(n) / (n + 1);
  double error = 0.0;
  bool pass = false;
  if (c.family == "ball") {
    res = extremal_search_ball(n, grid);
    error = std::abs(res.params[0] - expected);
    pass = error < 1e-6;
  } else if (c.family == "trig2d") {
    if (n != 2) throw UsageError("the trig2d family is planar");
    res = extremal_search_trig2d(grid);
    error = std::abs(res.params[1]);
    pass = error < 1e-4;
  } else {
    throw UsageError("--family must be ball or trig2d");
  }
  Outcome o;
  for (const auto& r : res.rejected) o.diagnostics += r + '\n';
  o.code = pass ? kExitPass : kExitViolated;
  if (format_of(c, "json") == "json") {
    ojson j;
    j["family"] = res.family;
    j["dim"] = n;
    j["params"] = res.params;
    j["value"] = res.value;
    j["expected_radius"] = expected;
    j["error"] = error;
    j["evaluations"] = res.evaluations;
    j["rejected_steps"] = res.rejected.size();
    j["pass"] = pass;
    o.text = dump_json(j);
  } else {
    Table t;
    t.header = {"family", "dim", "value", "expected_radius", "error", "evaluations", "pass"};
    std::vector<Cell> row{res.family, static_cast<long long>(n), res.value, expected, error,
                          static_cast<long long>(res.evaluations), pass};
    for (std::size_t i = 0; i < res.params.size(); ++i) {
      t.header.push_back("p" + std::to_string(i + 1));
      row.emplace_back(res.params[i]);
    }
    t.rows.push_back(std::move(row));
    o.text = to_csv(t);
  }
  return o;
}

Outcome cmd_scan(const RunConfig& c) {
  const int n = c.dim.value_or(4);
  const ScanResult s = santalo_midpoint_scan(n, c.window_lo, c.window_hi, c.steps);
  const double fpp = midpoint_second_derivative(n);
  const double diff = midpoint_second_difference(n, 1e-3);
  const bool consistent = (s.gain > 0.0) == (fpp > 0.0) && (diff > 0.0) == (fpp > 0.0);
  Outcome o;
  o.code = consistent ? kExitPass : kExitViolated;
  if (format_of(c, "json") == "json") {
    ojson j;
    j["dim"] = n;
    j["window"] = {c.window_lo, c.window_hi};
    j["steps"] = c.steps;
    j["best_r"] = s.best_r;
    j["gain"] = s.gain;
    j["second_difference"] = diff;
    j["second_derivative"] = fpp;
    j["consistent"] = consistent;
    o.text = dump_json(j);
  } else {
    Table t;
    t.header = {"r", "gain"};
    for (std::size_t i = 0; i < s.radii.size(); ++i) t.rows.push_back({s.radii[i], s.values[i]});
    o.text = to_csv(t);
  }
  std::ostringstream gp;
  gp << "# r gain\n";
  for (std::size_t i = 0; i < s.radii.size(); ++i)
    gp << format_number(s.radii[i]) << ' ' << format_number(s.values[i]) << '\n';
  o.gnuplot = gp.str();
  return o;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw UsageError("failed writing '" + path + "'");
}

void add_common(CLI::App* sub, RunConfig& c, bool needs_body) {
  auto* body = sub->add_option("--body", c.body_path, "JSON body description");
  if (needs_body) body->required();
  sub->add_option("--dim", c.dim, "Ambient dimension n");
  sub->add_option("--resolution", c.resolution, "Grid resolution (nodes per axis / MC samples)");
  sub->add_option("--seed", c.seed, "Monte Carlo seed (required when n >= 4)");
  sub->add_option("--tolerance", c.tolerance, "Override the per-path tolerance");
  sub->add_option("--output", c.output, "Output file (default stdout)");
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--emit-gnuplot", c.gnuplot, "Also write a plain-text data file");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Outcome o;
    const std::string& cmd = config.command;
    if (cmd == "functionals")
      o = cmd_functionals(config);
    else if (cmd == "dual-check")
      o = cmd_dual_check(config);
    else if (cmd == "verify")
      o = cmd_verify(config);
    else if (cmd == "floating")
      o = cmd_floating(config);
    else if (cmd == "search")
      o = cmd_search(config);
    else if (cmd == "scan")
      o = cmd_scan(config);
    else
      throw UsageError("unknown command '" + cmd + "'");
    err << o.diagnostics;
    if (config.output.empty())
      out << o.text;
    else
      write_file(config.output, o.text);
    if (!config.gnuplot.empty()) write_file(config.gnuplot, o.gnuplot);
    return o.code;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerics for ball-bodies: c-affine surface area, c-duals, floating bodies"};
  app.require_subcommand(1);
  RunConfig c;

  auto* functionals = app.add_subcommand("functionals", "Omega^c, Omega, S, M*, Vol of a body");
  add_common(functionals, c, true);

  auto* dual = app.add_subcommand("dual-check", "Curvature duality residual r_i(u) + s_{n-i}(-u) - 1 over the grid");
  add_common(dual, c, true);

  auto* verify = app.add_subcommand("verify", "Evaluate the inequality suite");
  add_common(verify, c, true);
  verify->add_option("--suite", c.suite, "all, or comma-separated kinds (e.g. HOLDER_LINK,ALEXANDROV)");

  auto* floating = app.add_subcommand("floating", "c-floating body sweep and limit fit (planar)");
  add_common(floating, c, true);
  floating->add_option("--deltas", c.deltas, "Comma-separated cap areas, decreasing")->delimiter(',');
  floating->add_option("--directions", c.directions, "Number of cutting directions");
  floating->add_flag("--relative", c.relative, "Read deltas as fractions of Vol(K)");
  floating->add_flag("--halfspace", c.halfspace, "Cut with half-planes instead of unit discs");
  floating->add_option("--accept", c.accept, "Relative error accepted for the limit");

  auto* search = app.add_subcommand("search", "Maximise Omega^c over a family");
  add_common(search, c, false);
  search->add_option("--family", c.family, "ball or trig2d");

  auto* scan = app.add_subcommand("scan", "Midpoint scan of 1/2(Omega^c(rB) + Omega^c((1-r)B))");
  add_common(scan, c, false);
  std::vector<double> window;
  scan->add_option("--window", window, "lo,hi inside (0,1)")->delimiter(',')->expected(2);
  scan->add_option("--steps", c.steps, "Number of scan points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }
  if (window.size() == 2) {
    c.window_lo = window[0];
    c.window_hi = window[1];
  }
  for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
  return run(c, out, err);
}

}  // namespace ballbody
