#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sublin/continuation.hpp"
#include "sublin/corpus.hpp"
#include "sublin/error.hpp"
#include "sublin/ground_state.hpp"
#include "sublin/report.hpp"
#include "sublin/solver.hpp"
#include "sublin/spectrum.hpp"

namespace sublin::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Bad input; maps to exit code 1.
struct ConfigFailure {
  std::string field;
  std::string message;
};

struct Flags {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;

  std::optional<double> q;
  std::string init;
  std::string init_file;
  std::string method;
  std::optional<std::size_t> subdomain;
  std::optional<int> starts;
  std::optional<double> qmin, qmax, gmax;
  std::optional<int> steps;
  bool geometric_tail = false;
  bool write_samples = false;
  std::string corpus_id = "prop51";
  std::vector<std::string> inputs;
};

struct Context {
  json config;
  std::uint64_t seed = 0;
  fs::path out;
  SolveConfig solve;
  std::optional<Weight> weight;
};

json section(const json& config, const char* name) {
  if (!config.contains(name)) return json::object();
  if (!config.at(name).is_object()) throw ConfigFailure{name, std::string("'") + name + "' must be an object"};
  return config.at(name);
}

template <class T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigFailure{where + "." + key, "field '" + where + "." + key + "' has the wrong type"};
  }
}

json load_config(const Flags& f) {
  if (f.config_path.empty()) return json::object();
  std::ifstream in(f.config_path);
  if (!in) throw ConfigFailure{"config", "cannot open config file '" + f.config_path + "'"};
  try {
    json j = json::parse(in);
    if (!j.is_object()) throw ConfigFailure{"config", "config file must hold a JSON object"};
    return j;
  } catch (const json::parse_error& e) {
    throw ConfigFailure{"config", std::string("config file is not valid JSON: ") + e.what()};
  }
}

SolveConfig solver_config(const json& config) {
  const json s = section(config, "solver");
  SolveConfig c;
  c.tol_residual = get_or(s, "tol_residual", c.tol_residual, "solver");
  c.max_iter = get_or(s, "max_iter", c.max_iter, "solver");
  c.eps_reg = get_or(s, "eps_reg", c.eps_reg, "solver");
  c.check_bounds = get_or(s, "check_bounds", c.check_bounds, "solver");
  if (!(c.tol_residual > 0.0) || c.max_iter <= 0 || !(c.eps_reg > 0.0))
    throw ConfigFailure{"solver", "solver settings must be strictly positive"};
  return c;
}

GridPtr build_grid(const json& config, const WeightSpec& spec) {
  const json g = section(config, "grid");
  const std::string kind = get_or<std::string>(g, "kind", "interval", "grid");
  const auto n = get_or<std::size_t>(g, "n_interior", 799, "grid");
  try {
    if (kind == "interval") {
      const double x0 = get_or(g, "x0", spec.domain ? spec.domain->lower : 0.0, "grid");
      const double x1 = get_or(g, "x1", spec.domain ? spec.domain->upper : 1.0, "grid");
      if (!spec.domain && !(g.contains("x0") && g.contains("x1")))
        throw ConfigFailure{"grid.x0", "weight has no domain; set grid.x0 and grid.x1"};
      return Grid::interval(x0, x1, n);
    }
    if (kind == "radial") {
      const double r = get_or(g, "R", spec.domain ? spec.domain->upper : 1.0, "grid");
      const int dim = get_or(g, "dim", 1, "grid");
      return Grid::radial(r, dim, n);
    }
  } catch (const Error& e) {
    throw ConfigFailure{"grid", e.what()};
  }
  throw ConfigFailure{"grid.kind", "grid.kind must be 'interval' or 'radial'"};
}

Context prepare(const Flags& f, bool needs_weight) {
  Context ctx;
  ctx.config = load_config(f);
  if (f.n) ctx.config["grid"]["n_interior"] = *f.n;
  ctx.seed = f.seed ? *f.seed : get_or<std::uint64_t>(ctx.config, "seed", 0, "config");
  ctx.config["seed"] = ctx.seed;
  ctx.out = f.out_dir;
  ctx.solve = solver_config(ctx.config);
  if (!needs_weight) return ctx;
  if (!ctx.config.contains("weight")) throw ConfigFailure{"weight", "missing required field 'weight'"};
  try {
    WeightSpec spec = corpus::parse_weight(ctx.config.at("weight"));
    GridPtr grid = build_grid(ctx.config, spec);
    ctx.weight.emplace(std::move(spec), grid);
  } catch (const Error& e) {
    throw ConfigFailure{"weight", e.what()};
  }
  std::error_code ec;
  fs::create_directories(ctx.out, ec);
  if (ec) throw ConfigFailure{"out", "cannot create output directory '" + ctx.out.string() + "'"};
  return ctx;
}

void write_json(const fs::path& p, const json& j) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::config_error, "cannot write " + p.string());
  out << j.dump(2) << '\n';
}

json run_report(const Context& ctx, const std::string& command, double seconds) {
  json r;
  r["artifact"] = "sublin";
  r["version"] = kVersion;
  r["command"] = command;
  r["config"] = ctx.config;
  if (ctx.weight) r["grid"] = report::grid_json(*ctx.weight->grid());
  r["timings"] = {{"wall_seconds", seconds}};
  return r;
}

std::vector<double> xs(const Grid& g) { return {g.nodes().begin(), g.nodes().end()}; }

Field read_init_file(const Weight& w, const std::string& path) {
  const report::CsvTable t = report::read_csv(path);
  const std::vector<double> u = t.numeric("u");
  if (u.size() != w.grid()->size())
    throw ConfigFailure{"init_file", "init file has " + std::to_string(u.size()) + " rows, grid has " +
                                         std::to_string(w.grid()->size())};
  return Field(w.grid(), u);
}

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int cmd_solve(const Flags& f, std::ostream& out) {
  const auto t0 = Clock::now();
  Context ctx = prepare(f, true);
  const Weight& w = *ctx.weight;
  const json s = section(ctx.config, "solve");
  const double q = f.q ? *f.q : get_or(s, "q", 0.5, "solve");
  const std::string init = !f.init.empty() ? f.init : get_or<std::string>(s, "init", "sub", "solve");
  const std::string method = !f.method.empty() ? f.method : get_or<std::string>(s, "method", "newton", "solve");
  const std::string init_file = !f.init_file.empty() ? f.init_file : get_or<std::string>(s, "init_file", "", "solve");
  if (!(q > 0.0 && q < 1.0)) throw ConfigFailure{"solve.q", "q must lie in (0, 1)"};
  if (init != "zero" && init != "sub" && init != "file") throw ConfigFailure{"solve.init", "init must be zero, sub or file"};
  if (method != "newton" && method != "monotone") throw ConfigFailure{"solve.method", "method must be newton or monotone"};
  ctx.config["solve"] = {{"q", q}, {"init", init}, {"method", method}, {"init_file", init_file}};

  Field start(w.grid());
  if (init == "file") {
    if (init_file.empty()) throw ConfigFailure{"solve.init_file", "init = file needs solve.init_file or --init-file"};
    start = read_init_file(w, init_file);
  } else if (init == "sub") {
    try {
      start = make_subsolution(w, q);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::no_global_subsolution && e.code() != ErrorCode::precondition_failed) throw;
      start = component_subsolution(w, q);
    }
  }
  SolveReport rep = method == "newton" ? newton_solve(w, q, start, ctx.solve)
                                       : monotone_iterate(w, q, start, make_supersolution(w, q), ctx.solve);
  report::write_csv(ctx.out / "solution.csv", report::solution_table(w, rep.solution));
  report::AssertionTally tally;
  tally.add(rep.bounds);
  json r = run_report(ctx, "solve", since(t0));
  r["result"] = report::to_json(rep);
  r["result"]["q"] = q;
  r["series"] = {{"x", xs(*w.grid())}, {"u", rep.solution.values}};
  r["assertions"] = tally.to_json();
  write_json(ctx.out / "report.json", r);
  out << r["result"].dump() << '\n';
  return rep.converged() ? kOk : kSolverFailure;
}

int cmd_eig(const Flags& f, std::ostream& out) {
  const auto t0 = Clock::now();
  Context ctx = prepare(f, true);
  const Weight& w = *ctx.weight;
  std::optional<Component> sub;
  const json e = section(ctx.config, "eig");
  std::optional<std::size_t> k = f.subdomain;
  if (!k && e.contains("subdomain") && !e.at("subdomain").is_null()) k = get_or<std::size_t>(e, "subdomain", 0, "eig");
  if (k) {
    if (*k >= w.components().size())
      throw ConfigFailure{"eig.subdomain", "subdomain index " + std::to_string(*k) + " out of range (" +
                                               std::to_string(w.components().size()) + " components)"};
    sub = w.components()[*k];
  }
  const EigenPair ep = principal_eigenpair(w, sub);
  json res = {{"lambda1", ep.lambda1},
              {"transversality", transversality(w, ep)},
              {"residual", ep.residual},
              {"subdomain", {ep.subdomain.begin, ep.subdomain.end}}};
  res["t_star"] = t_star(w, ep);
  json r = run_report(ctx, "eig", since(t0));
  r["result"] = res;
  r["series"] = {{"x", xs(*w.grid())}, {"u", ep.phi1.values}};
  write_json(ctx.out / "report.json", r);
  out << res.dump() << '\n';
  return kOk;
}

int cmd_groundstate(const Flags& f, std::ostream& out) {
  const auto t0 = Clock::now();
  Context ctx = prepare(f, true);
  const Weight& w = *ctx.weight;
  const json s = section(ctx.config, "groundstate");
  const double q = f.q ? *f.q : get_or(s, "q", 0.5, "groundstate");
  const int starts = f.starts ? *f.starts : get_or(s, "starts", 5, "groundstate");
  if (!(q > 0.0 && q < 1.0)) throw ConfigFailure{"groundstate.q", "q must lie in (0, 1)"};
  if (starts < 0) throw ConfigFailure{"groundstate.starts", "starts must be >= 0"};
  ctx.config["groundstate"] = {{"q", q}, {"starts", starts}};
  const GroundState gs = minimize_energy(w, q, ctx.solve, starts, ctx.seed);
  report::write_csv(ctx.out / "groundstate.csv", report::solution_table(w, gs.u));
  report::AssertionTally tally;
  tally.add(gs.polish.bounds);
  json r = run_report(ctx, "groundstate", since(t0));
  r["result"] = report::to_json(gs);
  r["series"] = {{"x", xs(*w.grid())}, {"u", gs.u.values}};
  r["assertions"] = tally.to_json();
  write_json(ctx.out / "report.json", r);
  out << json({{"energy", gs.energy}, {"sup_norm", gs.u.sup_norm()}, {"status", to_string(gs.polish.status)}}).dump()
      << '\n';
  return gs.polish.converged() ? kOk : kSolverFailure;
}

std::vector<double> explicit_grid(const json& s, const char* key, const std::string& where) {
  if (!s.contains(key)) return {};
  try {
    return s.at(key).get<std::vector<double>>();
  } catch (const json::exception&) {
    throw ConfigFailure{where + "." + key, std::string("'") + key + "' must be a list of numbers"};
  }
}

int cmd_curve(const Flags& f, std::ostream& out) {
  const auto t0 = Clock::now();
  Context ctx = prepare(f, true);
  const Weight& w = *ctx.weight;
  const json s = section(ctx.config, "curve");
  std::vector<double> q_grid = explicit_grid(s, "q_grid", "curve");
  if (q_grid.empty() || f.qmin || f.qmax || f.steps) {
    const double qmin = f.qmin ? *f.qmin : get_or(s, "qmin", 0.01, "curve");
    const double qmax = f.qmax ? *f.qmax : get_or(s, "qmax", 0.99, "curve");
    const int steps = f.steps ? *f.steps : get_or(s, "steps", 20, "curve");
    const bool geo = f.geometric_tail || get_or(s, "geometric_tail", false, "curve");
    try {
      q_grid = make_q_grid(qmin, qmax, steps, geo);
    } catch (const Error& e) {
      throw ConfigFailure{"curve", e.what()};
    }
  }
  ctx.config["curve"] = {{"q_grid", q_grid}};
  ContinuationConfig cc;
  cc.solve = ctx.solve;
  cc.seed = ctx.seed;
  const SolutionCurve curve = continue_curve(w, q_grid, cc);

  std::optional<EigenPair> ep;
  double ts = 0.0;
  json limits = json::object();
  try {
    ep = principal_eigenpair(w);
    ts = t_star(w, *ep);
    limits["eigen"] = {{"lambda1", ep->lambda1}, {"t_star", ts}, {"profile_sup", ts * ep->phi1.sup_norm()}};
  } catch (const Error& e) {
    ep.reset();
    limits["eigen"] = {{"error", e.what()}};
  }
  const SolutionOperatorResult so = solution_operator(w);
  const bool s_positive = so.positive;
  report::CsvTable table = report::curve_table(curve, ep ? &*ep : nullptr, ts, &so.value);
  report::write_csv(ctx.out / "curve.csv", table);
  if (f.write_samples || get_or(s, "write_samples", false, "curve")) {
    for (std::size_t k = 0; k < curve.samples.size(); ++k) {
      char name[32];
      std::snprintf(name, sizeof name, "sample_%03zu.csv", k);
      report::write_csv(ctx.out / name, report::solution_table(w, curve.samples[k].u));
    }
  }
  if (ep) {
    try {
      limits["q1"] = report::to_json(asymptotic_q1(w, curve));
    } catch (const Error& e) {
      limits["q1"] = {{"error", e.what()}};
    }
  }
  if (s_positive) limits["q0"] = report::to_json(asymptotic_q0(w, curve));

  report::AssertionTally tally;
  for (const CurveSample& smp : curve.samples) tally.add(smp.bounds);
  json r = run_report(ctx, "curve", since(t0));
  r["result"] = report::to_json(curve);
  r["limits"] = limits;
  r["series"] = {{"q", table.numeric("q")}, {"sup_norm", table.numeric("sup_norm")}};
  if (ep) r["series"]["g_rescaled"] = table.numeric("g_rescaled");
  r["assertions"] = tally.to_json();
  write_json(ctx.out / "report.json", r);
  out << json({{"samples", curve.samples.size()},
               {"truncated", curve.truncated},
               {"regime", limits.contains("q1") && limits["q1"].contains("regime") ? limits["q1"]["regime"] : json(nullptr)}})
             .dump()
      << '\n';
  return curve.truncated ? kSolverFailure : kOk;
}

int cmd_singular(const Flags& f, std::ostream& out) {
  const auto t0 = Clock::now();
  Context ctx = prepare(f, true);
  const Weight& w = *ctx.weight;
  const json s = section(ctx.config, "singular");
  std::vector<double> g_grid = explicit_grid(s, "gamma_grid", "singular");
  if (g_grid.empty() || f.gmax || f.steps) {
    const double gmax = f.gmax ? *f.gmax : get_or(s, "gmax", 0.05, "singular");
    const int steps = f.steps ? *f.steps : get_or(s, "steps", 6, "singular");
    if (!(gmax > 0.0) || steps < 2) throw ConfigFailure{"singular", "need gmax > 0 and steps >= 2"};
    g_grid.clear();
    for (int k = 0; k < steps; ++k) g_grid.push_back(gmax * k / (steps - 1));
  }
  ctx.config["singular"] = {{"gamma_grid", g_grid}};
  ContinuationConfig cc;
  cc.solve = ctx.solve;
  const SolutionCurve curve = singular_continue(w, g_grid, cc);
  const Field sa = solve_linear(*w.grid(), w.samples());
  report::CsvTable table = report::singular_table(curve, sa);
  report::write_csv(ctx.out / "singular.csv", table);
  json r = run_report(ctx, "singular", since(t0));
  r["result"] = report::to_json(curve);
  r["result"]["gamma0_estimate"] = -curve.last_good_q;
  r["series"] = {{"gamma", table.numeric("gamma")}, {"sup_norm", table.numeric("sup_norm")}, {"gap_s", table.numeric("gap_s")}};
  write_json(ctx.out / "report.json", r);
  out << json({{"samples", curve.samples.size()}, {"truncated", curve.truncated}, {"gamma0_estimate", -curve.last_good_q}})
             .dump()
      << '\n';
  return curve.truncated ? kSolverFailure : kOk;
}

int cmd_corpus_list(std::ostream& out) {
  json list = json::array();
  for (const auto& b : corpus::builtin_catalog()) list.push_back({{"id", b.id}, {"summary", b.summary}, {"params", b.params}});
  out << list.dump(2) << '\n';
  return kOk;
}

int cmd_corpus_check(const Flags& f, std::ostream& out) {
  if (f.corpus_id != "prop51" && f.corpus_id != "prop51_modified")
    throw ConfigFailure{"id", "invariant suite exists only for prop51 and prop51_modified"};
  const double q = f.q ? *f.q : 1.0 / 3.0;
  if (!(q > 0.0 && q < 1.0)) throw ConfigFailure{"q", "q must lie in (0, 1)"};
  const std::size_t n = f.n ? *f.n : 799;
  bool all = true;
  for (const auto& r : corpus::prop51_check(q, n)) {
    out << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    all = all && r.pass;
  }
  return all ? kOk : kSolverFailure;
}

/// Re-renders stored run reports into long-format plot tables.
int cmd_report(const Flags& f, std::ostream& out) {
  if (f.inputs.empty()) throw ConfigFailure{"input", "report needs at least one --input report.json"};
  report::CsvTable curves{{"run", "q", "sup_norm", "g_rescaled"}, {}};
  report::CsvTable solutions{{"run", "x", "u"}, {}};
  json regimes = json::array();
  for (std::size_t k = 0; k < f.inputs.size(); ++k) {
    std::ifstream in(f.inputs[k]);
    if (!in) throw ConfigFailure{"input", "cannot open '" + f.inputs[k] + "'"};
    json r;
    try {
      r = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigFailure{"input", "'" + f.inputs[k] + "' is not valid JSON"};
    }
    if (!r.contains("command") || !r.contains("series"))
      throw ConfigFailure{"input", "'" + f.inputs[k] + "' is not a run report"};
    const std::string cmd = r["command"];
    const json& s = r["series"];
    const std::string run = std::to_string(k);
    if (cmd == "curve") {
      const auto q = s["q"].get<std::vector<double>>();
      const auto sup = s["sup_norm"].get<std::vector<double>>();
      std::vector<double> g(q.size(), std::numeric_limits<double>::quiet_NaN());
      if (s.contains("g_rescaled")) g = s["g_rescaled"].get<std::vector<double>>();
      for (std::size_t i = 0; i < q.size(); ++i)
        curves.rows.push_back({run, report::format_double(q[i]), report::format_double(sup[i]), report::format_double(g[i])});
      regimes.push_back({{"run", k}, {"input", f.inputs[k]}, {"regime", classify_regime(q, sup, g)}});
    } else if (s.contains("x") && s.contains("u")) {
      const auto x = s["x"].get<std::vector<double>>();
      const auto u = s["u"].get<std::vector<double>>();
      for (std::size_t i = 0; i < x.size(); ++i)
        solutions.rows.push_back({run, report::format_double(x[i]), report::format_double(u[i])});
    }
  }
  std::error_code ec;
  fs::create_directories(f.out_dir, ec);
  const fs::path dir = f.out_dir;
  if (!curves.rows.empty()) report::write_csv(dir / "figure_curves.csv", curves);
  if (!solutions.rows.empty()) report::write_csv(dir / "figure_solutions.csv", solutions);
  write_json(dir / "regimes.json", regimes);
  out << regimes.dump() << '\n';
  return kOk;
}

void emit_error(std::ostream& err, std::string_view code, const std::string& message, const std::string& field = {}) {
  json e = {{"code", code}, {"message", message}};
  e["field"] = field.empty() ? json(nullptr) : json(field);
  err << json({{"error", e}}).dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonnegative solutions of -Δu = a(x) u^q with sign-changing a"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Flags f;
  auto common = [&f](CLI::App* sc) {
    sc->add_option("--config", f.config_path, "JSON config file");
    sc->add_option("--out", f.out_dir, "output directory");
    sc->add_option("--seed", f.seed, "RNG seed");
    sc->add_option("--n", f.n, "interior nodes");
  };
  auto* solve = app.add_subcommand("solve", "solve at fixed q");
  common(solve);
  solve->add_option("--q", f.q);
  solve->add_option("--init", f.init, "zero | sub | file");
  solve->add_option("--init-file", f.init_file, "CSV with a column u");
  solve->add_option("--method", f.method, "newton | monotone");
  auto* eig = app.add_subcommand("eig", "principal eigenpair, t* and transversality");
  common(eig);
  eig->add_option("--subdomain", f.subdomain, "index of a positivity component");
  auto* gs = app.add_subcommand("groundstate", "global minimizer of the energy");
  common(gs);
  gs->add_option("--q", f.q);
  gs->add_option("--starts", f.starts);
  auto* curve = app.add_subcommand("curve", "continuation in q");
  common(curve);
  curve->add_option("--qmin", f.qmin);
  curve->add_option("--qmax", f.qmax);
  curve->add_option("--steps", f.steps);
  curve->add_flag("--geometric-tail", f.geometric_tail);
  curve->add_flag("--samples", f.write_samples, "write one solution CSV per sample");
  auto* sing = app.add_subcommand("singular", "continuation of the singular problem in gamma");
  common(sing);
  sing->add_option("--gmax", f.gmax);
  sing->add_option("--steps", f.steps);
  auto* corpus_cmd = app.add_subcommand("corpus", "built-in weights");
  corpus_cmd->require_subcommand(1);
  auto* list = corpus_cmd->add_subcommand("list", "list builtins");
  auto* check = corpus_cmd->add_subcommand("check", "run the dead-core invariant suite");
  check->add_option("--id", f.corpus_id);
  check->add_option("--q", f.q);
  check->add_option("--n", f.n);
  auto* rep = app.add_subcommand("report", "re-render run reports into plot tables");
  rep->add_option("--input", f.inputs, "report.json files")->expected(1, -1);
  rep->add_option("--out", f.out_dir);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    emit_error(err, to_string(ErrorCode::config_error), e.what());
    return kConfigError;
  }

  try {
    if (solve->parsed()) return cmd_solve(f, out);
    if (eig->parsed()) return cmd_eig(f, out);
    if (gs->parsed()) return cmd_groundstate(f, out);
    if (curve->parsed()) return cmd_curve(f, out);
    if (sing->parsed()) return cmd_singular(f, out);
    if (list->parsed()) return cmd_corpus_list(out);
    if (check->parsed()) return cmd_corpus_check(f, out);
    if (rep->parsed()) return cmd_report(f, out);
  } catch (const ConfigFailure& c) {
    emit_error(err, to_string(ErrorCode::config_error), c.message, c.field);
    return kConfigError;
  } catch (const Error& e) {
    emit_error(err, to_string(e.code()), e.what());
    return e.code() == ErrorCode::config_error ? kConfigError : kSolverFailure;
  } catch (const std::exception& e) {
    emit_error(err, "internal", e.what());
    return kSolverFailure;
  }
  return kConfigError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace sublin::cli
