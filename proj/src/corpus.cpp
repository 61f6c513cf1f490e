#include "sublin/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sublin/error.hpp"
#include "sublin/kernels.hpp"

namespace sublin::corpus {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

double param(const json& params, const char* name, double fallback) {
  if (params.is_object() && params.contains(name)) {
    const auto& v = params.at(name);
    if (!v.is_number())
      throw Error(ErrorCode::invalid_argument, std::string("weight parameter '") + name + "' must be a number");
    return v.get<double>();
  }
  return fallback;
}

double required_param(const json& params, const char* name, const std::string& id) {
  if (!params.is_object() || !params.contains(name))
    throw Error(ErrorCode::invalid_argument, "builtin '" + id + "' needs parameter '" + name + "'");
  return param(params, name, 0.0);
}

double sublinear_q(const json& params, const std::string& id) {
  const double q = required_param(params, "q", id);
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::invalid_argument, "builtin '" + id + "': need 0 < q < 1");
  return q;
}

std::optional<Domain> domain_from(const json& params) {
  if (params.is_object() && params.contains("x0") && params.contains("x1"))
    return Domain{param(params, "x0", 0.0), param(params, "x1", 1.0)};
  return std::nullopt;
}

WeightSpec make(std::string id, json descriptor, std::optional<Domain> domain, std::function<double(double)> fn) {
  WeightSpec s;
  s.id = std::move(id);
  s.descriptor = std::move(descriptor);
  s.domain = domain;
  s.fn = std::move(fn);
  return s;
}

/// Distance to ∂Ω for a_lambda_eps; radial weights only see r = R.
double distance_to_boundary(const Domain& d, bool radial, double x) {
  if (radial) return d.upper - x;
  return std::min(x - d.lower, d.upper - x);
}

std::function<double(double)> piece_expr(const std::string& expr, const json& params) {
  if (expr == "const") {
    const double c = param(params, "c", 0.0);
    return [c](double) { return c; };
  }
  if (expr == "poly") {
    std::vector<double> coeffs;
    if (params.contains("coeffs")) coeffs = params.at("coeffs").get<std::vector<double>>();
    return [coeffs](double x) {
      double v = 0.0;
      for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
      return v;
    };
  }
  if (expr == "sin" || expr == "cos") {
    const double amp = param(params, "amp", 1.0);
    const double freq = param(params, "freq", 1.0);
    const double phase = param(params, "phase", 0.0);
    if (expr == "sin") return [=](double x) { return amp * std::sin(freq * x + phase); };
    return [=](double x) { return amp * std::cos(freq * x + phase); };
  }
  throw Error(ErrorCode::unknown_weight, "piecewise: unknown expression id '" + expr + "'");
}

WeightSpec parse_piecewise(const json& d) {
  struct Piece {
    double lo, hi;
    std::function<double(double)> fn;
  };
  std::vector<Piece> pieces;
  for (const auto& p : d.at("piecewise")) {
    const auto iv = p.at("interval").get<std::vector<double>>();
    if (iv.size() != 2 || !(iv[1] > iv[0]))
      throw Error(ErrorCode::invalid_argument, "piecewise: each interval must be [lo, hi] with lo < hi");
    pieces.push_back({iv[0], iv[1], piece_expr(p.at("expr").get<std::string>(), p.value("params", json::object()))});
  }
  if (pieces.empty()) throw Error(ErrorCode::invalid_argument, "piecewise: no pieces");
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  Domain dom{pieces.front().lo, pieces.back().hi};
  auto fn = [pieces](double x) {
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const bool last = k + 1 == pieces.size();
      if (x >= pieces[k].lo && (x < pieces[k].hi || (last && x <= pieces[k].hi))) return pieces[k].fn(x);
    }
    return std::numeric_limits<double>::quiet_NaN();
  };
  return make("piecewise", d, dom, fn);
}

WeightSpec parse_tabulated(const json& d) {
  const auto& t = d.at("tabulated");
  auto xs = t.at("x").get<std::vector<double>>();
  auto as = t.at("a").get<std::vector<double>>();
  if (xs.size() != as.size() || xs.size() < 2)
    throw Error(ErrorCode::invalid_argument, "tabulated: need matching x/a arrays with at least 2 samples");
  if (!std::is_sorted(xs.begin(), xs.end()) || std::adjacent_find(xs.begin(), xs.end()) != xs.end())
    throw Error(ErrorCode::invalid_argument, "tabulated: x must be strictly increasing");
  Domain dom{xs.front(), xs.back()};
  auto fn = [xs, as](double x) {
    if (x < xs.front() || x > xs.back()) return std::numeric_limits<double>::quiet_NaN();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t k = it == xs.end() ? xs.size() - 1 : static_cast<std::size_t>(it - xs.begin());
    k = std::max<std::size_t>(k, 1);
    const double t = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
    return (1.0 - t) * as[k - 1] + t * as[k];
  };
  return make("tabulated", d, dom, fn);
}

}  // namespace

// ---------------------------------------------------------------------------
// Dead-core construction

double Prop51Data::p(double x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
double Prop51Data::dp(double x) const { return (3.0 * c3 * x + 2.0 * c2) * x + c1; }
double Prop51Data::d2p(double x) const { return 6.0 * c3 * x + 2.0 * c2; }
double Prop51Data::f(double x) const { return std::pow(x + 1.0, r_exp) / r_exp; }
double Prop51Data::df(double x) const { return std::pow(x + 1.0, r_exp - 1.0); }
double Prop51Data::d2f(double x) const { return (r_exp - 1.0) * std::pow(x + 1.0, r_exp - 2.0); }
double Prop51Data::plateau() const { return -(r_exp - 1.0) * std::pow(r_exp, q); }

double Prop51Data::u1(double x) const {
  if (x <= -1.0) return 0.0;
  if (x <= 1.0) return f(x);
  if (x >= 2.0) return 0.0;
  return p(x);
}

Field Prop51Data::u1_field(const GridPtr& g) const {
  return Field::from_function(g, [this](double x) { return u1(x); });
}

Field Prop51Data::u2_field(const GridPtr& g) const {
  return Field::from_function(g, [this](double x) { return u2(x); });
}

Prop51Data prop51_build(double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::invalid_argument, "prop51_build: need 0 < q < 1");
  Prop51Data d;
  d.q = q;
  const double r = 2.0 / (1.0 - q);
  d.r_exp = r;
  d.c3 = -std::pow(2.0, r - 3.0) * (8.0 / r + r + 3.0);
  d.c2 = std::pow(2.0, r - 1.0) * (r + 6.0 / r + 2.0);
  d.c1 = -std::pow(2.0, r - 3.0) * (5.0 * r + 24.0 / r + 3.0);
  d.c0 = std::pow(2.0, r - 2.0) * (8.0 / r + r - 1.0);

  const double plateau = d.plateau();
  // Capture coefficients by value so the specs outlive `d`.
  auto weight_abs = [c3 = d.c3, c2 = d.c2, c1 = d.c1, c0 = d.c0, q, plateau](double ax) {
    if (ax <= 1.0) return plateau;
    const double pv = ((c3 * ax + c2) * ax + c1) * ax + c0;
    const double d2 = 6.0 * c3 * ax + 2.0 * c2;
    return -d2 / std::pow(pv, q);
  };
  const Domain dom{-2.0, 2.0};
  d.weight = make("prop51", {{"builtin", "prop51"}, {"params", {{"q", q}}}}, dom,
                  [weight_abs](double x) { return weight_abs(std::abs(x)); });
  d.modified_weight = make("prop51_modified", {{"builtin", "prop51_modified"}, {"params", {{"q", q}}}}, dom,
                           [weight_abs, plateau](double x) { return x < -1.0 ? plateau : weight_abs(std::abs(x)); });
  return d;
}

GridPtr prop51_grid(std::size_t n_interior) {
  if (n_interior % 2 == 0) ++n_interior;
  return Grid::interval(-2.0, 2.0, n_interior);
}

// ---------------------------------------------------------------------------
// Registry

const std::vector<BuiltinInfo>& builtin_catalog() {
  static const std::vector<BuiltinInfo> catalog = {
      {"constant", "a(x) = c", {{"c", {{"default", 1.0}, {"doc", "value"}}}, {"x0", {{"doc", "optional domain start"}}}, {"x1", {{"doc", "optional domain end"}}}}},
      {"sine", "a(x) = amp sin(freq x + phase) on (x0, x1), default (0, pi)",
       {{"amp", {{"default", 1.0}}}, {"freq", {{"default", 1.0}}}, {"phase", {{"default", 0.0}}},
        {"x0", {{"default", 0.0}}}, {"x1", {{"default", kPi}}}}},
      {"cosine_zero_mean", "a(x) = 1 - 2 cos^2(x - pi/2) on (-pi/2, pi/2); S(a) = sin^2(x - pi/2)/2", json::object()},
      {"manufactured", "a(x) = sin^(1-q) x on (0, pi); u = sin x solves -u'' = a u^q", {{"q", {{"doc", "exponent, 0<q<1"}}}}},
      {"two_mode", "a(x) = amp (sin x - kappa sin 3x) on (0, pi); S(a) = amp sin x (1 - kappa/3 + 4 kappa sin^2(x)/9)",
       {{"amp", {{"default", 1.0}}}, {"kappa", {{"default", 1.0}}}}},
      {"prop51", "explicit dead-core weight on (-2, 2)", {{"q", {{"doc", "exponent, 0<q<1"}}}}},
      {"prop51_modified", "dead-core weight with a := a(-1) on [-2, -1]", {{"q", {{"doc", "exponent, 0<q<1"}}}}},
      {"a_lambda_eps", "a1 - lambda a2 chi_{d(x, boundary) >= eps}; nested specs 'a1' (default sine), 'a2' (default constant 1)",
       {{"lambda", {{"doc", "> 0"}}}, {"eps", {{"doc", "> 0"}}}, {"radial", {{"default", false}}}}},
      {"scaled", "c * inner; nested spec 'inner'", {{"c", {{"doc", "> 0"}}}}},
  };
  return catalog;
}

WeightSpec builtin(const std::string& id, const json& params, const json& nested) {
  json desc = {{"builtin", id}, {"params", params.is_null() ? json::object() : params}};
  if (id == "constant") {
    const double c = param(params, "c", 1.0);
    return WeightSpec::constant(c, domain_from(params));
  }
  if (id == "sine") {
    const double amp = param(params, "amp", 1.0), freq = param(params, "freq", 1.0),
                 phase = param(params, "phase", 0.0);
    const Domain dom{param(params, "x0", 0.0), param(params, "x1", kPi)};
    return make(id, desc, dom, [=](double x) { return amp * std::sin(freq * x + phase); });
  }
  if (id == "cosine_zero_mean") {
    return make(id, desc, Domain{-kPi / 2, kPi / 2}, [](double x) {
      const double c = std::cos(x - kPi / 2);
      return 1.0 - 2.0 * c * c;
    });
  }
  if (id == "manufactured") {
    const double q = sublinear_q(params, id);
    return make(id, desc, Domain{0.0, kPi}, [q](double x) { return std::pow(std::max(std::sin(x), 0.0), 1.0 - q); });
  }
  if (id == "two_mode") {
    const double amp = param(params, "amp", 1.0), kappa = param(params, "kappa", 1.0);
    return make(id, desc, Domain{0.0, kPi}, [=](double x) { return amp * (std::sin(x) - kappa * std::sin(3.0 * x)); });
  }
  if (id == "prop51") {
    WeightSpec s = prop51_build(sublinear_q(params, id)).weight;
    s.descriptor = desc;
    return s;
  }
  if (id == "prop51_modified") {
    WeightSpec s = prop51_build(sublinear_q(params, id)).modified_weight;
    s.descriptor = desc;
    return s;
  }
  if (id == "a_lambda_eps") {
    const double lambda = required_param(params, "lambda", id);
    const double eps = required_param(params, "eps", id);
    if (!(lambda > 0.0) || !(eps > 0.0))
      throw Error(ErrorCode::invalid_argument, "a_lambda_eps: lambda and eps must be positive");
    const bool radial = params.is_object() && params.value("radial", false);
    WeightSpec a1 = nested.contains("a1") ? parse_weight(nested.at("a1")) : builtin("sine");
    WeightSpec a2 = nested.contains("a2") ? parse_weight(nested.at("a2")) : WeightSpec::constant(1.0);
    if (!a1.domain) throw Error(ErrorCode::invalid_argument, "a_lambda_eps: a1 must carry a domain");
    desc["a1"] = a1.descriptor;
    desc["a2"] = a2.descriptor;
    const Domain dom = *a1.domain;
    return make(id, desc, dom, [=, f1 = a1.fn, f2 = a2.fn](double x) {
      const bool core = distance_to_boundary(dom, radial, x) >= eps;
      return f1(x) - (core ? lambda * f2(x) : 0.0);
    });
  }
  if (id == "scaled") {
    const double c = required_param(params, "c", id);
    if (!(c > 0.0)) throw Error(ErrorCode::invalid_argument, "scaled: c must be positive");
    if (!nested.contains("inner")) throw Error(ErrorCode::invalid_argument, "scaled: needs nested 'inner' weight");
    WeightSpec inner = parse_weight(nested.at("inner"));
    desc["inner"] = inner.descriptor;
    return make(id, desc, inner.domain, [c, f = inner.fn](double x) { return c * f(x); });
  }
  throw Error(ErrorCode::unknown_weight, "unknown builtin weight id '" + id + "'");
}

WeightSpec parse_weight(const json& d) {
  if (!d.is_object()) throw Error(ErrorCode::invalid_argument, "weight descriptor must be an object");
  WeightSpec s;
  try {
    if (d.contains("builtin")) {
      json nested = json::object();
      for (const char* key : {"inner", "a1", "a2"})
        if (d.contains(key)) nested[key] = d.at(key);
      s = builtin(d.at("builtin").get<std::string>(), d.value("params", json::object()), nested);
    } else if (d.contains("constant")) {
      s = WeightSpec::constant(d.at("constant").get<double>());
    } else if (d.contains("piecewise")) {
      s = parse_piecewise(d);
    } else if (d.contains("tabulated")) {
      s = parse_tabulated(d);
    } else {
      throw Error(ErrorCode::invalid_argument,
                  "weight descriptor needs one of 'builtin', 'constant', 'piecewise', 'tabulated'");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("weight descriptor: ") + e.what());
  }
  if (d.contains("domain")) {
    const auto dom = d.at("domain").get<std::vector<double>>();
    if (dom.size() != 2 || !(dom[1] > dom[0]))
      throw Error(ErrorCode::invalid_argument, "weight 'domain' must be [x0, x1] with x0 < x1");
    s.domain = Domain{dom[0], dom[1]};
    s.descriptor["domain"] = dom;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Invariant suite

std::vector<InvariantResult> prop51_check(double q, std::size_t n_interior) {
  const Prop51Data d = prop51_build(q);
  const GridPtr g = prop51_grid(n_interior);
  const double h = g->h();
  std::vector<InvariantResult> out;
  auto fmt = [](double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
  };
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); };

  {
    const double e = std::max({rel(d.p(1.0), d.f(1.0)), rel(d.dp(1.0), d.df(1.0)), rel(d.d2p(1.0), d.d2f(1.0)),
                               std::abs(d.p(2.0)) / std::max(1.0, std::abs(d.c0))});
    out.push_back({"gluing", e <= 1e-10, "max relative defect " + fmt(e)});
  }
  {
    double pmin = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 20000; ++k) pmin = std::min(pmin, d.p(1.0 + k / 20000.0));
    out.push_back({"p_positive_on_(1,2)", pmin > 0.0, "min sampled p " + fmt(pmin)});
  }
  {
    const double expected = -std::pow(2.0, d.r_exp - 3.0) * (7.0 + d.r_exp + 24.0 / d.r_exp);
    const double e = rel(d.dp(2.0), expected);
    out.push_back({"p_prime_at_2", d.dp(2.0) < 0.0 && e <= 1e-10, "p'(2) = " + fmt(d.dp(2.0))});
  }
  {
    const double e = rel(-d.d2p(1.0) / std::pow(d.p(1.0), q), d.plateau());
    out.push_back({"weight_continuous_at_1", e <= 1e-10, "relative jump " + fmt(e)});
  }
  const Field u1 = d.u1_field(g);
  const Field u2 = d.u2_field(g);
  {
    double e = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) e = std::max(e, std::abs(u2[i] - u1[g->size() - 1 - i]));
    out.push_back({"mirror_symmetry", e == 0.0, "max |u2(x) - u1(-x)| " + fmt(e)});
  }
  {
    // Second-order one-sided second differences on each side of the glue
    // points; f is only C^{2, r-2} at x = -1, so the expected rate there is
    // h^{min(2, r-2)}.
    auto left = [&](double x0) {
      return (2 * d.u1(x0) - 5 * d.u1(x0 - h) + 4 * d.u1(x0 - 2 * h) - d.u1(x0 - 3 * h)) / (h * h);
    };
    auto right = [&](double x0) {
      return (2 * d.u1(x0) - 5 * d.u1(x0 + h) + 4 * d.u1(x0 + 2 * h) - d.u1(x0 + 3 * h)) / (h * h);
    };
    const double scale = std::max(1.0, std::abs(d.d2f(1.0)));
    const double gap1 = std::abs(left(1.0) - right(1.0)) / scale;
    const double gapm1 = std::abs(left(-1.0) - right(-1.0)) / scale;
    const double rate = std::pow(h, std::min(2.0, d.r_exp - 2.0));
    const double bound = 50.0 * rate * std::max(1.0, std::abs(d.c3));
    out.push_back({"c2_glue_discrete", gap1 <= bound && gapm1 <= bound,
                   "relative gaps " + fmt(gap1) + " (x=1), " + fmt(gapm1) + " (x=-1), bound " + fmt(bound)});
  }
  {
    const Weight w(d.weight, g);
    std::vector<double> res(g->size()), rhs(g->size());
    kernels::parallel::semilinear_residual(g->laplacian().lower, g->laplacian().diag, g->laplacian().upper,
                                           w.values(), u1.values, q, res);
    kernels::parallel::weighted_power(w.values(), u1.values, q, rhs);
    const double scale = kernels::parallel::max_abs(rhs);
    double smooth = 0.0, full = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) {
      const double x = g->node(i);
      full = std::max(full, std::abs(res[i]));
      if (std::abs(std::abs(x) - 1.0) > 1.5 * h) smooth = std::max(smooth, std::abs(res[i]));
    }
    const double bound = 20.0 * h * h * scale;
    out.push_back({"u1_residual_smooth_nodes", smooth <= bound,
                   "sup residual off the glue stencils " + fmt(smooth) + " <= " + fmt(bound)});
    out.push_back({"u1_residual_all_nodes", full <= bound,
                   "sup residual " + fmt(full) + " vs 20 h^2 |a u^q| = " + fmt(bound) +
                       " (glue nodes carry an O(h) truncation from the u''' jump)"});

    // z = max(u1, u2): residual is strongly negative at the kink x = 0 and
    // the boundary fluxes are nonzero.
    Field z(g);
    for (std::size_t i = 0; i < g->size(); ++i) z[i] = std::max(u1[i], u2[i]);
    kernels::parallel::semilinear_residual(g->laplacian().lower, g->laplacian().diag, g->laplacian().upper,
                                           w.values(), z.values, q, res);
    const std::size_t mid = g->size() / 2;
    const auto flux = boundary_flux(*g, z);
    const bool kink = res[mid] < 0.0;
    out.push_back({"max_u1_u2_subsolution_at_kink", kink, "residual at x=0: " + fmt(res[mid])});
    out.push_back({"max_u1_u2_boundary_flux", std::abs(flux[0]) > 0.0 && std::abs(flux[1]) > 0.0,
                   "fluxes " + fmt(flux[0]) + ", " + fmt(flux[1])});
  }
  return out;
}

}  // namespace sublin::corpus
