#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sublin/corpus.hpp"
#include "sublin/ground_state.hpp"
#include "sublin/spectrum.hpp"
#include "support.hpp"

using namespace sublin;
using std::numbers::pi;

namespace {

void require_ground_state(const GroundState& gs, const Weight& w) {
  test::require_bounds(gs.polish);
  for (const Component& c : w.components())
    for (std::size_t i = c.begin; i < c.end; ++i) CHECK(gs.u[i] > 1e-8 * gs.u.sup_norm());
  for (const Field& v : verification_basket(w, gs.q)) CHECK(gs.energy <= energy(w, gs.q, v));
  for (const StartRecord& s : gs.starts) {
    if (s.status != SolveStatus::converged) continue;
    const bool agree = sup_distance(s.u, gs.u) <= 1e-6 * gs.u.sup_norm();
    const bool undercut = s.energy - gs.energy > 1e-10;
    CHECK((agree || undercut));
  }
}

}  // namespace

TEST_CASE("energy examples") {
  auto g = Grid::interval(0.0, pi, 1000);
  Weight one = sample_weight(WeightSpec::constant(1.0, Domain{0.0, pi}), g);
  CHECK(energy(one, 0.5, Field(g)) == 0.0);

  EigenPair ep = principal_eigenpair(one);
  CHECK(std::abs(energy(one, 1.0, ep.phi1)) < 1e-4);

  auto u = Grid::interval(0.0, 1.0, 2000);
  Weight two = sample_weight(WeightSpec::constant(2.0, Domain{0.0, 1.0}), u);
  Field p = Field::from_function(u, [](double x) { return x * (1.0 - x); });
  for (double q : {0.2, 0.5, 0.8}) {
    const double exact = 0.5 / 3.0 - 2.0 / (q + 1.0) * std::beta(q + 2.0, q + 2.0);
    CHECK(energy(two, q, p) == doctest::Approx(exact).epsilon(1e-5));
  }
}

TEST_CASE("ray optimal scaling minimizes along the ray") {
  auto g = Grid::interval(0.0, pi, 400);
  Weight w = sample_weight(corpus::builtin("two_mode"), g);
  const double q = 0.5;
  Field v = Field::from_function(g, [](double x) { return std::sin(x); });
  Field best = ray_optimal(w, q, v);
  const double e = energy(w, q, best);
  for (double t : {0.9, 1.1}) {
    Field other = best;
    for (double& x : other.values) x *= t;
    CHECK(energy(w, q, other) > e);
  }
  Field neg = Field::from_function(g, [](double x) { return x < 0.4 ? std::sin(x / 0.4 * pi) : 0.0; });
  CHECK(ray_optimal(w, q, neg).sup_norm() == 0.0);
}

TEST_CASE("manufactured ground state is sin x") {
  Weight w = sample_weight(corpus::builtin("manufactured", {{"q", 0.5}}), Grid::interval(0.0, pi, 500));
  GroundState gs = minimize_energy(w, 0.5, {}, 5, 3);
  require_ground_state(gs, w);
  const double h = w.grid()->h();
  CHECK(test::max_error(gs.u, [](double x) { return std::sin(x); }) <= h * h);
  CHECK(gs.starts.size() == 6);
  CHECK(gs.starts[0].kind == "phi1");
  CHECK(gs.multiplier_scale > 0.0);
}

TEST_CASE("modified prop51 weight: the ground state is the dead-core solution") {
  const double q = 1.0 / 3.0;
  const corpus::Prop51Data d = corpus::prop51_build(q);
  auto g = corpus::prop51_grid(799);
  Weight w = sample_weight(d.modified_weight, g);
  GroundState gs = minimize_energy(w, q, {}, 5, 1);
  require_ground_state(gs, w);
  CHECK(sup_distance(gs.u, d.u1_field(g)) <= 50.0 * g->h() * g->h());
  CHECK(gs.polish.classification.kind == Positivity::dead_core);
}

TEST_CASE("prop51 weight: the ground state is maximal") {
  const double q = 1.0 / 3.0;
  const corpus::Prop51Data d = corpus::prop51_build(q);
  auto g = corpus::prop51_grid(799);
  Weight w = sample_weight(d.weight, g);
  GroundState gs = minimize_energy(w, q, {}, 5, 1);
  require_ground_state(gs, w);
  CHECK(gs.polish.classification.kind == Positivity::interior);

  std::vector<Field> others;
  for (const Field& u : {d.u1_field(g), d.u2_field(g)}) {
    SolveReport r = newton_solve(w, q, u);
    test::require_bounds(r);
    others.push_back(r.solution);
    CHECK(gs.energy < energy(w, q, r.solution));
  }
  CHECK(maximality_check(gs, others));
  CHECK(maximality_check(gs, {gs.u}));
  Field twice = gs.u;
  for (double& v : twice.values) v *= 2.0;
  CHECK_FALSE(maximality_check(gs, {twice}));
}

TEST_CASE("ground state is deterministic and continuous in q") {
  auto g = Grid::interval(0.0, pi, 300);
  Weight w = sample_weight(corpus::builtin("two_mode", {{"kappa", -2.0}}), g);
  GroundState a = minimize_energy(w, 0.5, {}, 5, 9);
  GroundState b = minimize_energy(w, 0.5, {}, 5, 9);
  require_ground_state(a, w);
  CHECK(a.u.values == b.u.values);
  CHECK(a.best_start == b.best_start);

  GroundState half = minimize_energy(w, 0.505, {}, 5, 9);
  GroundState full = minimize_energy(w, 0.51, {}, 5, 9);
  require_ground_state(half, w);
  require_ground_state(full, w);
  const double gap_full = sup_distance(full.u, a.u), gap_half = sup_distance(half.u, a.u);
  CHECK(gap_half <= 0.55 * gap_full);
}

TEST_CASE("ground state as q approaches 1 in the three eigenvalue regimes") {
  auto g = Grid::interval(0.0, pi, 300);
  Weight base = sample_weight(corpus::builtin("two_mode"), g);
  const double l0 = principal_eigenpair(base).lambda1;

  SUBCASE("lambda1 = 2 vanishes on the predicted scale") {
    Weight w = scaled(base, l0 / 2.0);
    EigenPair ep = principal_eigenpair(w);
    const double profile = t_star(w, ep) * ep.phi1.sup_norm();
    double prev = INFINITY;
    for (double q : {0.9, 0.95, 0.99}) {
      GroundState gs = minimize_energy(w, q, {}, 5, 2);
      require_ground_state(gs, w);
      const double sup = gs.u.sup_norm();
      CHECK(sup < prev);
      prev = sup;
      const double predicted = profile * std::pow(ep.lambda1, -1.0 / (1.0 - q));
      CHECK(sup <= 2.0 * predicted);
      CHECK(sup >= 0.5 * predicted);
    }
  }
  SUBCASE("lambda1 = 0.5 blows up") {
    Weight w = scaled(base, l0 / 0.5);
    double prev = 0.0;
    for (double q : {0.9, 0.95, 0.99}) {
      GroundState gs = minimize_energy(w, q, {}, 5, 2);
      require_ground_state(gs, w);
      CHECK(gs.u.sup_norm() > prev);
      prev = gs.u.sup_norm();
    }
    CHECK(prev >= 10.0);
  }
}

TEST_CASE("ground state approaches S(a) as q goes to 0") {
  auto g = Grid::interval(0.0, pi, 300);
  Weight w = sample_weight(corpus::builtin("two_mode"), g);
  const Field s = solution_operator(w).value;
  double prev = INFINITY;
  for (double q : {0.2, 0.1, 0.05, 0.01}) {
    GroundState gs = minimize_energy(w, q, {}, 5, 4);
    require_ground_state(gs, w);
    const double gap = sup_distance(gs.u, s);
    CHECK(gap < prev);
    prev = gap;
  }
}
