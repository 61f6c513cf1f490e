#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sublin/error.hpp"
#include "sublin/grid.hpp"
#include "support.hpp"

using namespace sublin;
using std::numbers::pi;

TEST_CASE("interval layout") {
  auto g = Grid::interval(0.0, 1.0, 9);
  CHECK(g->size() == 9);
  CHECK(g->h() == doctest::Approx(0.1));
  CHECK(g->node(0) == doctest::Approx(0.1));
  CHECK(g->node(8) == doctest::Approx(0.9));
  CHECK(g->boundary_count() == 2);

  auto s = Grid::interval(-2.0, 2.0, 799);
  for (std::size_t i = 0; i < s->size(); ++i) CHECK(s->node(i) == -s->node(s->size() - 1 - i));
  CHECK(s->node(399) == 0.0);
}

TEST_CASE("radial layout") {
  auto g = Grid::radial(1.0, 3, 10);
  CHECK(g->h() == doctest::Approx(1.0 / 10.5));
  CHECK(g->node(0) == doctest::Approx(0.5 * g->h()));
  CHECK(1.0 - g->node(9) == doctest::Approx(g->h()));
  CHECK(g->boundary_count() == 1);
  CHECK_THROWS_AS(Grid::radial(1.0, 4, 10), Error);
  CHECK_THROWS_AS(Grid::interval(1.0, 0.0, 10), Error);
}

TEST_CASE("laplacian of a quadratic is exact") {
  auto g = Grid::interval(0.0, 1.0, 50);
  Field u = Field::from_function(g, [](double x) { return x * (1.0 - x); });
  Field lu = laplacian_apply(*g, u);
  for (double v : lu.values) CHECK(v == doctest::Approx(2.0).epsilon(1e-9));

  auto r = Grid::radial(1.0, 3, 40);
  Field w = Field::from_function(r, [](double x) { return 1.0 - x * x; });
  Field lw = laplacian_apply(*r, w);
  for (double v : lw.values) CHECK(v == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("laplacian of sin x converges at second order") {
  auto err = [](std::size_t n) {
    auto g = Grid::interval(0.0, pi, n);
    Field u = Field::from_function(g, [](double x) { return std::sin(x); });
    return test::max_error(laplacian_apply(*g, u), [](double x) { return std::sin(x); });
  };
  const double ratio = err(200) / err(401);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("solve_linear examples") {
  auto g = Grid::interval(0.0, 1.0, 99);
  Field f = Field::from_function(g, [](double) { return 2.0; });
  CHECK(test::max_error(solve_linear(*g, f), [](double x) { return x * (1.0 - x); }) < 1e-13);

  auto r = Grid::radial(1.0, 3, 99);
  Field f6 = Field::from_function(r, [](double) { return 6.0; });
  CHECK(test::max_error(solve_linear(*r, f6), [](double x) { return 1.0 - x * x; }) < 1e-12);

  auto s = Grid::interval(0.0, pi, 500);
  Field fs = Field::from_function(s, [](double x) { return std::sin(x); });
  const double h = s->h();
  CHECK(test::max_error(solve_linear(*s, fs), [](double x) { return std::sin(x); }) < h * h);
}

TEST_CASE("solve_linear inverts laplacian_apply") {
  for (auto g : {Grid::interval(-1.0, 3.0, 301), Grid::radial(2.0, 2, 301)}) {
    Field u = Field::from_function(g, [](double x) { return std::cos(x) + x * x * x; });
    Field back = solve_linear(*g, laplacian_apply(*g, u));
    CHECK(sup_distance(back, u) <= 1e-10 * u.sup_norm());
  }
}

TEST_CASE("discrete maximum principle") {
  auto g = Grid::radial(1.0, 2, 200);
  Field f = Field::from_function(g, [](double r) { return r < 0.3 ? 1.0 : 0.0; });
  for (double v : solve_linear(*g, f).values) CHECK(v >= 0.0);
}

TEST_CASE("integrate") {
  auto g = Grid::interval(0.0, 1.0, 100);
  CHECK(integrate(*g, Field::from_function(g, [](double) { return 1.0; })) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate(*g, Field::from_function(g, [](double x) { return 3.0 * x - 1.0; })) ==
        doctest::Approx(0.5).epsilon(1e-3));

  auto s = Grid::interval(0.0, pi, 1000);
  CHECK(integrate(*s, Field::from_function(s, [](double x) { return std::sin(x); })) ==
        doctest::Approx(2.0).epsilon(1e-5));

  auto b = Grid::radial(1.0, 3, 1000);
  CHECK(integrate(*b, Field::from_function(b, [](double) { return 1.0; })) ==
        doctest::Approx(4.0 * pi / 3.0).epsilon(1e-5));
}

TEST_CASE("boundary_flux") {
  auto g = Grid::interval(0.0, 1.0, 200);
  auto f1 = boundary_flux(*g, Field::from_function(g, [](double x) { return x * (1.0 - x); }));
  REQUIRE(f1.size() == 2);
  CHECK(f1[0] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(f1[1] == doctest::Approx(-1.0).epsilon(1e-10));

  auto s = Grid::interval(0.0, pi, 200);
  auto f2 = boundary_flux(*s, Field::from_function(s, [](double x) { return std::sin(x); }));
  CHECK(f2[0] == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(f2[1] == doctest::Approx(-1.0).epsilon(1e-3));

  auto f3 = boundary_flux(*g, Field::from_function(g, [](double x) { return x * (1.0 - x) * (1.0 - x); }));
  CHECK(f3[0] == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(std::abs(f3[1]) < 1e-3);

  auto b = Grid::radial(1.0, 3, 200);
  auto f4 = boundary_flux(*b, Field::from_function(b, [](double r) { return 1.0 - r * r; }));
  REQUIRE(f4.size() == 1);
  CHECK(f4[0] == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("dirichlet integral") {
  auto g = Grid::interval(0.0, pi, 2000);
  Field u = Field::from_function(g, [](double x) { return std::sin(x); });
  CHECK(dirichlet_integral(*g, u) == doctest::Approx(pi / 2.0).epsilon(1e-5));
  CHECK(dirichlet_integral(*g, Field(g)) == 0.0);
}

TEST_CASE("grid mismatch") {
  auto a = Grid::interval(0.0, 1.0, 10);
  auto b = Grid::interval(0.0, 1.0, 11);
  CHECK_THROWS_AS(laplacian_apply(*a, Field(b)), Error);
  try {
    laplacian_apply(*a, Field(b));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::grid_mismatch);
  }
}

TEST_CASE("refined grid halves the spacing") {
  auto g = Grid::interval(0.0, 1.0, 99);
  CHECK(g->refined()->h() == doctest::Approx(g->h() / 2.0));
}
