#include <doctest.h>

#include <cmath>
#include <sstream>

#include "speck/errors.hpp"
#include "speck/schwartz.hpp"

using namespace speck;
using namespace speck::schwartz;

TEST_CASE("generators carry the right parity") {
  CHECK(parity_defect(SFunction::u()) == 0.0);
  CHECK(parity_defect(SFunction::v()) == 0.0);
  CHECK((SFunction::u() * SFunction::v()).parity() == Parity::odd);
  CHECK((SFunction::v() * SFunction::v()).parity() == Parity::even);
  CHECK((SFunction::u() + SFunction::v()).parity() == Parity::mixed);
}

TEST_CASE("closed forms of the comultiplication") {
  const auto du = comultiply(SFunction::u());
  const auto dv = comultiply(SFunction::v());
  for (double x : {-1.5, 0.0, 0.3, 2.0})
    for (double y : {-0.7, 0.0, 1.1}) {
      CHECK(std::abs(du(x, y) - std::exp(-x * x - y * y)) < 1e-15);
      CHECK(std::abs(dv(x, y) - (x + y) * std::exp(-x * x - y * y)) < 1e-15);
    }
  CHECK(dv.components().size() == 2);
  CHECK(bidegree_defect(dv) < 1e-15);
}

TEST_CASE("xi is 1/sqrt(2) at the origin") {
  CHECK(xi_x(0, 0) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(xi_y(0, 0) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(xi_x(3, 4) == doctest::Approx(0.6));
}

TEST_CASE("twisted product carries the Koszul sign") {
  const BiFunction f([](double, double) { return Complex(1.0); }, {0, 1});
  const BiFunction g([](double, double) { return Complex(1.0); }, {1, 0});
  // f has j = 1, g has k = 1.
  CHECK(twisted_product(f, g)(0.2, 0.3) == Complex(-1.0));
  CHECK(twisted_product(g, f)(0.2, 0.3) == Complex(1.0));
  CHECK(twisted_product(f, g).bidegree() == Bidegree{1, 1});
}

TEST_CASE("multiplicativity, counit and coassociativity on a small grid") {
  const Grid g{-3, 3, 31};
  const auto u = SFunction::u(), v = SFunction::v();
  for (const auto& f : {u, v}) {
    CHECK(counit_residual(f, g) < 1e-14);
    CHECK(coassociativity_residual(f, Grid{-2, 2, 11}) < 1e-14);
    for (const auto& h : {u, v}) CHECK(check_multiplicativity(f, h, g) < 1e-14);
  }
  CHECK(counit(u) == Complex(1.0));
  CHECK(counit(v) == Complex(0.0));
}

TEST_CASE("tensor form agrees with the evaluated comultiplication") {
  for (const auto& f : {SFunction::u(), SFunction::v()})
    CHECK(grid_distance(comultiply(f), evaluate_tensor(comultiply_tensor(f))) < 1e-15);
  CHECK(comultiply_tensor(SFunction::zero()).empty());
  CHECK_THROWS_AS(comultiply_tensor(SFunction::u() * SFunction::u()), UnsupportedError);
}

TEST_CASE("mixed functions must be decomposed first") {
  const auto w = SFunction::u() + SFunction::v();
  CHECK_THROWS_AS(comultiply(w), DecomposeFirstError);
  CHECK(parity_defect(w.even_part()) < 1e-15);
  CHECK(parity_defect(w.odd_part()) < 1e-15);
}

TEST_CASE("grid csv") {
  std::ostringstream out;
  write_grid_csv(out, comultiply(SFunction::u()), Grid{-1, 1, 3});
  std::string header;
  std::istringstream in(out.str());
  std::getline(in, header);
  CHECK(header == "x,y,re,im");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 9);
}
