#include <doctest.h>

#include "pbergman/basis.hpp"
#include "pbergman/errors.hpp"
#include "support.hpp"

using namespace pbergman;
using namespace testing;

TEST_CASE("graded order") {
  const auto idx = graded_indices(2, 2);
  REQUIRE(idx.size() == 6);
  CHECK(idx[0] == MultiIndex{0, 0});
  CHECK(idx[1] == MultiIndex{1, 0});
  CHECK(idx[2] == MultiIndex{0, 1});
  CHECK(idx[3] == MultiIndex{2, 0});
  CHECK(idx[4] == MultiIndex{1, 1});
  CHECK(idx[5] == MultiIndex{0, 2});
  CHECK(precedes({1, 0}, {0, 2}));
  CHECK_FALSE(precedes({0, 2}, {1, 0}));
  CHECK(total_degree({2, 3}) == 5);
}

TEST_CASE("monomial norms") {
  const QuadratureRule q = build_quadrature(make_disc(), 4, 12);
  const BasisPtr b = monomial_basis(q, 2);
  REQUIRE(b->size() == 3);
  CHECK(b->norm2()[0] == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
  CHECK(b->norm2()[1] == doctest::Approx(std::sqrt(pi / 2)).epsilon(1e-13));
  CHECK(b->norm2()[2] == doctest::Approx(std::sqrt(pi / 3)).epsilon(1e-13));

  const BasisPtr ball = monomial_basis(build_quadrature(make_ball(2), 4, 8), 1);
  REQUIRE(ball->size() == 3);
  CHECK(ball->index(1) == MultiIndex{1, 0});
  CHECK(ball->index(2) == MultiIndex{0, 1});

  // ||z1||^2 on Thullen alpha = 3 from the Beta moment 2 pi^2 Gamma(4) Gamma(4) / Gamma(8)
  const BasisPtr th = monomial_basis(build_quadrature(make_thullen(3.0), 24, 8), 1);
  const double oracle = 2 * pi * pi * std::tgamma(4.0) * std::tgamma(4.0) / std::tgamma(8.0);
  CHECK(th->norm2()[th->find({1, 0})] * th->norm2()[th->find({1, 0})] == doctest::Approx(oracle).epsilon(1e-12));

  CHECK_THROWS_AS(monomial_basis(build_quadrature(make_disc(), 4, 8), 2), ParameterError);
}

TEST_CASE("evaluation and derivatives") {
  const BasisPtr d1 = monomial_basis(build_quadrature(make_disc(), 4, 16), 3);
  CHECK(evaluate(PolyFun::monomial(d1, {0}), pt({0.7})) == Complex(1.0));
  CHECK(std::abs(evaluate(PolyFun::monomial(d1, {2}), pt({0.5})) - 0.25) < 1e-15);
  CHECK(std::abs(directional_derivative(PolyFun::monomial(d1, {1}), pt({0.3}), pt({1.0})) - 1.0) < 1e-15);
  CHECK(std::abs(directional_derivative(PolyFun::monomial(d1, {2}), pt({0.5}), pt({1.0})) - 1.0) < 1e-15);

  const BasisPtr d2 = monomial_basis(build_quadrature(make_polydisc(2), 4, 16), 3);
  const Complex i(0.0, 1.0);
  CHECK(std::abs(evaluate(PolyFun::monomial(d2, {1, 1}), pt({0.3, 2.0 * i})) - 0.6 * i) < 1e-15);
  // d1 + d2 of z1^2 z2 at (1, 2) = 4 + 1
  CHECK(std::abs(directional_derivative(PolyFun::monomial(d2, {2, 1}), pt({1.0, 2.0}), pt({1.0, 1.0})) - 5.0) <
        1e-14);
  CHECK(std::abs(partial_derivative(PolyFun::monomial(d2, {2, 1}), pt({1.0, 2.0}), {2, 0}) - 4.0) < 1e-14);

  PolyFun f = PolyFun::monomial(d1, {0}) + Complex(2.0) * PolyFun::monomial(d1, {1});
  f -= PolyFun::monomial(d1, {0});
  CHECK(std::abs(evaluate(f, pt({0.25})) - 0.5) < 1e-15);
}

TEST_CASE("L^p norms") {
  const QuadratureRule q = build_quadrature(make_disc(), 12, 24);
  const BasisPtr b = monomial_basis(q, 4);
  for (double p : {1.0, 1.5, 3.0, 8.0})
    CHECK(lp_norm(PolyFun::monomial(b, {0}), q, p) == doctest::Approx(std::pow(pi, 1 / p)).epsilon(1e-13));
  CHECK(lp_norm(PolyFun::monomial(b, {1}), q, 4.0) == doctest::Approx(std::pow(pi / 3, 0.25)).epsilon(1e-12));
  CHECK(lp_norm(PolyFun::monomial(b, {1}), q, 2.0) == doctest::Approx(std::sqrt(pi / 2)).epsilon(1e-12));
  CHECK_THROWS_AS(lp_norm(PolyFun::monomial(b, {0}), q, 0.5), UnsupportedExponent);
}
