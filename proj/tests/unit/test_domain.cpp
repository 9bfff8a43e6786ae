#include <doctest.h>

#include "pbergman/domain.hpp"
#include "pbergman/errors.hpp"
#include "pbergman/quadrature.hpp"
#include "support.hpp"

using namespace pbergman;
using namespace testing;

TEST_CASE("domain construction and parsing") {
  const Domain disc = make_domain(parse_domain_spec("disc"));
  CHECK(disc.is_disc());
  CHECK(disc.dimension == 1);

  const Domain ball = make_domain(parse_domain_spec("ball:2"));
  CHECK(ball.kind == DomainKind::Ball);
  CHECK(ball.dimension == 2);

  const Domain th = make_domain(parse_domain_spec("thullen:3"));
  CHECK(th.kind == DomainKind::Thullen);
  CHECK(th.alpha == 3.0);

  CHECK(make_domain(parse_domain_spec("bidisc")).dimension == 2);
  CHECK(format_domain_spec(th) == "thullen:3");

  CHECK_THROWS_AS(make_thullen(0.0), ParameterError);
  CHECK_THROWS_AS(make_thullen(-1.0), ParameterError);
  CHECK_THROWS_AS(make_ball(0), ParameterError);
  CHECK_THROWS_AS(parse_domain_spec("annulus"), ParameterError);
  CHECK_THROWS_AS(parse_domain_spec("ball:x"), ParameterError);
}

TEST_CASE("membership") {
  const Domain disc = make_disc();
  CHECK(contains(disc, pt({0.0})));
  CHECK_FALSE(contains(disc, pt({1.0})));
  CHECK_FALSE(contains(disc, pt({Complex(0.0, 1.0)})));

  // 0.5 + 0.3^{2/3} = 0.948
  const Domain th = make_thullen(3.0);
  CHECK(contains(th, pt({0.5, 0.3})));
  CHECK_FALSE(contains(th, pt({0.5, 0.4})));  // 0.5 + 0.543 > 1

  CHECK_THROWS_AS(contains(disc, pt({0.1, 0.1})), ParameterError);
}

TEST_CASE("boundary distance") {
  CHECK(boundary_distance(make_disc(), pt({0.3})) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(boundary_distance(make_ball(2), pt({0.6, 0.0})) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(boundary_distance(make_polydisc(2), pt({0.5, 0.9})) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(boundary_distance(make_disc(), pt({1.2})), DomainError);

  // profile R = 1 - r1 is the ball of the l1 norm in moduli: distance from the
  // origin to the segment r1 + r2 = 1 is 1/sqrt 2
  const Domain tri = make_domain(parse_domain_spec("profile:1,0"));
  CHECK(boundary_distance(tri, pt({0.0, 0.0})) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("volume") {
  CHECK(volume(make_disc()) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(volume(make_ball(2)) == doctest::Approx(pi * pi / 2).epsilon(1e-15));
  CHECK(volume(make_polydisc(2)) == doctest::Approx(pi * pi).epsilon(1e-15));
  // (2pi)^2 int int r1 r2 over r1 + r2^{2/alpha} < 1 = 2 pi^2 / ((alpha+1)(alpha+2))
  CHECK(volume(make_thullen(3.0)) == doctest::Approx(pi * pi / 10).epsilon(1e-13));
  CHECK(volume(make_thullen(4.0)) == doctest::Approx(2 * pi * pi / 30).epsilon(1e-13));
}

TEST_CASE("Gauss-Legendre on (0, 1)") {
  const auto [x, w] = gauss_legendre(10);
  CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-15));
  // exact up to degree 19
  double m19 = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) m19 += w[i] * std::pow(x[i], 19);
  CHECK(m19 == doctest::Approx(1.0 / 20).epsilon(1e-14));
  CHECK_THROWS_AS(gauss_legendre(0), ParameterError);
}

TEST_CASE("quadrature moments") {
  const QuadratureRule q = build_quadrature(make_disc(), 8, 16);
  CHECK(integrate(q, [](const Point& z) { return std::norm(z[0]); }) == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(integrate(q, [](const Point& z) { return std::pow(std::norm(z[0]), 2); }) ==
        doctest::Approx(pi / 3).epsilon(1e-12));
  CHECK(q.weight_sum() == doctest::Approx(pi).epsilon(1e-12));

  const QuadratureRule t = build_quadrature(make_thullen(3.0), 24, 24);
  CHECK(t.weight_sum() == doctest::Approx(pi * pi / 10).epsilon(1e-9));

  const QuadratureRule b = build_quadrature(make_ball(2), 12, 12);
  CHECK(b.weight_sum() == doctest::Approx(pi * pi / 2).epsilon(1e-10));
  // int |z1|^2 over the 4-ball = pi^2 / 6
  CHECK(integrate(b, [](const Point& z) { return std::norm(z[0]); }) == doctest::Approx(pi * pi / 6).epsilon(1e-12));

  CHECK_THROWS_AS(build_quadrature(make_disc(), 1, 16), ParameterError);
  CHECK_THROWS_AS(build_quadrature(make_disc(), 8, 2), ParameterError);
}

TEST_CASE("quadrature nodes are interior with positive weights") {
  for (const Domain& d : {make_disc(), make_ball(2), make_polydisc(2), make_thullen(3.0)}) {
    const QuadratureRule q = build_quadrature(d, 6, 8);
    const Eigen::VectorXd w = q.weights();
    CHECK(w.minCoeff() > 0.0);
    bool inside = true;
    for (Eigen::Index i = 0; i < q.size(); ++i) inside = inside && contains(d, q.node(i));
    CHECK(inside);
  }
}
