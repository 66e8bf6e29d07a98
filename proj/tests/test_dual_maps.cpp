#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geoflow/maps.hpp"

using namespace geoflow;

TEST_CASE("dual arithmetic propagates first derivatives exactly") {
  const Dual x = Dual::seed(2.0, 2, 0);
  const Dual y = Dual::seed(3.0, 2, 1);
  const Dual f = x * y + sin(x) / y;
  CHECK(f.v == doctest::Approx(6.0 + std::sin(2.0) / 3.0).epsilon(1e-15));
  CHECK(f.partial(0) == doctest::Approx(3.0 + std::cos(2.0) / 3.0).epsilon(1e-15));
  CHECK(f.partial(1) == doctest::Approx(2.0 - std::sin(2.0) / 9.0).epsilon(1e-15));
}

TEST_CASE("dual functions chain") {
  const Dual x = Dual::seed(0.7, 1, 0);
  CHECK(exp(log(x)).partial(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sqrt(x * x).partial(0) == doctest::Approx(1.0).epsilon(1e-14));
  const Dual c(4.2);
  CHECK((c * x).partial(0) == doctest::Approx(4.2));
  CHECK((x / c).partial(0) == doctest::Approx(1.0 / 4.2));
}

TEST_CASE("eigen works over duals") {
  DMat a(2, 2);
  a(0, 0) = Dual::seed(2.0, 1, 0);
  a(0, 1) = Dual(1.0);
  a(1, 0) = Dual(0.0);
  a(1, 1) = Dual(3.0);
  const DMat b = a * a;
  CHECK(b(0, 0).v == doctest::Approx(4.0));
  CHECK(b(0, 0).partial(0) == doctest::Approx(4.0));  // d/dt (t^2) at t=2
  const DMat inv = inverse(a);
  CHECK(inv(0, 0).v == doctest::Approx(0.5));
  CHECK(inv(0, 0).partial(0) == doctest::Approx(-0.25));
}

TEST_CASE("jacobian via duals matches closed form and finite differences") {
  VecMap f([](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    V out(2);
    out[0] = x[0] * x[0] * x[1];
    out[1] = sin(x[0]) + x[1];
    return out;
  });
  Vec x(2);
  x << 1.3, -0.4;
  const Mat j = jacobian(f, x);
  CHECK(j(0, 0) == doctest::Approx(2 * 1.3 * -0.4).epsilon(1e-14));
  CHECK(j(0, 1) == doctest::Approx(1.3 * 1.3).epsilon(1e-14));
  CHECK(j(1, 0) == doctest::Approx(std::cos(1.3)).epsilon(1e-14));
  CHECK(j(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
  const Mat jfd = jacobian_fd(f, x);
  CHECK((j - jfd).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("jet computes polynomial derivatives") {
  ScalarMap f([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    return T(x[0] * x[0]);
  });
  Vec x(2);
  x << 3.0, 1.0;
  const JetResult r1 = jet(f, x, 1);
  CHECK(r1.first[0] == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(r1.first[1] == doctest::Approx(0.0));

  const JetResult r2 = jet(f, x, 2);
  REQUIRE(r2.second.has_value());
  CHECK((*r2.second)(0, 0) == doctest::Approx(2.0).epsilon(1e-7));
  CHECK((*r2.second)(0, 1) == doctest::Approx(0.0));
  CHECK(r2.symmetry_defect < 1e-8);
}

TEST_CASE("jet of constant field vanishes at any order") {
  ScalarMap f([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    (void)x;
    return T(2.5);
  });
  Vec x(3);
  x << 0.1, 0.2, 0.3;
  const JetResult r = jet(f, x, 2);
  CHECK(r.first.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(r.second->cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("jet guard rejects stencils leaving the safe region") {
  ScalarMap f([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    return T(x[0]);
  });
  Vec x(1);
  x << 1.0;
  auto guard = [](const Vec& v) { return v[0] <= 1.0; };
  CHECK_THROWS_AS(jet(f, x, 2, guard), OutOfChart);
}

TEST_CASE("value-only fields fall back to central differences") {
  ScalarMap f = ScalarMap::value_only([](const Vec& x) { return x[0] * x[0] * x[0]; });
  Vec x(1);
  x << 2.0;
  const Vec g = gradient(f, x);
  CHECK(g[0] == doctest::Approx(12.0).epsilon(1e-9));
}

TEST_CASE("dual-mode first partials agree with central differences") {
  ScalarMap f([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    return T(exp(x[0]) * sin(x[1]));
  });
  Vec x(2);
  x << 0.3, 1.1;
  CHECK((gradient(f, x) - gradient_fd(f, x)).cwiseAbs().maxCoeff() < 1e-9);
}
