#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "betacap/errors.hpp"
#include "betacap/weights.hpp"

using namespace betacap;

TEST_CASE("classical sequences") {
  const auto hardy = coef_weights(WeightSpec::hardy(), 50);
  const auto bergman = coef_weights(WeightSpec::bergman(), 50);
  const auto dirichlet = coef_weights(WeightSpec::dirichlet(), 50);
  CHECK(hardy[0] == 1.0);
  CHECK(bergman[0] == 1.0);
  CHECK(dirichlet[0] == 1.0);
  for (int n = 1; n <= 50; ++n) {
    CHECK(hardy[n] == 1.0);
    CHECK(bergman[n] == doctest::Approx(1.0 / (n + 1.0)).epsilon(1e-15));
    CHECK(dirichlet[n] == doctest::Approx(static_cast<double>(n)).epsilon(1e-15));
  }
}

TEST_CASE("alpha closed form spot values") {
  // w_n = n^2 B(n, alpha+1); hand-checked small cases.
  const auto a1 = coef_weights(WeightSpec::make_alpha(1.0), 10);
  CHECK(a1[1] == doctest::Approx(0.5).epsilon(1e-14));          // 1*B(1,2)
  CHECK(a1[2] == doctest::Approx(4.0 / 6.0).epsilon(1e-14));    // 4*B(2,2)=4/6
  const auto a0 = coef_weights(WeightSpec::make_alpha(0.0), 10);
  for (int n = 1; n <= 10; ++n)
    CHECK(a0[n] == doctest::Approx(static_cast<double>(n)).epsilon(1e-13));
}

TEST_CASE("alpha weights agree with direct quadrature") {
  // Independent route: w_n = 2 n^2 int_0^1 r^{2n-1} (1-r^2)^alpha dr.
  for (double alpha : {0.5, 1.0, 2.0, 3.5}) {
    const auto closed = coef_weights(WeightSpec::make_alpha(alpha), 200);
    const auto quad = coef_weights(
        WeightSpec::make_custom(
            [alpha](double r) { return std::pow(1.0 - r * r, alpha); }),
        200);
    for (int n = 1; n <= 200; ++n)
      CHECK(quad[n] == doctest::Approx(closed[n]).epsilon(1e-10));
  }
}

TEST_CASE("alpha growth matches n^{1-alpha}") {
  // w_n ~ Gamma(alpha+1) n^{1-alpha} as n grows.
  for (double alpha : {0.25, 1.0, 2.0}) {
    const auto w = coef_weights(WeightSpec::make_alpha(alpha), 4000);
    const double target = std::tgamma(alpha + 1.0);
    const double ratio = w[4000] / std::pow(4000.0, 1.0 - alpha);
    CHECK(ratio == doctest::Approx(target).epsilon(2e-3));
  }
}

TEST_CASE("two-sided growth bounds hold for classical weights") {
  for (const char* name : {"hardy", "bergman", "dirichlet", "alpha(2)"}) {
    const auto w = coef_weights(WeightSpec::parse(name), 300);
    const auto b = check_siz_bounds(w, 0.05);
    CHECK(b.ok);
    for (int n = 1; n <= 300; ++n) {
      CHECK(w[n] >= b.delta_eps * std::exp(-0.05 * n) * (1.0 - 1e-12));
      CHECK(w[n] <= b.C * n * n * (1.0 + 1e-12));
    }
  }
  const auto hardy = coef_weights(WeightSpec::hardy(), 100);
  const auto b = check_siz_bounds(hardy, 0.1);
  CHECK(b.C == doctest::Approx(1.0));
  CHECK(b.delta_eps == doctest::Approx(std::exp(0.1)));  // attained at n=1
}

TEST_CASE("quadrature core") {
  const double v = gauss_legendre_adaptive(
      [](double x) { return std::sin(x); }, 0.0, 1.0, 1e-13);
  CHECK(v == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-12));
  const double sharp = gauss_legendre_adaptive(
      [](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0, 1e-10);
  CHECK(sharp == doctest::Approx(2.0 * (1.0 - 1e-6)).epsilon(1e-8));
}

TEST_CASE("spec parsing") {
  CHECK(WeightSpec::parse("hardy").kind == WeightSpec::Kind::hardy);
  CHECK(WeightSpec::parse(" alpha( 1.5 ) ").alpha == doctest::Approx(1.5));
  CHECK(WeightSpec::parse("alpha(2)").text() == "alpha(2)");
  CHECK_THROWS_AS(WeightSpec::parse("alpha(-2)"), ParseError);
  CHECK_THROWS_AS(WeightSpec::parse("alpha(x)"), ParseError);
  CHECK_THROWS_AS(WeightSpec::parse("fock"), ParseError);
  CHECK_THROWS_AS(WeightSpec::make_alpha(-1.0), InvalidArgument);
  CHECK_THROWS_AS(coef_weights(WeightSpec::hardy(), 0), InvalidArgument);
}

TEST_CASE("custom weight validation") {
  CHECK_THROWS_AS(
      WeightSpec::make_custom([](double r) { return r - 0.5; }),
      InvalidArgument);
  const auto w = coef_weights(
      WeightSpec::make_custom([](double) { return 1.0; }), 20);
  // omega == 1 gives w_n = 2 n^2 / (2n) = n.
  for (int n = 1; n <= 20; ++n)
    CHECK(w[n] == doctest::Approx(static_cast<double>(n)).epsilon(1e-11));
}
