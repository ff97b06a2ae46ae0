#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "betacap/capacity.hpp"
#include "betacap/errors.hpp"
#include "betacap/symbols.hpp"
#include "betacap/weights.hpp"

using namespace betacap;

TEST_CASE("green kernel values and symmetry") {
  CHECK(green_kernel(0.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(green_kernel(0.5, -0.5) ==
        doctest::Approx(std::log(1.25)).epsilon(1e-15));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-0.6, 0.6);
  for (int it = 0; it < 100; ++it) {
    const cplx z(U(rng), U(rng)), w(U(rng), U(rng));
    if (std::abs(z - w) < 1e-3) continue;
    CHECK(green_kernel(z, w) == doctest::Approx(green_kernel(w, z)).epsilon(1e-13));
    CHECK(green_kernel(z, w) > 0.0);
  }
  CHECK_THROWS_AS(green_kernel(cplx(1.2, 0), cplx(0, 0)), InvalidArgument);
  CHECK_THROWS_AS(green_kernel(cplx(0.3, 0), cplx(0.3, 0)), NumericError);
}

TEST_CASE("closed forms") {
  // Centered disks: both routes coincide, m_value = r.
  for (double r : {0.2, 0.5, 0.8}) {
    const auto ph = cap_ph_disk(r);
    const auto eu = cap_euclid_disk(0.0, r);
    CHECK(ph.value == doctest::Approx(1.0 / std::log(1.0 / r)).epsilon(1e-14));
    CHECK(eu.value == doctest::Approx(ph.value).epsilon(1e-13));
    CHECK(ph.m_value == doctest::Approx(r).epsilon(1e-14));
  }
  // D(0.4, 0.4) is the pseudo-hyperbolic disk of radius 0.5 about 0.5.
  CHECK(cap_euclid_disk(0.4, 0.4).m_value == doctest::Approx(0.5).epsilon(1e-13));
  // Reference disk for the affine benchmark symbol.
  CHECK(cap_euclid_disk(0.4, 0.3).m_value ==
        doctest::Approx(0.3657280717672989).epsilon(1e-12));
  CHECK_THROWS_AS(cap_euclid_disk(0.6, 0.5), InvalidArgument);
  CHECK_THROWS_AS(cap_ph_disk(1.0), InvalidArgument);
}

TEST_CASE("elliptic integral against direct quadrature") {
  for (double k : {0.1, 0.3333333333333333, 0.6, 0.9}) {
    const double direct = gauss_legendre_adaptive(
        [k](double t) {
          const double s = std::sin(t);
          return 1.0 / std::sqrt(1.0 - k * k * s * s);
        },
        0.0, M_PI / 2.0, 1e-13);
    CHECK(elliptic_K(k) == doctest::Approx(direct).epsilon(1e-12));
  }
  CHECK(elliptic_K(0.0) == doctest::Approx(M_PI / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(elliptic_K(1.0), InvalidArgument);
}

TEST_CASE("segment capacity closed form") {
  const auto c = cap_segment(0.5);
  CHECK(c.value == doctest::Approx(0.4977).epsilon(2e-4));
  CHECK(cap_segment(0.2).value < cap_segment(0.4).value);
  CHECK(cap_segment(0.4).value < cap_segment(0.8).value);
  CHECK_THROWS_AS(cap_segment(0.0), InvalidArgument);

  // Independent route: cap = I'/(pi I) with both integrals by quadrature.
  const double h = 0.5;
  const double k = (1.0 - h) / (1.0 + h);
  const double kp = std::sqrt(1.0 - k * k);
  auto K = [](double m) {
    return gauss_legendre_adaptive(
        [m](double t) {
          const double s = std::sin(t);
          return 1.0 / std::sqrt(1.0 - m * m * s * s);
        },
        0.0, M_PI / 2.0, 1e-13);
  };
  CHECK(c.value == doctest::Approx(K(kp) / (M_PI * K(k))).epsilon(1e-11));
}

TEST_CASE("set spec parsing and geometry") {
  const auto d = CompactSetSpec::parse("disk(0.4, 0.3)");
  CHECK(d.kind == CompactSetSpec::Kind::euclid_disk);
  CHECK(d.radius == doctest::Approx(0.3));
  CHECK(d.contains(cplx(0.5, 0.1)));
  CHECK(!d.contains(cplx(-0.2, 0.0)));

  const auto ph = CompactSetSpec::parse("phdisk(0.5,0.5)");
  const Disk eu = ph.as_euclid_disk();
  CHECK(eu.center.real() == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(eu.radius == doctest::Approx(0.4).epsilon(1e-14));

  const auto img = CompactSetSpec::parse("image(auto(0.5)*dil(0.5))");
  CHECK(img.kind == CompactSetSpec::Kind::curve);
  CHECK(img.contains(cplx(0.4, 0.0)));
  CHECK(!img.contains(cplx(-0.3, 0.0)));

  CHECK_THROWS_AS(CompactSetSpec::parse("disk(0.4)"), ParseError);
  CHECK_THROWS_AS(CompactSetSpec::parse("ball(0.4,0.2)"), ParseError);
  CHECK_THROWS_AS(CompactSetSpec::parse("segment(0.5,0.2)"), InvalidArgument);
  CHECK_THROWS_AS(CompactSetSpec::parse("disk(0.8,0.4)"), InvalidArgument);
  CHECK_THROWS_AS(
      CompactSetSpec::from_symbol(Symbol::parse("poly(0,0.4,0.3)")),
      InvalidArgument);
}

TEST_CASE("panel discretization") {
  const auto circ = discretize(CompactSetSpec::euclid(0.0, 0.5), 64);
  CHECK(circ.size() == 64);
  for (int j = 0; j < 64; ++j) {
    CHECK(std::abs(circ.nodes[j]) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(circ.lengths[j] == doctest::Approx(M_PI / 64.0).epsilon(1e-14));
  }
  const auto seg = discretize(CompactSetSpec::seg(0.0, 0.5), 64);
  double total = 0.0;
  for (double l : seg.lengths) total += l;
  CHECK(total == doctest::Approx(0.5).epsilon(1e-13));
  // Chebyshev panels shrink toward the endpoints.
  CHECK(seg.lengths.front() < seg.lengths[32] / 10.0);
  CHECK_THROWS_AS(discretize(CompactSetSpec::seg(0.0, 0.5), 8), InvalidArgument);
}

TEST_CASE("equilibrium measure on circles") {
  for (double r : {0.3, 0.5, 0.7}) {
    const auto est = cap_equilibrium(CompactSetSpec::euclid(0.0, r), 512);
    CHECK(est.value ==
          doctest::Approx(1.0 / std::log(1.0 / r)).epsilon(0.01));
    CHECK(est.error_indicator <= 1e-3);  // Frostman residual
  }
  // Rotation invariance puts equal mass on every panel.
  const auto p = discretize(CompactSetSpec::euclid(0.0, 0.5), 128);
  const auto sol = solve_equilibrium(p);
  for (double m : sol.masses)
    CHECK(m == doctest::Approx(1.0 / 128.0).epsilon(1e-8));
  // Mean value at the center: potential equals g(0, r e^{it}) = log(1/r).
  CHECK(green_potential(sol, p, 0.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("equilibrium measure off center and on segments") {
  const auto off = cap_equilibrium(CompactSetSpec::euclid(0.3, 0.2), 512);
  CHECK(off.value ==
        doctest::Approx(cap_euclid_disk(0.3, 0.2).value).epsilon(0.01));

  const auto seg = cap_equilibrium(CompactSetSpec::seg(0.0, 0.5), 512);
  CHECK(seg.value == doctest::Approx(cap_segment(0.5).value).epsilon(0.02));
}

TEST_CASE("capacity is monotone under set inclusion") {
  const auto small = cap_equilibrium(CompactSetSpec::euclid(0.1, 0.2), 256);
  const auto large = cap_equilibrium(CompactSetSpec::euclid(0.1, 0.4), 256);
  CHECK(small.value < large.value);
  CHECK(cap_equilibrium(CompactSetSpec::seg(0.0, 0.3), 256).value <
        cap_equilibrium(CompactSetSpec::seg(0.0, 0.6), 256).value);
}

TEST_CASE("segment capacity trend toward the boundary") {
  // cap([0, 1-2^{-j}]) grows at least like c * j log 2 with some c > 0.
  double prev = 0.0;
  double c_fit = 1e9;
  for (int j = 2; j <= 8; ++j) {
    const double h = 1.0 - std::pow(2.0, -j);
    const double cap = cap_segment(h).value;
    CHECK(cap > prev);
    prev = cap;
    c_fit = std::min(c_fit, cap / (j * std::log(2.0)));
  }
  CHECK(c_fit > 0.0);
}

TEST_CASE("dirichlet grid oracle") {
  const auto est = cap_dirichlet_grid(CompactSetSpec::euclid(0.0, 0.5),
                                      1.0 / 128.0);
  const double exact = 1.0 / std::log(2.0);
  CHECK(est.value == doctest::Approx(exact).epsilon(0.05));
  CHECK(est.error_indicator < 0.1);

  // Refinement moves the estimate toward the closed form.
  const auto fine = solve_dirichlet_grid(CompactSetSpec::euclid(0.0, 0.5),
                                         1.0 / 256.0);
  const auto coarse = solve_dirichlet_grid(CompactSetSpec::euclid(0.0, 0.5),
                                           1.0 / 64.0);
  CHECK(std::abs(fine.capacity - exact) < std::abs(coarse.capacity - exact));

  CHECK_THROWS_AS(cap_dirichlet_grid(CompactSetSpec::euclid(0.0, 0.5), 0.25),
                  InvalidArgument);
}
