// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are fixed here and must not be loosened to make a
// failing criterion pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "betacap/capacity.hpp"
#include "betacap/opmatrix.hpp"
#include "betacap/symbols.hpp"
#include "betacap/weights.hpp"

using namespace betacap;

namespace {

int g_failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
  std::printf("criterion %2d [%s] %s: %s\n", id, pass ? "PASS" : "FAIL", title,
              detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

BetaEstimate beta_of(const std::string& symbol, const std::string& weights,
                     int N) {
  const auto w = coef_weights(WeightSpec::parse(weights), N);
  return estimate_beta(
      approximation_numbers(assemble_matrix(Symbol::parse(symbol), w, N)));
}

void criterion1() {
  double worst_err = 0.0, worst_time = 0.0;
  bool pass = true;
  for (double a : {0.3, 0.5, 0.7}) {
    const Symbol phi = Symbol::parse("dil(" + std::to_string(a) + ")");
    for (const char* ws : {"hardy", "alpha(0)", "alpha(1)", "alpha(2)"}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto w = coef_weights(WeightSpec::parse(ws), 64);
      const auto sp = approximation_numbers(assemble_matrix(phi, w, 64));
      for (int n = 1; n <= 40; ++n)
        worst_err = std::max(worst_err,
                             std::abs(sp.a(n) - std::pow(a, n - 1)));
      const double dt = seconds_since(t0);
      worst_time = std::max(worst_time, dt);
      pass = pass && worst_err <= 1e-12 && dt < 1.0;
    }
  }
  report(1, "dilation spectra exact", pass,
         "max |a_n - a^{n-1}| = " + fmt(worst_err) + " (tol 1e-12), max time " +
             fmt(worst_time) + " s");
}

void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto w = coef_weights(WeightSpec::hardy(), 128);
  const auto sp = approximation_numbers(
      assemble_matrix(Symbol::parse("affine(0.3,0.4)"), w, 128));
  double worst = 0.0;
  int checked = 0;
  for (int n = 1; n <= 128; ++n) {
    const double exact = clifford_dabkowski(0.3, 0.4, n);
    if (exact < 1e-10) break;
    worst = std::max(worst, std::abs(sp.a(n) - exact) / exact);
    ++checked;
  }
  const double dt = seconds_since(t0);
  const bool pass = worst <= 1e-6 && dt < 5.0;
  report(2, "closed-form affine spectra", pass,
         "max rel err " + fmt(worst) + " over " + std::to_string(checked) +
             " values (tol 1e-6), " + fmt(dt) + " s");
}

void criterion3() {
  const BetaEstimate est = beta_of("affine(0.3,0.4)", "hardy", 128);
  const double m = cap_euclid_disk(0.4, 0.3).m_value;
  const double rel = std::abs(est.beta - m) / m;
  report(3, "identity vs closed-form capacity", rel <= 0.01,
         "beta " + fmt(est.beta) + " vs m " + fmt(m) + ", rel " + fmt(rel) +
             " (tol 0.01)");
}

void criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  const double m_ref = cap_euclid_disk(0.4, 0.3).m_value;
  const CompactSetSpec K = CompactSetSpec::euclid(0.4, 0.3);
  const auto eq = cap_equilibrium(K, 512);
  const auto gr = cap_dirichlet_grid(K, 1.0 / 256.0);
  const double rel_eq = std::abs(eq.m_value - m_ref) / m_ref;
  const double rel_gr = std::abs(gr.m_value - m_ref) / m_ref;
  const double dt = seconds_since(t0);
  const bool pass = rel_eq <= 0.03 && rel_gr <= 0.03 &&
                    eq.error_indicator <= 1e-3 && dt < 60.0;
  report(4, "identity vs numerical capacity", pass,
         "equilibrium rel " + fmt(rel_eq) + ", grid rel " + fmt(rel_gr) +
             " (tol 0.03), frostman " + fmt(eq.error_indicator) +
             " (tol 1e-3), " + fmt(dt) + " s");
}

void criterion5() {
  std::vector<double> betas;
  for (const char* ws : {"alpha(0)", "alpha(1)", "alpha(2)", "hardy"})
    betas.push_back(beta_of("affine(0.3,0.4)", ws, 128).beta);
  double worst = 0.0;
  for (size_t i = 0; i < betas.size(); ++i)
    for (size_t j = i + 1; j < betas.size(); ++j)
      worst = std::max(worst, std::abs(betas[i] - betas[j]) /
                                  std::min(betas[i], betas[j]));
  report(5, "weight independence of beta", worst <= 0.01,
         "betas " + fmt(betas[0]) + "/" + fmt(betas[1]) + "/" + fmt(betas[2]) +
             "/" + fmt(betas[3]) + ", worst pairwise rel " + fmt(worst) +
             " (tol 0.01)");
}

void criterion6() {
  double worst_eq = 0.0, worst_gr = 0.0;
  for (double r : {0.3, 0.5, 0.7}) {
    const double exact = 1.0 / std::log(1.0 / r);
    const CompactSetSpec K = CompactSetSpec::euclid(0.0, r);
    worst_eq = std::max(worst_eq,
                        std::abs(cap_equilibrium(K, 512).value - exact) / exact);
    worst_gr = std::max(
        worst_gr,
        std::abs(cap_dirichlet_grid(K, 1.0 / 256.0).value - exact) / exact);
  }
  const bool pass = worst_eq <= 0.01 && worst_gr <= 0.03;
  report(6, "circle capacity closed forms", pass,
         "equilibrium rel " + fmt(worst_eq) + " (tol 0.01), grid rel " +
             fmt(worst_gr) + " (tol 0.03)");
}

void criterion7() {
  const double closed = cap_segment(0.5).value;
  const double eq = cap_equilibrium(CompactSetSpec::seg(0.0, 0.5), 512).value;
  const double rel = std::abs(eq - closed) / closed;
  report(7, "segment capacity cross-check", rel <= 0.02,
         "agm " + fmt(closed) + " vs equilibrium " + fmt(eq) + ", rel " +
             fmt(rel) + " (tol 0.02)");
}

void criterion8() {
  const BetaEstimate est = beta_of("auto(0.5)*dil(0.5)", "hardy", 256);
  const double rel_beta = std::abs(est.beta - 0.5) / 0.5;
  const Disk img = Symbol::parse("auto(0.5)*dil(0.5)").image_disk();
  const auto eq =
      cap_equilibrium(CompactSetSpec::euclid(img.center, img.radius), 512);
  const double rel_m = std::abs(eq.m_value - 0.5) / 0.5;
  const bool pass = rel_beta <= 0.01 && rel_m <= 0.02;
  report(8, "conformal invariance", pass,
         "beta " + fmt(est.beta) + " (rel " + fmt(rel_beta) +
             ", tol 0.01), image m " + fmt(eq.m_value) + " (rel " + fmt(rel_m) +
             ", tol 0.02)");
}

void criterion9() {
  std::string detail;
  bool pass = true;

  // Discriminant product identity over random admissible (a,b).
  {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> U(0.01, 0.98);
    double worst = 0.0;
    for (int it = 0; it < 1000; ++it) {
      const double a = U(rng), b = U(rng) * (0.99 - a);
      if (!(b > 0.0)) continue;
      const double d1 =
          (a * a - b * b - 1.0) * (a * a - b * b - 1.0) - 4.0 * b * b;
      const double d2 = (1.0 + a + b) * (1.0 + a - b) * (1.0 - a + b) *
                        (1.0 - a - b);
      worst = std::max(worst, std::abs(d1 - d2));
    }
    pass = pass && worst <= 1e-12;
    detail += "discriminant " + fmt(worst) + "; ";
  }

  // Power norm bound: ||phi^k|| grows no faster than a fixed multiple of
  // ||phi||_inf^k on each scale.
  {
    const Symbol phi = Symbol::parse("affine(0.3,0.4)");
    const double rho = phi.sup_norm();
    double worst = 0.0;
    for (const char* ws : {"alpha(0)", "alpha(1)", "alpha(2)"}) {
      const auto w = coef_weights(WeightSpec::parse(ws), 400);
      const PowerSeries base = phi.taylor(400);
      PowerSeries pk(400);
      pk.c[0] = 1.0;
      for (int k = 1; k <= 50; ++k) {
        pk = ps_mul(pk, base, 400);
        worst = std::max(worst,
                         series_space_norm(pk, w) / std::pow(rho, k));
      }
    }
    pass = pass && worst < 1e3;
    detail += "power norm ratio " + fmt(worst) + "; ";
  }

  // Pseudo-hyperbolic invariance under automorphisms.
  {
    const Symbol au = Symbol::parse("auto(0.3+0.2i)");
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> U(-0.5, 0.5);
    double worst = 0.0;
    for (int it = 0; it < 500; ++it) {
      const cplx z(U(rng), U(rng)), w(U(rng), U(rng));
      worst = std::max(worst, std::abs(pseudo_hyperbolic(au.eval(z), au.eval(w)) -
                                       pseudo_hyperbolic(z, w)));
    }
    pass = pass && worst <= 1e-12;
    detail += "ph invariance " + fmt(worst) + "; ";
  }

  // Capacity monotonicity under nested sets.
  {
    const bool mono =
        cap_equilibrium(CompactSetSpec::euclid(0.1, 0.2), 256).value <
            cap_equilibrium(CompactSetSpec::euclid(0.1, 0.4), 256).value &&
        cap_segment(0.3).value < cap_segment(0.6).value &&
        cap_ph_disk(0.4).value < cap_ph_disk(0.7).value;
    pass = pass && mono;
    detail += std::string("monotone ") + (mono ? "yes" : "NO") + "; ";
  }

  // Segment capacity grows at least like c log 2^j toward the boundary.
  {
    double prev = 0.0, c_fit = 1e9;
    bool mono = true;
    for (int j = 2; j <= 8; ++j) {
      const double cap = cap_segment(1.0 - std::pow(2.0, -j)).value;
      mono = mono && cap > prev;
      prev = cap;
      c_fit = std::min(c_fit, cap / (j * std::log(2.0)));
    }
    pass = pass && mono && c_fit > 0.0;
    detail += "trend c " + fmt(c_fit);
  }

  report(9, "property suites", pass, detail);
}

void criterion10() {
  // The sup-norm-1 regime (beta = 1) is out of numerical reach; the nearest
  // checkable statement is the monotone approach beta(dil(r)) = r -> 1.
  double prev = 0.0, worst = 0.0;
  bool mono = true;
  for (double r : {0.5, 0.7, 0.8, 0.9}) {
    const int N = r > 0.85 ? 256 : 128;
    const BetaEstimate est =
        beta_of("dil(" + std::to_string(r) + ")", "hardy", N);
    worst = std::max(worst, std::abs(est.beta - r) / r);
    mono = mono && est.beta > prev;
    prev = est.beta;
  }
  report(10, "boundary trend documented", mono && worst <= 1e-6,
         "beta(dil(r)) = r to rel " + fmt(worst) +
             ", monotone toward 1; sup-norm-1 limit handled analytically only");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%d of 10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
