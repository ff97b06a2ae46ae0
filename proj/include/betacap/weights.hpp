#pragma once

#include <functional>
#include <string>
#include <vector>

namespace betacap {

// Specification of the radial weight defining the coefficient norm
// ||f||^2 = sum |b_n|^2 w_n.
struct WeightSpec {
  enum class Kind { alpha, hardy, bergman, dirichlet, custom_radial };

  Kind kind = Kind::hardy;
  double alpha = 0.0;                     // for Kind::alpha, alpha > -1
  std::function<double(double)> omega;    // for Kind::custom_radial, on [0,1)

  static WeightSpec make_alpha(double alpha);
  static WeightSpec hardy() { return {Kind::hardy, 0.0, nullptr}; }
  static WeightSpec bergman() { return {Kind::bergman, 0.0, nullptr}; }
  static WeightSpec dirichlet() { return {Kind::dirichlet, 0.0, nullptr}; }
  static WeightSpec make_custom(std::function<double(double)> omega);

  // Text forms: "hardy", "bergman", "dirichlet", "alpha(1.5)".
  static WeightSpec parse(const std::string& text);
  std::string text() const;
};

// The coefficient weights w_0..w_{n_max} of one weighted space.
struct CoefWeights {
  WeightSpec spec;
  std::vector<double> values;  // values[n] = w_n, n = 0..n_max

  int n_max() const { return static_cast<int>(values.size()) - 1; }
  double operator[](int n) const { return values[static_cast<size_t>(n)]; }
};

// Build w_0..w_{n_max}. For alpha specs the closed Beta-function form is
// used; custom radial weights go through adaptive Gauss-Legendre quadrature
// of 2 n^2 int_0^1 r^{2n-1} omega(r) dr at relative tolerance 1e-12.
CoefWeights coef_weights(const WeightSpec& spec, int n_max);

// Empirical constants in delta_eps e^{-eps n} <= w_n <= C n^2 over the
// computed range.
struct SizBounds {
  double delta_eps = 0.0;
  double C = 0.0;
  bool ok = false;
};
SizBounds check_siz_bounds(const CoefWeights& weights, double eps);

// Adaptive Gauss-Legendre on [a,b] to relative tolerance rel_tol.
double gauss_legendre_adaptive(const std::function<double(double)>& f,
                               double a, double b, double rel_tol);

}  // namespace betacap
