#include "betacap/weights.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "betacap/errors.hpp"

namespace betacap {

namespace {

// 7- and 15-point Gauss-Legendre nodes/weights on [-1,1].
constexpr double kGL7x[] = {0.0,
                            0.4058451513773971669066064,
                            0.7415311855993944398638648,
                            0.9491079123427585245261897};
constexpr double kGL7w[] = {0.4179591836734693877551020,
                            0.3818300505051189449503698,
                            0.2797053914892766679014678,
                            0.1294849661688696932706114};
constexpr double kGL15x[] = {0.0,
                             0.2011940939974345223006283,
                             0.3941513470775633698972074,
                             0.5709721726085388475372267,
                             0.7244177313601700474161861,
                             0.8482065834104272162006483,
                             0.9372733924007059043077589,
                             0.9879925180204854284895657};
constexpr double kGL15w[] = {0.2025782419255612728806202,
                             0.1984314853271115764561183,
                             0.1861610000155622110268006,
                             0.1662692058169939335532009,
                             0.1395706779261543144478048,
                             0.1071592204671719350118695,
                             0.0703660474881081247092674,
                             0.0307532419961172683546284};

double gl_fixed(const std::function<double(double)>& f, double a, double b,
                const double* x, const double* w, int half) {
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  double s = w[0] * f(c);
  for (int i = 1; i < half; ++i)
    s += w[i] * (f(c - hw * x[i]) + f(c + hw * x[i]));
  return s * hw;
}

double gl_adaptive(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, int depth) {
  const double coarse = gl_fixed(f, a, b, kGL7x, kGL7w, 4);
  const double fine = gl_fixed(f, a, b, kGL15x, kGL15w, 8);
  if (std::abs(fine - coarse) <= abs_tol || depth > 48) {
    if (depth > 48)
      throw NumericError("quadrature did not converge (ill-posed weight?)");
    return fine;
  }
  const double m = 0.5 * (a + b);
  return gl_adaptive(f, a, m, 0.5 * abs_tol, depth + 1) +
         gl_adaptive(f, m, b, 0.5 * abs_tol, depth + 1);
}

}  // namespace

double gauss_legendre_adaptive(const std::function<double(double)>& f,
                               double a, double b, double rel_tol) {
  // First pass with a crude absolute scale, second pass against the result.
  double scale = std::abs(gl_fixed(f, a, b, kGL15x, kGL15w, 8));
  if (scale == 0.0) scale = 1.0;
  return gl_adaptive(f, a, b, rel_tol * scale, 0);
}

WeightSpec WeightSpec::make_alpha(double alpha) {
  if (!(alpha > -1.0))
    throw InvalidArgument("alpha weight requires alpha > -1");
  return {Kind::alpha, alpha, nullptr};
}

WeightSpec WeightSpec::make_custom(std::function<double(double)> omega) {
  if (!omega) throw InvalidArgument("custom weight requires a function");
  WeightSpec s{Kind::custom_radial, 0.0, std::move(omega)};
  // Positivity spot check and integrability via quadrature.
  for (double r : {0.0, 0.25, 0.5, 0.75, 0.9, 0.99}) {
    if (!(s.omega(r) > 0.0))
      throw InvalidArgument("custom weight must be strictly positive on [0,1)");
  }
  const double mass = gauss_legendre_adaptive(s.omega, 0.0, 1.0, 1e-10);
  if (!std::isfinite(mass) || mass <= 0.0)
    throw InvalidArgument("custom weight is not integrable on [0,1)");
  return s;
}

WeightSpec WeightSpec::parse(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t == "hardy") return hardy();
  if (t == "bergman") return bergman();
  if (t == "dirichlet") return dirichlet();
  if (t.rfind("alpha(", 0) == 0 && t.back() == ')') {
    const std::string arg = t.substr(6, t.size() - 7);
    size_t pos = 0;
    double a;
    try {
      a = std::stod(arg, &pos);
    } catch (const std::exception&) {
      throw ParseError("bad alpha weight argument: " + arg);
    }
    if (pos != arg.size()) throw ParseError("bad alpha weight argument: " + arg);
    if (!(a > -1.0)) throw ParseError("alpha weight requires alpha > -1");
    return make_alpha(a);
  }
  throw ParseError("unknown weight spec: " + text);
}

std::string WeightSpec::text() const {
  switch (kind) {
    case Kind::hardy: return "hardy";
    case Kind::bergman: return "bergman";
    case Kind::dirichlet: return "dirichlet";
    case Kind::custom_radial: return "custom";
    case Kind::alpha: {
      std::ostringstream os;
      os << "alpha(" << alpha << ")";
      return os.str();
    }
  }
  return "?";
}

namespace {

// w_n = 2 n^2 int_0^1 r^{2n-1} (1-r^2)^alpha dr = n^2 B(n, alpha+1).
double alpha_weight(double alpha, int n) {
  if (n == 0) return 1.0;
  const double logw = 2.0 * std::log(static_cast<double>(n)) +
                      std::lgamma(static_cast<double>(n)) +
                      std::lgamma(alpha + 1.0) -
                      std::lgamma(static_cast<double>(n) + alpha + 1.0);
  return std::exp(logw);
}

double custom_weight(const std::function<double(double)>& omega, int n) {
  if (n == 0) return 1.0;
  // The integrand concentrates at r -> 1 for large n; split the range there
  // so the adaptive pass starts from a sensible partition.
  auto f = [&](double r) { return std::pow(r, 2.0 * n - 1.0) * omega(r); };
  double total = 0.0;
  double lo = 0.0;
  for (double hi : {0.5, 0.9, 0.99, 1.0}) {
    total += gauss_legendre_adaptive(f, lo, hi, 1e-12);
    lo = hi;
  }
  return 2.0 * n * n * total;
}

}  // namespace

CoefWeights coef_weights(const WeightSpec& spec, int n_max) {
  if (n_max < 1) throw InvalidArgument("coef_weights: n_max must be >= 1");
  CoefWeights w;
  w.spec = spec;
  w.values.resize(static_cast<size_t>(n_max) + 1);
  w.values[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    double v = 0.0;
    switch (spec.kind) {
      case WeightSpec::Kind::hardy: v = 1.0; break;
      case WeightSpec::Kind::bergman: v = 1.0 / (n + 1.0); break;
      case WeightSpec::Kind::dirichlet: v = static_cast<double>(n); break;
      case WeightSpec::Kind::alpha: v = alpha_weight(spec.alpha, n); break;
      case WeightSpec::Kind::custom_radial: v = custom_weight(spec.omega, n); break;
    }
    if (!(v > 0.0) || !std::isfinite(v))
      throw NumericError("non-positive or non-finite weight at n=" +
                         std::to_string(n));
    w.values[static_cast<size_t>(n)] = v;
  }
  return w;
}

SizBounds check_siz_bounds(const CoefWeights& weights, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("check_siz_bounds: eps must be > 0");
  SizBounds b;
  double c = 0.0;
  double delta = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= weights.n_max(); ++n) {
    const double wn = weights[n];
    c = std::max(c, wn / (static_cast<double>(n) * n));
    delta = std::min(delta, wn * std::exp(eps * n));
  }
  b.C = c;
  b.delta_eps = delta;
  b.ok = std::isfinite(c) && c > 0.0 && std::isfinite(delta) && delta > 0.0;
  return b;
}

}  // namespace betacap
