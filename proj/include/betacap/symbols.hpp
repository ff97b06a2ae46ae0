#pragma once

#include <string>
#include <variant>
#include <vector>

#include "betacap/series.hpp"
#include "betacap/weights.hpp"

namespace betacap {

// Closed-form primitives of an analytic self-map of the disk.
struct Affine { cplx a, b; };                 // z -> a z + b
struct Moebius { cplx a, b, c, d; };          // z -> (a z + b)/(c z + d)
struct Dilation { double r; };                // z -> r z, 0 < r < 1
struct Automorphism { cplx a; };              // z -> (a - z)/(1 - conj(a) z)
struct Polynomial { std::vector<cplx> coeffs; };

using Primitive = std::variant<Affine, Moebius, Dilation, Automorphism, Polynomial>;

struct Disk {
  cplx center;
  double radius;
};

// An analytic self-map phi of the unit disk as a composition chain of
// primitives. chain[0] is applied first (innermost).
class Symbol {
 public:
  Symbol(std::vector<Primitive> chain, bool declared_univalent);

  // Compact text form, e.g. "auto(0.5)*dil(0.5)" where `*` composes and the
  // right-most factor is applied first. Primitives: affine(a,b),
  // mobius(a,b,c,d), dil(r), auto(a), poly(c0,c1,...). Complex arguments
  // are written like 0.3+0.4i.
  static Symbol parse(const std::string& text);
  std::string text() const;

  const std::vector<Primitive>& chain() const { return chain_; }
  bool declared_univalent() const { return univalent_; }
  void set_declared_univalent(bool v) { univalent_ = v; }

  cplx eval(cplx z) const;

  // Taylor coefficients of phi about 0, truncated at order N.
  PowerSeries taylor(int N) const;

  // Estimate of sup_{|z|<1} |phi(z)| by boundary sampling (m points) plus
  // one golden-section refinement; the estimate is one-sided (never above
  // the true supremum beyond roundoff).
  double sup_norm(int m = 4096) const;

  // True if the composed map is fractional-linear overall.
  bool fractional_linear() const;

  // The Euclidean disk phi(D) for fractional-linear chains.
  Disk image_disk() const;

  // All primitive parameters real (the matrix of C_phi is then real).
  bool real_coefficients() const;

 private:
  std::vector<Primitive> chain_;
  bool univalent_;
};

// |z-w| / |1 - conj(z) w|, for z, w in the open disk.
double pseudo_hyperbolic(cplx z, cplx w);

// ||phi||_omega = sqrt(sum |b_n|^2 w_n) from the truncated Taylor series.
double space_norm(const Symbol& phi, const CoefWeights& weights, int N);
double series_space_norm(const PowerSeries& s, const CoefWeights& weights);

}  // namespace betacap
