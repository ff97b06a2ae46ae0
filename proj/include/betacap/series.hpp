#pragma once

#include <complex>
#include <vector>

namespace betacap {

using cplx = std::complex<double>;

// Truncated power series about 0: c[0] + c[1] z + ... + c[N-1] z^{N-1}.
struct PowerSeries {
  std::vector<cplx> c;

  PowerSeries() = default;
  explicit PowerSeries(int order) : c(order, cplx(0.0)) {}
  int order() const { return static_cast<int>(c.size()); }
  cplx coeff(int k) const { return k < order() ? c[k] : cplx(0.0); }
};

// All operations truncate the result at order N.
PowerSeries ps_add(const PowerSeries& a, const PowerSeries& b, int N);
PowerSeries ps_scale(const PowerSeries& a, cplx s, int N);
PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b, int N);

// num / den; den must have a nonzero constant term.
PowerSeries ps_div(const PowerSeries& num, const PowerSeries& den, int N);

// s^k mod z^N by binary exponentiation; k >= 0.
PowerSeries ps_pow(const PowerSeries& s, long k, int N);

cplx ps_eval(const PowerSeries& s, cplx z);

}  // namespace betacap
