#include "betacap/series.hpp"

#include <algorithm>
#include <cmath>

#include "betacap/errors.hpp"

namespace betacap {

PowerSeries ps_add(const PowerSeries& a, const PowerSeries& b, int N) {
  PowerSeries r(N);
  for (int k = 0; k < N; ++k) r.c[k] = a.coeff(k) + b.coeff(k);
  return r;
}

PowerSeries ps_scale(const PowerSeries& a, cplx s, int N) {
  PowerSeries r(N);
  for (int k = 0; k < std::min(N, a.order()); ++k) r.c[k] = s * a.c[k];
  return r;
}

PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b, int N) {
  PowerSeries r(N);
  const int na = std::min(N, a.order());
  for (int i = 0; i < na; ++i) {
    if (a.c[i] == cplx(0.0)) continue;
    const int nb = std::min(N - i, b.order());
    for (int j = 0; j < nb; ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  return r;
}

PowerSeries ps_div(const PowerSeries& num, const PowerSeries& den, int N) {
  const cplx d0 = den.coeff(0);
  if (std::abs(d0) == 0.0)
    throw NumericError("series division by a series with zero constant term");
  PowerSeries r(N);
  for (int k = 0; k < N; ++k) {
    cplx s = num.coeff(k);
    for (int j = 1; j <= k; ++j) s -= den.coeff(j) * r.c[k - j];
    r.c[k] = s / d0;
  }
  return r;
}

PowerSeries ps_pow(const PowerSeries& s, long k, int N) {
  if (k < 0) throw InvalidArgument("ps_pow: negative exponent");
  PowerSeries result(N);
  result.c[0] = 1.0;
  PowerSeries base = s;
  while (k > 0) {
    if (k & 1) result = ps_mul(result, base, N);
    k >>= 1;
    if (k > 0) base = ps_mul(base, base, N);
  }
  return result;
}

cplx ps_eval(const PowerSeries& s, cplx z) {
  cplx r(0.0);
  for (int k = s.order() - 1; k >= 0; --k) r = r * z + s.c[k];
  return r;
}

}  // namespace betacap
