#include "betacap/opmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "betacap/errors.hpp"

namespace betacap {

CompositionMatrix assemble_matrix(const Symbol& phi, const CoefWeights& weights,
                                  int N) {
  if (N < 8) throw InvalidArgument("assemble_matrix: N must be >= 8");
  if (weights.n_max() < N)
    throw InvalidArgument("assemble_matrix: weights cover too few indices");
  if (!(phi.sup_norm() < 1.0))
    throw InvalidArgument("assemble_matrix: symbol needs sup norm < 1");

  const PowerSeries base = phi.taylor(N);
  std::vector<double> sqw(static_cast<size_t>(N));
  for (int n = 0; n < N; ++n) sqw[static_cast<size_t>(n)] = std::sqrt(weights[n]);

  CompositionMatrix M;
  M.N = N;
  M.real = phi.real_coefficients();
  M.A.resize(N, N);
  PowerSeries col(N);
  col.c[0] = 1.0;  // phi^0
  for (int k = 0; k < N; ++k) {
    if (k > 0) col = ps_mul(col, base, N);
    for (int j = 0; j < N; ++j)
      M.A(j, k) = col.c[static_cast<size_t>(j)] * (sqw[static_cast<size_t>(j)] /
                                                   sqw[static_cast<size_t>(k)]);
  }
  return M;
}

namespace {

using ldcplx = std::complex<long double>;

// One-sided Jacobi on the columns; singular values come out as column norms.
// Working in long double keeps small singular values accurate well below
// the double-precision noise floor of a bidiagonalization-based SVD.
std::vector<double> jacobi_singular_values(const Eigen::MatrixXcd& A) {
  const int n = static_cast<int>(A.cols());
  const int rows = static_cast<int>(A.rows());
  std::vector<std::vector<ldcplx>> col(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    col[static_cast<size_t>(k)].resize(static_cast<size_t>(rows));
    for (int j = 0; j < rows; ++j)
      col[static_cast<size_t>(k)][static_cast<size_t>(j)] =
          ldcplx(A(j, k).real(), A(j, k).imag());
  }
  auto dot = [rows](const std::vector<ldcplx>& x, const std::vector<ldcplx>& y) {
    ldcplx s(0.0L);
    for (int i = 0; i < rows; ++i)
      s += std::conj(x[static_cast<size_t>(i)]) * y[static_cast<size_t>(i)];
    return s;
  };
  // A couple of digits above long double epsilon (~1.1e-19); asking for
  // less keeps rotating on roundoff noise forever.
  const long double tol = 1e-17L;
  const int max_sweeps = 400;
  long double worst_off = 0.0L;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    worst_off = 0.0L;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        auto& cp = col[static_cast<size_t>(p)];
        auto& cq = col[static_cast<size_t>(q)];
        const long double app = dot(cp, cp).real();
        const long double aqq = dot(cq, cq).real();
        if (app == 0.0L || aqq == 0.0L) continue;
        const ldcplx apq = dot(cp, cq);
        const long double mag = std::abs(apq);
        worst_off = std::max(worst_off, mag / std::sqrt(app * aqq));
        if (mag <= tol * std::sqrt(app * aqq)) continue;
        rotated = true;
        const ldcplx phase = apq / mag;
        const long double tau = (aqq - app) / (2.0L * mag);
        const long double t =
            (tau >= 0.0L ? 1.0L : -1.0L) /
            (std::abs(tau) + std::sqrt(1.0L + tau * tau));
        const long double c = 1.0L / std::sqrt(1.0L + t * t);
        const long double s = c * t;
        for (int i = 0; i < rows; ++i) {
          const ldcplx vp = cp[static_cast<size_t>(i)];
          const ldcplx vq = cq[static_cast<size_t>(i)] * std::conj(phase);
          cp[static_cast<size_t>(i)] = c * vp - s * vq;
          cq[static_cast<size_t>(i)] = (s * vp + c * vq) * phase;
        }
      }
    }
    if (!rotated) break;
    if (sweep == max_sweeps - 1 && worst_off > 1e-12L)
      throw NumericError("Jacobi SVD did not converge");
  }
  std::vector<double> sv(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    sv[static_cast<size_t>(k)] = static_cast<double>(
        std::sqrt(dot(col[static_cast<size_t>(k)], col[static_cast<size_t>(k)])
                      .real()));
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

std::vector<double> bdc_singular_values(const Eigen::MatrixXcd& A) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
  const auto& vals = svd.singularValues();
  return {vals.data(), vals.data() + vals.size()};
}

}  // namespace

SingularSpectrum singular_values(const Eigen::MatrixXcd& A) {
  if (!A.allFinite()) throw InvalidArgument("singular_values: non-finite entry");
  SingularSpectrum s;
  s.values = A.cols() <= 320 ? jacobi_singular_values(A)
                             : bdc_singular_values(A);
  for (double& v : s.values)
    if (v < 1e-300) v = 0.0;
  return s;
}

SingularSpectrum approximation_numbers(const CompositionMatrix& M) {
  return singular_values(M.A);
}

double truncation_tail_bound(const Symbol& phi, const CoefWeights& weights,
                             int N) {
  const double rho = phi.sup_norm();
  if (!(rho < 1.0))
    throw InvalidArgument("truncation_tail_bound: symbol needs sup norm < 1");
  // Column k beyond N has norm <= ||phi^k|| / sqrt(w_k), with
  // ||phi^k|| <= rho^k sqrt(1 + k^2/rho^2) ||phi||  and
  // w_k >= delta_eps e^{-eps k} over the computed range. With
  // r = rho e^{eps/2} < 1 this sums in closed geometric form.
  const double eps = std::min(0.5 * std::log(1.0 / rho), 0.1);
  const SizBounds sb = check_siz_bounds(weights, eps);
  const double r = rho * std::exp(0.5 * eps);
  if (!(r < 1.0)) return std::numeric_limits<double>::infinity();
  const double phinorm = space_norm(phi, weights, weights.n_max() + 1);
  // sum_{k>=N} r^k and sum_{k>=N} k r^k.
  const double rn = std::pow(r, N);
  const double s0 = rn / (1.0 - r);
  const double s1 = rn * (N * (1.0 - r) + r) / ((1.0 - r) * (1.0 - r));
  // sqrt(1 + k^2/rho^2) <= 1 + k/rho.
  return phinorm / std::sqrt(sb.delta_eps) * (s0 + s1 / rho);
}

BetaEstimate estimate_beta(const SingularSpectrum& s) {
  const int N = s.size();
  std::vector<std::pair<int, double>> pts;
  for (int n = std::max(5, 1); n <= N - 5; ++n) {
    const double a = s.a(n);
    if (a >= 1e-10 && a <= 1e-2) pts.emplace_back(n, std::log(a));
  }
  if (pts.size() < 10)
    throw WindowError(
        "too few usable singular values in [1e-10, 1e-2]; change N or "
        "precision");
  const double m = static_cast<double>(pts.size());
  double sx = 0, sy = 0;
  for (auto& [n, y] : pts) {
    sx += n;
    sy += y;
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (auto& [n, y] : pts) {
    sxx += (n - mx) * (n - mx);
    sxy += (n - mx) * (y - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ssr = 0, sst = 0;
  for (auto& [n, y] : pts) {
    const double e = y - (slope * n + intercept);
    ssr += e * e;
    sst += (y - my) * (y - my);
  }
  BetaEstimate b;
  b.beta = std::exp(slope);
  b.n_lo = pts.front().first;
  b.n_hi = pts.back().first;
  b.slope_stderr = m > 2 ? std::sqrt(ssr / (m - 2.0) / sxx) : 0.0;
  b.fit_r2 = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
  return b;
}

double cd_q(double a, double b) {
  if (!(a > 0.0 && b > 0.0 && a + b < 1.0))
    throw InvalidArgument("clifford_dabkowski: need a,b > 0 and a + b < 1");
  const double delta = (a * a - b * b - 1.0) * (a * a - b * b - 1.0) -
                       4.0 * b * b;
  // delta = (1+a+b)(1+a-b)(1-a+b)(1-a-b) > 0 under the preconditions.
  return (1.0 + a * a - b * b - std::sqrt(delta)) / (2.0 * a * a);
}

double clifford_dabkowski(double a, double b, int n) {
  const double q = cd_q(a, b);
  return std::pow(a, n - 1) * std::pow(q, n - 0.5);
}

double cd_beta(double a, double b) { return a * cd_q(a, b); }

}  // namespace betacap
