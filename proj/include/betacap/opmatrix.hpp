#pragma once

#include <Eigen/Dense>

#include "betacap/symbols.hpp"
#include "betacap/weights.hpp"

namespace betacap {

// Truncated matrix of C_phi in the orthonormal basis e_k = z^k / sqrt(w_k):
// A(j,k) = c_{j,k} sqrt(w_j / w_k) with c_{j,k} the j-th Taylor coefficient
// of phi^k.
struct CompositionMatrix {
  Eigen::MatrixXcd A;
  int N = 0;
  bool real = false;  // all entries real (real-parameter symbol chain)
};

CompositionMatrix assemble_matrix(const Symbol& phi, const CoefWeights& weights,
                                  int N);

// Descending singular values; a_n = values[n-1], a_1 = ||T_N||.
struct SingularSpectrum {
  std::vector<double> values;
  int size() const { return static_cast<int>(values.size()); }
  double a(int n) const { return values[static_cast<size_t>(n) - 1]; }
};

// Full SVD of the truncated matrix. Matrices up to 320 columns go through a
// one-sided Jacobi sweep in extended precision, which keeps small singular
// values relatively accurate; larger ones fall back to Eigen's BDCSVD.
SingularSpectrum approximation_numbers(const CompositionMatrix& M);
SingularSpectrum singular_values(const Eigen::MatrixXcd& A);

// Closed upper bound on the operator-norm error of truncating at N, from the
// geometric tail sum of the column norms.
double truncation_tail_bound(const Symbol& phi, const CoefWeights& weights,
                             int N);

struct BetaEstimate {
  double beta = 0.0;
  int n_lo = 0, n_hi = 0;    // fit window (inclusive, 1-based indices)
  double slope_stderr = 0.0;
  double fit_r2 = 0.0;
};

// Least-squares fit of log a_n against n over the auto-selected window
// { n : 1e-10 <= a_n <= 1e-2 } intersected with [5, N-5]; beta = e^slope.
// Throws WindowError when fewer than 10 points qualify.
BetaEstimate estimate_beta(const SingularSpectrum& s);

// Exact singular values of C_{az+b} on H^2 (a,b > 0, a+b < 1):
// a_n = a^{n-1} Q^{n-1/2}.
double clifford_dabkowski(double a, double b, int n);
double cd_beta(double a, double b);
double cd_q(double a, double b);

}  // namespace betacap
