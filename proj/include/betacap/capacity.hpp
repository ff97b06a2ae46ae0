#pragma once

#include <string>
#include <vector>

#include "betacap/series.hpp"
#include "betacap/symbols.hpp"

namespace betacap {

// A compact subset of the open unit disk whose Green capacity is wanted.
struct CompactSetSpec {
  enum class Kind { euclid_disk, ph_disk, segment, curve };

  Kind kind = Kind::euclid_disk;
  cplx center;          // euclid_disk / ph_disk
  double radius = 0.0;  // euclid_disk / ph_disk
  double x0 = 0.0, x1 = 0.0;       // segment endpoints in (-1,1)
  std::vector<cplx> boundary;      // curve: closed boundary samples

  static CompactSetSpec euclid(cplx center, double radius);
  static CompactSetSpec ph(cplx center, double radius);
  static CompactSetSpec seg(double x0, double x1);
  static CompactSetSpec curve(std::vector<cplx> boundary);

  // Boundary samples of phi(D) from a declared-univalent symbol.
  static CompactSetSpec from_symbol(const Symbol& phi, int samples = 2048);

  // Text forms: "disk(b,a)", "phdisk(w,r)", "segment(x0,x1)",
  // "image(<symbol>)".
  static CompactSetSpec parse(const std::string& text);
  std::string text() const;

  // The equivalent Euclidean disk for disk-like kinds.
  Disk as_euclid_disk() const;
  bool contains(cplx z, double pad = 0.0) const;
};

// Green kernel of the disk: g(z,w) = log | (1 - conj(w) z) / (z - w) |.
double green_kernel(cplx z, cplx w);

struct CapacityEstimate {
  enum class Method { closed_form, equilibrium, grid };
  double value = 0.0;
  Method method = Method::closed_form;
  double error_indicator = 0.0;
  double m_value = 0.0;  // e^{-1/value}, 0 when value == 0

  static CapacityEstimate make(double value, Method method,
                               double error_indicator = 0.0);
};
std::string method_name(CapacityEstimate::Method m);

// Closed forms.
CapacityEstimate cap_ph_disk(double r);                 // 1 / log(1/r)
CapacityEstimate cap_euclid_disk(double b, double a);   // disk D(b,a), b >= 0
CapacityEstimate cap_segment(double h);                 // [0,h], AGM elliptic

// Complete elliptic integral of the first kind, modulus k, by AGM.
double elliptic_K(double k);
double agm(double a, double b);

// Midpoint panels of the boundary of K: equal arclength on circles and
// curves, Chebyshev-clustered on segments.
struct PanelDiscretization {
  std::vector<cplx> nodes;
  std::vector<double> lengths;
  std::vector<cplx> inward;  // unit offset direction for test points
  int size() const { return static_cast<int>(nodes.size()); }
};
PanelDiscretization discretize(const CompactSetSpec& K, int M);

// Discrete equilibrium measure: minimizes mu^T G mu over the simplex.
struct EquilibriumSolution {
  std::vector<double> masses;     // >= 0, summing to 1
  double energy = 0.0;            // V = mu^T G mu
  double capacity = 0.0;          // 1 / V
  double frostman_residual = 0.0; // max |G_mu - V| / V at offset test points
};
EquilibriumSolution solve_equilibrium(const PanelDiscretization& p);

double green_potential(const EquilibriumSolution& sol,
                       const PanelDiscretization& p, cplx z);

CapacityEstimate cap_equilibrium(const CompactSetSpec& K, int M);

// Grid oracle: discrete Dirichlet energy of the capacitary potential on a
// Cartesian grid of spacing h, solved by conjugate gradient.
CapacityEstimate cap_dirichlet_grid(const CompactSetSpec& K, double h);

// Optional CSV dump (x, y, u) of the last grid solution is handled by the
// caller via this direct solve entry point.
struct GridSolution {
  double h = 0.0;
  int n = 0;  // cells per side over [-1,1]
  std::vector<double> u;  // n*n values; 1 on K, 0 outside D
  double capacity = 0.0;
};
GridSolution solve_dirichlet_grid(const CompactSetSpec& K, double h);

}  // namespace betacap
