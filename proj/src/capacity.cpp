#include "betacap/capacity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "betacap/errors.hpp"

namespace betacap {

namespace {

double parse_real_arg(const std::string& s) {
  size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad number: '" + s + "'");
  }
  if (pos != s.size()) throw ParseError("bad number: '" + s + "'");
  return v;
}

std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

CompactSetSpec CompactSetSpec::euclid(cplx center, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("disk radius must be positive");
  if (!(std::abs(center) + radius < 1.0))
    throw InvalidArgument("disk closure must lie inside the unit disk");
  CompactSetSpec k;
  k.kind = Kind::euclid_disk;
  k.center = center;
  k.radius = radius;
  return k;
}

CompactSetSpec CompactSetSpec::ph(cplx center, double radius) {
  if (!(radius > 0.0 && radius < 1.0))
    throw InvalidArgument("pseudo-hyperbolic radius must lie in (0,1)");
  if (!(std::abs(center) < 1.0))
    throw InvalidArgument("pseudo-hyperbolic center must lie in the disk");
  CompactSetSpec k;
  k.kind = Kind::ph_disk;
  k.center = center;
  k.radius = radius;
  return k;
}

CompactSetSpec CompactSetSpec::seg(double x0, double x1) {
  if (!(x0 < x1) || !(x0 > -1.0) || !(x1 < 1.0))
    throw InvalidArgument("segment endpoints must satisfy -1 < x0 < x1 < 1");
  CompactSetSpec k;
  k.kind = Kind::segment;
  k.x0 = x0;
  k.x1 = x1;
  return k;
}

CompactSetSpec CompactSetSpec::curve(std::vector<cplx> boundary) {
  if (boundary.size() < 32) throw InvalidArgument("curve needs >= 32 samples");
  double max_mod = 0.0;
  std::vector<double> gaps;
  gaps.reserve(boundary.size());
  for (size_t i = 0; i < boundary.size(); ++i) {
    max_mod = std::max(max_mod, std::abs(boundary[i]));
    gaps.push_back(std::abs(boundary[(i + 1) % boundary.size()] - boundary[i]));
  }
  if (!(max_mod < 1.0))
    throw InvalidArgument("curve must lie inside the unit disk");
  std::vector<double> sorted = gaps;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  if (gaps.back() > std::max(1e-6, 5.0 * median))
    throw InvalidArgument("curve is not closed");
  CompactSetSpec k;
  k.kind = Kind::curve;
  k.boundary = std::move(boundary);
  return k;
}

CompactSetSpec CompactSetSpec::from_symbol(const Symbol& phi, int samples) {
  if (!phi.declared_univalent())
    throw InvalidArgument(
        "capacity of phi(D) needs a declared-univalent symbol");
  std::vector<cplx> pts(static_cast<size_t>(samples));
  for (int j = 0; j < samples; ++j)
    pts[static_cast<size_t>(j)] =
        phi.eval(std::polar(1.0, 2.0 * M_PI * j / samples));
  return curve(std::move(pts));
}

CompactSetSpec CompactSetSpec::parse(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  const size_t open = t.find('(');
  if (open == std::string::npos || t.empty() || t.back() != ')')
    throw ParseError("bad set spec: '" + text + "'");
  const std::string name = t.substr(0, open);
  const std::string body = t.substr(open + 1, t.size() - open - 2);
  if (name == "image") return from_symbol(Symbol::parse(body));
  const auto args = split_args(body);
  if (name == "disk") {
    if (args.size() != 2) throw ParseError("disk(b,a) takes two arguments");
    return euclid(parse_real_arg(args[0]), parse_real_arg(args[1]));
  }
  if (name == "phdisk") {
    if (args.size() != 2) throw ParseError("phdisk(w,r) takes two arguments");
    return ph(parse_real_arg(args[0]), parse_real_arg(args[1]));
  }
  if (name == "segment") {
    if (args.size() != 2)
      throw ParseError("segment(x0,x1) takes two arguments");
    return seg(parse_real_arg(args[0]), parse_real_arg(args[1]));
  }
  throw ParseError("unknown set spec: '" + text + "'");
}

std::string CompactSetSpec::text() const {
  std::ostringstream os;
  os.precision(15);
  switch (kind) {
    case Kind::euclid_disk:
      os << "disk(" << center.real() << "," << radius << ")";
      break;
    case Kind::ph_disk:
      os << "phdisk(" << center.real() << "," << radius << ")";
      break;
    case Kind::segment:
      os << "segment(" << x0 << "," << x1 << ")";
      break;
    case Kind::curve:
      os << "curve[" << boundary.size() << " samples]";
      break;
  }
  return os.str();
}

Disk CompactSetSpec::as_euclid_disk() const {
  if (kind == Kind::euclid_disk) return {center, radius};
  if (kind == Kind::ph_disk) {
    const double w2 = std::norm(center), r = radius;
    const double den = 1.0 - r * r * w2;
    return {center * (1.0 - r * r) / den, r * (1.0 - w2) / den};
  }
  throw InvalidArgument("set is not a disk");
}

bool CompactSetSpec::contains(cplx z, double pad) const {
  switch (kind) {
    case Kind::euclid_disk:
      return std::abs(z - center) <= radius + pad;
    case Kind::ph_disk: {
      const Disk d = as_euclid_disk();
      return std::abs(z - d.center) <= d.radius + pad;
    }
    case Kind::segment:
      return std::abs(z.imag()) <= pad && z.real() >= x0 - pad &&
             z.real() <= x1 + pad;
    case Kind::curve: {
      // Ray-crossing test against the sampled polygon.
      bool inside = false;
      const size_t n = boundary.size();
      for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const cplx a = boundary[i], b = boundary[j];
        if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
          const double x = a.real() + (z.imag() - a.imag()) /
                                          (b.imag() - a.imag()) *
                                          (b.real() - a.real());
          if (z.real() < x) inside = !inside;
        }
      }
      return inside;
    }
  }
  return false;
}

double green_kernel(cplx z, cplx w) {
  if (!(std::abs(z) < 1.0 && std::abs(w) < 1.0))
    throw InvalidArgument("green_kernel: points must lie in the open disk");
  const double d = std::abs(z - w);
  if (d == 0.0) throw NumericError("green_kernel: diagonal z == w");
  return std::log(std::abs(1.0 - std::conj(w) * z) / d);
}

CapacityEstimate CapacityEstimate::make(double value, Method method,
                                        double error_indicator) {
  CapacityEstimate e;
  e.value = value;
  e.method = method;
  e.error_indicator = error_indicator;
  e.m_value = value > 0.0 ? std::exp(-1.0 / value) : 0.0;
  return e;
}

std::string method_name(CapacityEstimate::Method m) {
  switch (m) {
    case CapacityEstimate::Method::closed_form: return "closed_form";
    case CapacityEstimate::Method::equilibrium: return "equilibrium";
    case CapacityEstimate::Method::grid: return "grid";
  }
  return "?";
}

CapacityEstimate cap_ph_disk(double r) {
  if (!(r > 0.0 && r < 1.0))
    throw InvalidArgument("cap_ph_disk: r must lie in (0,1)");
  return CapacityEstimate::make(1.0 / std::log(1.0 / r),
                                CapacityEstimate::Method::closed_form);
}

CapacityEstimate cap_euclid_disk(double b, double a) {
  if (!(a > 0.0 && b >= 0.0 && a + b < 1.0))
    throw InvalidArgument("cap_euclid_disk: need a > 0, b >= 0, a + b < 1");
  // lambda is the largest root of a z^2 - (1 + a^2 - b^2) z + a.
  const double p = 1.0 + a * a - b * b;
  const double disc = p * p - 4.0 * a * a;
  const double lambda = (p + std::sqrt(disc)) / (2.0 * a);
  return CapacityEstimate::make(1.0 / std::log(lambda),
                                CapacityEstimate::Method::closed_form);
}

double agm(double a, double b) {
  for (int i = 0; i < 64; ++i) {
    const double an = 0.5 * (a + b), gn = std::sqrt(a * b);
    if (std::abs(an - gn) <= 1e-14 * an) return 0.5 * (an + gn);
    a = an;
    b = gn;
  }
  return 0.5 * (a + b);
}

double elliptic_K(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw InvalidArgument("elliptic_K: modulus range");
  return M_PI / (2.0 * agm(1.0, std::sqrt(1.0 - k * k)));
}

CapacityEstimate cap_segment(double h) {
  if (!(h > 0.0 && h < 1.0))
    throw InvalidArgument("cap_segment: h must lie in (0,1)");
  const double k = (1.0 - h) / (1.0 + h);
  const double kp = std::sqrt(1.0 - k * k);
  const double I = elliptic_K(k), Ip = elliptic_K(kp);
  return CapacityEstimate::make(Ip / (M_PI * I),
                                CapacityEstimate::Method::closed_form);
}

PanelDiscretization discretize(const CompactSetSpec& K, int M) {
  if (M < 32) throw InvalidArgument("discretize: need M >= 32 panels");
  PanelDiscretization p;
  p.nodes.reserve(static_cast<size_t>(M));
  p.lengths.reserve(static_cast<size_t>(M));
  p.inward.reserve(static_cast<size_t>(M));
  switch (K.kind) {
    case CompactSetSpec::Kind::euclid_disk:
    case CompactSetSpec::Kind::ph_disk: {
      const Disk d = K.as_euclid_disk();
      const double ell = 2.0 * M_PI * d.radius / M;
      for (int j = 0; j < M; ++j) {
        const double theta = 2.0 * M_PI * (j + 0.5) / M;
        const cplx dir = std::polar(1.0, theta);
        p.nodes.push_back(d.center + d.radius * dir);
        p.lengths.push_back(ell);
        p.inward.push_back(-dir);
      }
      break;
    }
    case CompactSetSpec::Kind::segment: {
      // Chebyshev clustering matches the (dist to endpoint)^{-1/2} blow-up
      // of the equilibrium density.
      const double mid = 0.5 * (K.x0 + K.x1), half = 0.5 * (K.x1 - K.x0);
      for (int j = 0; j < M; ++j) {
        const double tm = M_PI * (j + 0.5) / M;
        p.nodes.push_back(cplx(mid + half * std::cos(tm), 0.0));
        p.lengths.push_back(half * (std::cos(M_PI * j / M) -
                                    std::cos(M_PI * (j + 1) / M)));
        p.inward.push_back(cplx(0.0, 1.0));
      }
      break;
    }
    case CompactSetSpec::Kind::curve: {
      const auto& b = K.boundary;
      const size_t n = b.size();
      std::vector<double> cum(n + 1, 0.0);
      for (size_t i = 0; i < n; ++i)
        cum[i + 1] = cum[i] + std::abs(b[(i + 1) % n] - b[i]);
      const double total = cum[n];
      cplx centroid = std::accumulate(b.begin(), b.end(), cplx(0.0)) /
                      static_cast<double>(n);
      auto at_arclength = [&](double s) {
        const auto it = std::upper_bound(cum.begin(), cum.end(), s);
        size_t i = static_cast<size_t>(std::max<ptrdiff_t>(
            0, std::distance(cum.begin(), it) - 1));
        if (i >= n) i = n - 1;
        const double seg = cum[i + 1] - cum[i];
        const double t = seg > 0.0 ? (s - cum[i]) / seg : 0.0;
        return b[i] + t * (b[(i + 1) % n] - b[i]);
      };
      const double ell = total / M;
      for (int j = 0; j < M; ++j) {
        const cplx node = at_arclength((j + 0.5) * ell);
        p.nodes.push_back(node);
        p.lengths.push_back(ell);
        const cplx dir = centroid - node;
        p.inward.push_back(dir / std::abs(dir));
      }
      break;
    }
  }
  return p;
}

namespace {

// Euclidean projection onto the probability simplex.
void project_simplex(Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0, theta = 0.0;
  int k = 0;
  for (int i = 0; i < n; ++i) {
    cumsum += u[static_cast<size_t>(i)];
    const double t = (cumsum - 1.0) / (i + 1);
    if (u[static_cast<size_t>(i)] - t > 0.0) {
      k = i + 1;
      theta = t;
    }
  }
  (void)k;
  for (int i = 0; i < n; ++i) v[i] = std::max(0.0, v[i] - theta);
}

double kkt_residual(const Eigen::MatrixXd& G, const Eigen::VectorXd& mu) {
  const Eigen::VectorXd grad = G * mu;
  const double v = mu.dot(grad);
  double res = 0.0;
  for (int i = 0; i < mu.size(); ++i) {
    if (mu[i] > 1e-14)
      res = std::max(res, std::abs(grad[i] - v));
    else
      res = std::max(res, std::max(0.0, v - grad[i]));
  }
  return res / std::abs(v);
}

}  // namespace

EquilibriumSolution solve_equilibrium(const PanelDiscretization& p) {
  const int M = p.size();
  if (M < 2) throw InvalidArgument("solve_equilibrium: too few panels");
  Eigen::MatrixXd G(M, M);
  for (int i = 0; i < M; ++i) {
    const cplx zi = p.nodes[static_cast<size_t>(i)];
    // Panel-averaged self-energy: smooth part of the kernel at z = w plus
    // the flat-panel average of -log|z-w|, which is 1 - log(ell/2).
    G(i, i) = std::log(1.0 - std::norm(zi)) + 1.0 -
              std::log(p.lengths[static_cast<size_t>(i)] / 2.0);
    for (int j = i + 1; j < M; ++j) {
      const cplx zj = p.nodes[static_cast<size_t>(j)];
      if (zi == zj) throw NumericError("solve_equilibrium: duplicate nodes");
      const double g = green_kernel(zi, zj);
      G(i, j) = g;
      G(j, i) = g;
    }
  }

  // Saddle system [G, 1; 1^T, 0] [mu; lambda] = [0; 1].
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(M + 1, M + 1);
  S.topLeftCorner(M, M) = G;
  S.block(0, M, M, 1).setOnes();
  S.block(M, 0, 1, M).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M + 1);
  rhs[M] = 1.0;
  Eigen::VectorXd sol = S.partialPivLu().solve(rhs);
  if (!sol.allFinite())
    throw NumericError("solve_equilibrium: singular saddle system");
  Eigen::VectorXd mu = sol.head(M);

  if (mu.minCoeff() < -1e-10) {
    // Active-constraint case: projected gradient on the simplex.
    project_simplex(mu);
    double lam_max = 1.0;
    {
      Eigen::VectorXd v = Eigen::VectorXd::Ones(M).normalized();
      for (int it = 0; it < 100; ++it) {
        v = (G * v).normalized();
      }
      lam_max = std::abs(v.dot(G * v));
    }
    const double step = 1.0 / (2.0 * lam_max);
    bool converged = false;
    for (int it = 0; it < 100000; ++it) {
      Eigen::VectorXd next = mu - step * 2.0 * (G * mu);
      project_simplex(next);
      mu = next;
      if (it % 50 == 0 && kkt_residual(G, mu) < 1e-8) {
        converged = true;
        break;
      }
    }
    if (!converged && kkt_residual(G, mu) >= 1e-8)
      throw NumericError("solve_equilibrium: projected gradient stalled");
  } else {
    for (int i = 0; i < M; ++i) mu[i] = std::max(0.0, mu[i]);
    mu /= mu.sum();
  }

  EquilibriumSolution out;
  out.masses.assign(mu.data(), mu.data() + M);
  out.energy = mu.dot(G * mu);
  if (!(out.energy > 0.0))
    throw NumericError("solve_equilibrium: non-positive energy");
  out.capacity = 1.0 / out.energy;

  // Frostman check: the potential should equal V at points just inside K.
  double res = 0.0;
  for (int i = 0; i < M; ++i) {
    const cplx t = p.nodes[static_cast<size_t>(i)] +
                   2.0 * p.lengths[static_cast<size_t>(i)] *
                       p.inward[static_cast<size_t>(i)];
    if (!(std::abs(t) < 1.0)) continue;
    double pot = 0.0;
    for (int j = 0; j < M; ++j)
      pot += out.masses[static_cast<size_t>(j)] *
             green_kernel(t, p.nodes[static_cast<size_t>(j)]);
    res = std::max(res, std::abs(pot - out.energy) / out.energy);
  }
  out.frostman_residual = res;
  return out;
}

double green_potential(const EquilibriumSolution& sol,
                       const PanelDiscretization& p, cplx z) {
  const int M = p.size();
  double pot = 0.0;
  for (int j = 0; j < M; ++j) {
    const cplx zj = p.nodes[static_cast<size_t>(j)];
    const double ell = p.lengths[static_cast<size_t>(j)];
    if (std::abs(z - zj) < 1e-9 * ell) {
      pot += sol.masses[static_cast<size_t>(j)] *
             (std::log(1.0 - std::norm(zj)) + 1.0 - std::log(ell / 2.0));
    } else {
      pot += sol.masses[static_cast<size_t>(j)] * green_kernel(z, zj);
    }
  }
  return pot;
}

CapacityEstimate cap_equilibrium(const CompactSetSpec& K, int M) {
  const PanelDiscretization p = discretize(K, M);
  const EquilibriumSolution sol = solve_equilibrium(p);
  return CapacityEstimate::make(sol.capacity,
                                CapacityEstimate::Method::equilibrium,
                                sol.frostman_residual);
}

GridSolution solve_dirichlet_grid(const CompactSetSpec& K, double h) {
  if (!(h > 0.0 && h <= 1.0 / 64.0 + 1e-15))
    throw InvalidArgument("grid spacing too coarse");
  const int n = static_cast<int>(std::llround(2.0 / h));
  const double hh = 2.0 / n;
  auto cell = [&](int i, int j) { return cplx(-1.0 + (i + 0.5) * hh,
                                              -1.0 + (j + 0.5) * hh); };
  // 0 = outside D, 1 = unknown, 2 = inside K.
  std::vector<uint8_t> cls(static_cast<size_t>(n) * n, 0);
  const double pad = K.kind == CompactSetSpec::Kind::segment ? 0.5 * hh : 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const cplx z = cell(i, j);
      if (std::abs(z) >= 1.0) continue;
      cls[static_cast<size_t>(j) * n + i] = K.contains(z, pad) ? 2 : 1;
    }
  auto at = [&](int i, int j) -> uint8_t {
    if (i < 0 || j < 0 || i >= n || j >= n) return 0;
    return cls[static_cast<size_t>(j) * n + i];
  };
  std::vector<int> idx(static_cast<size_t>(n) * n, -1);
  int unknowns = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const uint8_t c = at(i, j);
      if (c == 1) idx[static_cast<size_t>(j) * n + i] = unknowns++;
      if (c == 2 && (at(i - 1, j) == 0 || at(i + 1, j) == 0 ||
                     at(i, j - 1) == 0 || at(i, j + 1) == 0))
        throw InvalidArgument("set touches the unit circle on the grid");
    }
  if (unknowns == 0) throw InvalidArgument("grid has no free cells");

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int u = idx[static_cast<size_t>(j) * n + i];
      if (u < 0) continue;
      int fixed_one = 0;
      if (at(i - 1, j) == 2) ++fixed_one;
      if (at(i + 1, j) == 2) ++fixed_one;
      if (at(i, j - 1) == 2) ++fixed_one;
      if (at(i, j + 1) == 2) ++fixed_one;
      rhs[u] = fixed_one;
    }

  auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    y.setZero();
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const int u = idx[static_cast<size_t>(j) * n + i];
        if (u < 0) continue;
        double v = 4.0 * x[u];
        const int l = (i > 0) ? idx[static_cast<size_t>(j) * n + i - 1] : -1;
        const int r = (i < n - 1) ? idx[static_cast<size_t>(j) * n + i + 1] : -1;
        const int d = (j > 0) ? idx[static_cast<size_t>(j - 1) * n + i] : -1;
        const int t = (j < n - 1) ? idx[static_cast<size_t>(j + 1) * n + i] : -1;
        if (l >= 0) v -= x[l];
        if (r >= 0) v -= x[r];
        if (d >= 0) v -= x[d];
        if (t >= 0) v -= x[t];
        y[u] = v;
      }
  };

  // Plain conjugate gradient on the SPD 5-point system.
  Eigen::VectorXd x = Eigen::VectorXd::Zero(unknowns);
  Eigen::VectorXd rv = rhs, pv = rhs, ap(unknowns);
  const double rhs_norm = rhs.norm();
  double rr = rv.squaredNorm();
  const int max_iter = 50000;
  int it = 0;
  for (; it < max_iter; ++it) {
    if (std::sqrt(rr) <= 1e-10 * rhs_norm) break;
    apply(pv, ap);
    const double alpha = rr / pv.dot(ap);
    x += alpha * pv;
    rv -= alpha * ap;
    const double rr_new = rv.squaredNorm();
    pv = rv + (rr_new / rr) * pv;
    rr = rr_new;
  }
  if (it == max_iter)
    throw NumericError("grid solver: conjugate gradient did not converge");

  GridSolution g;
  g.h = hh;
  g.n = n;
  g.u.assign(static_cast<size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const size_t c = static_cast<size_t>(j) * n + i;
      if (cls[c] == 2)
        g.u[c] = 1.0;
      else if (idx[c] >= 0)
        g.u[c] = x[idx[c]];
    }
  auto uval = [&](int i, int j) -> double {
    if (i < 0 || j < 0 || i >= n || j >= n) return 0.0;
    return g.u[static_cast<size_t>(j) * n + i];
  };
  // Discrete Dirichlet energy over grid edges; (du/h)^2 h^2 = du^2.
  double energy = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = -1; i < n; ++i) {
      const double dx = uval(i + 1, j) - uval(i, j);
      energy += dx * dx;
    }
  for (int i = 0; i < n; ++i)
    for (int j = -1; j < n; ++j) {
      const double dy = uval(i, j + 1) - uval(i, j);
      energy += dy * dy;
    }
  g.capacity = energy / (2.0 * M_PI);
  return g;
}

CapacityEstimate cap_dirichlet_grid(const CompactSetSpec& K, double h) {
  if (!(h > 0.0 && h <= 1.0 / 128.0 + 1e-15))
    throw InvalidArgument("grid spacing must satisfy h <= 1/128");
  const GridSolution fine = solve_dirichlet_grid(K, h);
  const GridSolution coarse = solve_dirichlet_grid(K, 2.0 * h);
  const double err = std::abs(fine.capacity - coarse.capacity) / fine.capacity;
  return CapacityEstimate::make(fine.capacity, CapacityEstimate::Method::grid,
                                err);
}

}  // namespace betacap
