#include "betacap/symbols.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "betacap/errors.hpp"

namespace betacap {

namespace {

double parse_real(const std::string& s) {
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

// Accepts "0.3", "-0.3", "0.4i", "0.3+0.4i", "-i", "i".
cplx parse_complex(std::string s) {
  if (s.empty()) throw ParseError("empty number");
  if (s.back() != 'i') return {parse_real(s), 0.0};
  s.pop_back();
  // Find a sign separating real and imaginary parts (not leading, not an
  // exponent sign).
  size_t split = std::string::npos;
  for (size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
      split = i;
  }
  auto imag_of = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t);
  };
  if (split == std::string::npos) return {0.0, imag_of(s)};
  return {parse_real(s.substr(0, split)), imag_of(s.substr(split))};
}

std::string fmt_complex(cplx v) {
  std::ostringstream os;
  os.precision(15);
  if (v.imag() == 0.0) {
    os << v.real();
  } else if (v.real() == 0.0) {
    os << v.imag() << 'i';
  } else {
    os << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << 'i';
  }
  return os.str();
}

struct Factor {
  std::string name;
  std::vector<cplx> args;
};

Factor parse_factor(const std::string& t) {
  const size_t open = t.find('(');
  if (open == std::string::npos || t.back() != ')')
    throw ParseError("bad symbol factor: '" + t + "'");
  Factor f;
  f.name = t.substr(0, open);
  std::string args = t.substr(open + 1, t.size() - open - 2);
  if (!args.empty()) {
    std::string cur;
    for (char ch : args) {
      if (ch == ',') {
        f.args.push_back(parse_complex(cur));
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    f.args.push_back(parse_complex(cur));
  }
  return f;
}

Primitive make_primitive(const Factor& f) {
  auto expect = [&](size_t n) {
    if (f.args.size() != n)
      throw ParseError("factor '" + f.name + "' expects " + std::to_string(n) +
                       " argument(s)");
  };
  if (f.name == "affine") {
    expect(2);
    return Affine{f.args[0], f.args[1]};
  }
  if (f.name == "mobius") {
    expect(4);
    return Moebius{f.args[0], f.args[1], f.args[2], f.args[3]};
  }
  if (f.name == "dil") {
    expect(1);
    if (f.args[0].imag() != 0.0) throw ParseError("dil() takes a real ratio");
    return Dilation{f.args[0].real()};
  }
  if (f.name == "auto") {
    expect(1);
    return Automorphism{f.args[0]};
  }
  if (f.name == "poly") {
    if (f.args.empty()) throw ParseError("poly() needs coefficients");
    return Polynomial{f.args};
  }
  throw ParseError("unknown symbol primitive: '" + f.name + "'");
}

void validate_primitive(const Primitive& p) {
  if (const auto* d = std::get_if<Dilation>(&p)) {
    if (!(d->r > 0.0 && d->r < 1.0))
      throw InvalidArgument("dilation ratio must lie in (0,1)");
  } else if (const auto* a = std::get_if<Automorphism>(&p)) {
    if (!(std::abs(a->a) < 1.0))
      throw InvalidArgument("automorphism parameter must satisfy |a| < 1");
  } else if (const auto* m = std::get_if<Moebius>(&p)) {
    if (std::abs(m->d) == 0.0 && std::abs(m->c) == 0.0)
      throw InvalidArgument("degenerate Moebius map");
    const double lhs = std::norm(m->a) + std::norm(m->b) +
                       2.0 * std::abs(std::conj(m->a) * m->b -
                                      std::conj(m->c) * m->d);
    const double rhs = std::norm(m->c) + std::norm(m->d);
    if (lhs > rhs * (1.0 + 1e-12) || std::abs(m->c) > std::abs(m->d) * (1.0 + 1e-12))
      throw InvalidArgument("Moebius map does not send the disk into itself");
  } else if (const auto* af = std::get_if<Affine>(&p)) {
    if (std::abs(af->a) + std::abs(af->b) > 1.0 + 1e-12)
      throw InvalidArgument("affine map does not send the disk into itself");
  }
}

cplx eval_primitive(const Primitive& p, cplx z) {
  if (const auto* af = std::get_if<Affine>(&p)) return af->a * z + af->b;
  if (const auto* m = std::get_if<Moebius>(&p)) {
    const cplx den = m->c * z + m->d;
    if (std::abs(den) < 1e-14 * (std::abs(m->c) + std::abs(m->d)))
      throw NumericError("Moebius pole hit during evaluation");
    return (m->a * z + m->b) / den;
  }
  if (const auto* d = std::get_if<Dilation>(&p)) return d->r * z;
  if (const auto* a = std::get_if<Automorphism>(&p))
    return (a->a - z) / (1.0 - std::conj(a->a) * z);
  const auto& poly = std::get<Polynomial>(p);
  cplx r(0.0);
  for (auto it = poly.coeffs.rbegin(); it != poly.coeffs.rend(); ++it)
    r = r * z + *it;
  return r;
}

PowerSeries substitute(const Primitive& p, const PowerSeries& s, int N) {
  if (const auto* af = std::get_if<Affine>(&p)) {
    PowerSeries r = ps_scale(s, af->a, N);
    r.c[0] += af->b;
    return r;
  }
  if (const auto* d = std::get_if<Dilation>(&p)) return ps_scale(s, d->r, N);
  if (const auto* a = std::get_if<Automorphism>(&p)) {
    PowerSeries num = ps_scale(s, -1.0, N);
    num.c[0] += a->a;
    PowerSeries den = ps_scale(s, -std::conj(a->a), N);
    den.c[0] += 1.0;
    return ps_div(num, den, N);
  }
  if (const auto* m = std::get_if<Moebius>(&p)) {
    if (std::abs(m->c) > 0.0 && !(std::abs(m->c) < std::abs(m->d)))
      throw NumericError(
          "Moebius series extraction needs |c| < |d| strictly");
    PowerSeries num = ps_scale(s, m->a, N);
    num.c[0] += m->b;
    PowerSeries den = ps_scale(s, m->c, N);
    den.c[0] += m->d;
    return ps_div(num, den, N);
  }
  const auto& poly = std::get<Polynomial>(p);
  PowerSeries r(N);
  for (auto it = poly.coeffs.rbegin(); it != poly.coeffs.rend(); ++it) {
    r = ps_mul(r, s, N);
    r.c[0] += *it;
  }
  return r;
}

}  // namespace

Symbol::Symbol(std::vector<Primitive> chain, bool declared_univalent)
    : chain_(std::move(chain)), univalent_(declared_univalent) {
  if (chain_.empty()) throw InvalidArgument("empty symbol chain");
  for (const auto& p : chain_) validate_primitive(p);
  if (sup_norm(256) > 1.0 + 1e-9)
    throw InvalidArgument("symbol does not map the disk into itself");
}

Symbol Symbol::parse(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw ParseError("empty symbol text");
  std::vector<std::string> factors;
  std::string cur;
  int depth = 0;
  for (char ch : t) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '*' && depth == 0) {
      factors.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  factors.push_back(cur);
  // `*` is composition with the right-most factor applied first.
  std::vector<Primitive> chain;
  bool univalent = true;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    Primitive p = make_primitive(parse_factor(*it));
    if (std::holds_alternative<Polynomial>(p) &&
        std::get<Polynomial>(p).coeffs.size() > 2)
      univalent = false;
    chain.push_back(std::move(p));
  }
  return Symbol(std::move(chain), univalent);
}

std::string Symbol::text() const {
  std::string out;
  for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
    if (!out.empty()) out += "*";
    if (const auto* af = std::get_if<Affine>(&*it)) {
      out += "affine(" + fmt_complex(af->a) + "," + fmt_complex(af->b) + ")";
    } else if (const auto* m = std::get_if<Moebius>(&*it)) {
      out += "mobius(" + fmt_complex(m->a) + "," + fmt_complex(m->b) + "," +
             fmt_complex(m->c) + "," + fmt_complex(m->d) + ")";
    } else if (const auto* d = std::get_if<Dilation>(&*it)) {
      out += "dil(" + fmt_complex(d->r) + ")";
    } else if (const auto* a = std::get_if<Automorphism>(&*it)) {
      out += "auto(" + fmt_complex(a->a) + ")";
    } else {
      const auto& poly = std::get<Polynomial>(*it);
      out += "poly(";
      for (size_t i = 0; i < poly.coeffs.size(); ++i)
        out += (i ? "," : "") + fmt_complex(poly.coeffs[i]);
      out += ")";
    }
  }
  return out;
}

cplx Symbol::eval(cplx z) const {
  for (const auto& p : chain_) z = eval_primitive(p, z);
  return z;
}

PowerSeries Symbol::taylor(int N) const {
  if (N < 1) throw InvalidArgument("taylor: N must be >= 1");
  PowerSeries s(N);
  if (N >= 2) s.c[1] = 1.0;  // identity
  for (const auto& p : chain_) s = substitute(p, s, N);
  return s;
}

double Symbol::sup_norm(int m) const {
  if (m < 64) throw InvalidArgument("sup_norm: need at least 64 samples");
  double radius = 1.0;
  auto modulus = [&](double theta) {
    return std::abs(eval(std::polar(radius, theta)));
  };
  const double step = 2.0 * M_PI / m;
  double best = -1.0;
  int best_j = 0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      for (int j = 0; j < m; ++j) {
        const double v = modulus(j * step);
        if (v > best) {
          best = v;
          best_j = j;
        }
      }
      break;
    } catch (const NumericError&) {
      // Pole on the boundary circle: back off slightly.
      radius = 1.0 - 1e-9;
      best = -1.0;
    }
  }
  // Golden-section refinement around the arg-max.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = (best_j - 1) * step, hi = (best_j + 1) * step;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = modulus(x1), f2 = modulus(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = modulus(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = modulus(x1);
    }
  }
  return std::max(best, std::max(f1, f2));
}

bool Symbol::fractional_linear() const {
  for (const auto& p : chain_) {
    if (const auto* poly = std::get_if<Polynomial>(&p)) {
      if (poly->coeffs.size() > 2) return false;
    }
  }
  return true;
}

Disk Symbol::image_disk() const {
  if (!fractional_linear())
    throw InvalidArgument("image_disk requires a fractional-linear symbol");
  const cplx w1 = eval(1.0), w2 = eval(-1.0), w3 = eval(cplx(0.0, 1.0));
  const double ax = 2.0 * (w2.real() - w1.real()),
               ay = 2.0 * (w2.imag() - w1.imag()),
               bx = 2.0 * (w3.real() - w1.real()),
               by = 2.0 * (w3.imag() - w1.imag());
  const double r1 = std::norm(w2) - std::norm(w1),
               r2 = std::norm(w3) - std::norm(w1);
  const double det = ax * by - ay * bx;
  const double scale = std::abs(ax) + std::abs(ay) + std::abs(bx) + std::abs(by);
  if (std::abs(det) <= 1e-12 * scale * scale) {
    // Collinear images: the overall map is affine.
    const PowerSeries s = taylor(2);
    return {s.coeff(0), std::abs(s.coeff(1))};
  }
  const cplx center((by * r1 - ay * r2) / det, (ax * r2 - bx * r1) / det);
  return {center, std::abs(w1 - center)};
}

bool Symbol::real_coefficients() const {
  auto is_real = [](cplx v) { return v.imag() == 0.0; };
  for (const auto& p : chain_) {
    if (const auto* af = std::get_if<Affine>(&p)) {
      if (!is_real(af->a) || !is_real(af->b)) return false;
    } else if (const auto* m = std::get_if<Moebius>(&p)) {
      if (!is_real(m->a) || !is_real(m->b) || !is_real(m->c) || !is_real(m->d))
        return false;
    } else if (const auto* a = std::get_if<Automorphism>(&p)) {
      if (!is_real(a->a)) return false;
    } else if (const auto* poly = std::get_if<Polynomial>(&p)) {
      for (cplx c : poly->coeffs)
        if (!is_real(c)) return false;
    }
  }
  return true;
}

double pseudo_hyperbolic(cplx z, cplx w) {
  if (!(std::abs(z) < 1.0 && std::abs(w) < 1.0))
    throw InvalidArgument("pseudo_hyperbolic: points must lie in the open disk");
  return std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
}

double series_space_norm(const PowerSeries& s, const CoefWeights& weights) {
  double sum = 0.0;
  const int top = std::min(s.order() - 1, weights.n_max());
  for (int n = 0; n <= top; ++n) sum += std::norm(s.c[n]) * weights[n];
  return std::sqrt(sum);
}

double space_norm(const Symbol& phi, const CoefWeights& weights, int N) {
  return series_space_norm(phi.taylor(N), weights);
}

}  // namespace betacap
