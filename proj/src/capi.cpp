#include "betacap/betacap.h"

#include <cstring>
#include <string>

#include "betacap/capacity.hpp"
#include "betacap/errors.hpp"
#include "betacap/harness.hpp"
#include "betacap/opmatrix.hpp"
#include "betacap/symbols.hpp"
#include "betacap/weights.hpp"

using namespace betacap;

struct bc_weights {
  CoefWeights w;
};
struct bc_symbol {
  Symbol s;
};
struct bc_spectrum {
  SingularSpectrum sp;
};

namespace {

thread_local std::string g_last_error;

bc_status fail(bc_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <typename F>
bc_status guarded(F&& f) {
  try {
    f();
    return BC_OK;
  } catch (const ParseError& e) {
    return fail(BC_ERR_PARSE, e.what());
  } catch (const WindowError& e) {
    return fail(BC_ERR_WINDOW, e.what());
  } catch (const NumericError& e) {
    return fail(BC_ERR_NUMERIC, e.what());
  } catch (const InvalidArgument& e) {
    return fail(BC_ERR_INVALID_ARG, e.what());
  } catch (const std::exception& e) {
    return fail(BC_ERR_NUMERIC, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* bc_version(void) { return "0.1.0"; }

const char* bc_last_error(void) { return g_last_error.c_str(); }

void bc_string_free(char* s) { delete[] s; }

bc_status bc_weights_create(const char* spec, int n_max, bc_weights** out) {
  if (!spec || !out) return fail(BC_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    *out = new bc_weights{coef_weights(WeightSpec::parse(spec), n_max)};
  });
}

int bc_weights_count(const bc_weights* w) {
  return w ? static_cast<int>(w->w.values.size()) : 0;
}

bc_status bc_weights_get(const bc_weights* w, int n, double* out) {
  if (!w || !out) return fail(BC_ERR_INVALID_ARG, "null argument");
  if (n < 0 || n > w->w.n_max())
    return fail(BC_ERR_INVALID_ARG, "weight index out of range");
  *out = w->w[n];
  return BC_OK;
}

bc_status bc_weights_siz_bounds(const bc_weights* w, double eps,
                                double* delta_eps, double* big_c, int* ok) {
  if (!w || !delta_eps || !big_c || !ok)
    return fail(BC_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    const SizBounds b = check_siz_bounds(w->w, eps);
    *delta_eps = b.delta_eps;
    *big_c = b.C;
    *ok = b.ok ? 1 : 0;
  });
}

void bc_weights_free(bc_weights* w) { delete w; }

bc_status bc_symbol_parse(const char* text, bc_symbol** out) {
  if (!text || !out) return fail(BC_ERR_INVALID_ARG, "null argument");
  return guarded([&] { *out = new bc_symbol{Symbol::parse(text)}; });
}

bc_status bc_symbol_eval(const bc_symbol* s, double re, double im,
                         double* out_re, double* out_im) {
  if (!s || !out_re || !out_im) return fail(BC_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    const cplx v = s->s.eval(cplx(re, im));
    *out_re = v.real();
    *out_im = v.imag();
  });
}

bc_status bc_symbol_sup_norm(const bc_symbol* s, double* out) {
  if (!s || !out) return fail(BC_ERR_INVALID_ARG, "null argument");
  return guarded([&] { *out = s->s.sup_norm(); });
}

bc_status bc_symbol_image_disk(const bc_symbol* s, double* center_re,
                               double* center_im, double* radius) {
  if (!s || !center_re || !center_im || !radius)
    return fail(BC_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    const Disk d = s->s.image_disk();
    *center_re = d.center.real();
    *center_im = d.center.imag();
    *radius = d.radius;
  });
}

void bc_symbol_free(bc_symbol* s) { delete s; }

bc_status bc_spectrum_compute(const bc_symbol* s, const bc_weights* w, int N,
                              bc_spectrum** out) {
  if (!s || !w || !out) return fail(BC_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    *out = new bc_spectrum{
        approximation_numbers(assemble_matrix(s->s, w->w, N))};
  });
}

int bc_spectrum_count(const bc_spectrum* sp) { return sp ? sp->sp.size() : 0; }

bc_status bc_spectrum_get(const bc_spectrum* sp, int n, double* a_n) {
  if (!sp || !a_n) return fail(BC_ERR_INVALID_ARG, "null argument");
  if (n < 1 || n > sp->sp.size())
    return fail(BC_ERR_INVALID_ARG, "spectrum index out of range");
  *a_n = sp->sp.a(n);
  return BC_OK;
}

bc_status bc_spectrum_beta(const bc_spectrum* sp, double* beta,
                           double* slope_stderr, double* fit_r2, int* n_lo,
                           int* n_hi) {
  if (!sp || !beta) return fail(BC_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    const BetaEstimate b = estimate_beta(sp->sp);
    *beta = b.beta;
    if (slope_stderr) *slope_stderr = b.slope_stderr;
    if (fit_r2) *fit_r2 = b.fit_r2;
    if (n_lo) *n_lo = b.n_lo;
    if (n_hi) *n_hi = b.n_hi;
  });
}

void bc_spectrum_free(bc_spectrum* sp) { delete sp; }

bc_status bc_capacity(const char* set, const char* method, int panels,
                      double grid_h, double* value, double* m_value,
                      double* error_indicator) {
  if (!set || !method || !value) return fail(BC_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    const CompactSetSpec K = CompactSetSpec::parse(set);
    const std::string m = method;
    CapacityEstimate est;
    if (m == "closed_form") {
      switch (K.kind) {
        case CompactSetSpec::Kind::euclid_disk:
          est = cap_euclid_disk(std::abs(K.center), K.radius);
          break;
        case CompactSetSpec::Kind::ph_disk:
          est = cap_ph_disk(K.radius);
          break;
        case CompactSetSpec::Kind::segment: {
          if (K.x0 != 0.0)
            throw InvalidArgument(
                "closed-form segment capacity needs segment(0,h)");
          est = cap_segment(K.x1);
          break;
        }
        default:
          throw InvalidArgument("no closed form for this set");
      }
    } else if (m == "equilibrium") {
      est = cap_equilibrium(K, panels);
    } else if (m == "grid") {
      est = cap_dirichlet_grid(K, grid_h);
    } else {
      throw ParseError("unknown capacity method: " + m);
    }
    *value = est.value;
    if (m_value) *m_value = est.m_value;
    if (error_indicator) *error_indicator = est.error_indicator;
  });
}

bc_status bc_verify_file(const char* config_path, const char* out_dir,
                         const char* format, int* all_pass, char** report_dir) {
  if (!config_path || !out_dir || !format || !all_pass)
    return fail(BC_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    const SuiteResult res =
        run_suite(config_path, out_dir, parse_format(format));
    *all_pass = res.all_pass ? 1 : 0;
    if (report_dir) *report_dir = dup_string(res.out_dir);
  });
}

bc_status bc_verify_text(const char* config_text, const char* format,
                         int* all_pass, char** report) {
  if (!config_text || !format || !all_pass || !report)
    return fail(BC_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    const auto cfgs = parse_suite_text(config_text);
    if (cfgs.size() != 1)
      throw ParseError("bc_verify_text expects exactly one experiment");
    const VerificationReport rep = run_verification(cfgs[0]);
    *all_pass = rep.pass ? 1 : 0;
    *report = dup_string(emit_report(rep, parse_format(format)));
  });
}

}  // extern "C"
