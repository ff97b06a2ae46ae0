// Command-line front end; talks to the betacap shared library through its
// C interface only.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "betacap/betacap.h"

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// Exit codes: 0 pass, 1 numerical failure, 2 config error.
int exit_code_for(bc_status st) {
  switch (st) {
    case BC_OK: return 0;
    case BC_ERR_PARSE:
    case BC_ERR_INVALID_ARG: return 2;
    default: return 1;
  }
}

int report_failure(bc_status st) {
  std::cerr << "error: " << bc_last_error() << "\n";
  return exit_code_for(st);
}

// Writes to <out_dir>/<name> when out_dir is set, else to stdout.
int deliver(const std::string& out_dir, const std::string& name,
            const std::string& payload) {
  if (out_dir.empty()) {
    std::cout << payload;
    return 0;
  }
  fs::create_directories(out_dir);
  const fs::path file = fs::path(out_dir) / name;
  std::ofstream os(file);
  if (!os) {
    std::cerr << "error: cannot write " << file << "\n";
    return 1;
  }
  os << payload;
  std::cout << file.string() << "\n";
  return 0;
}

struct WeightsHandle {
  bc_weights* p = nullptr;
  ~WeightsHandle() { bc_weights_free(p); }
};
struct SymbolHandle {
  bc_symbol* p = nullptr;
  ~SymbolHandle() { bc_symbol_free(p); }
};
struct SpectrumHandle {
  bc_spectrum* p = nullptr;
  ~SpectrumHandle() { bc_spectrum_free(p); }
};

int cmd_weights(const std::string& spec, int n_max, const std::string& out_dir,
                const std::string& format) {
  WeightsHandle w;
  if (bc_status st = bc_weights_create(spec.c_str(), n_max, &w.p); st != BC_OK)
    return report_failure(st);
  const int count = bc_weights_count(w.p);
  std::string payload;
  if (format == "json") {
    ordered_json j{{"spec", spec}, {"n_max", n_max}};
    auto& vals = j["values"] = ordered_json::array();
    for (int n = 0; n < count; ++n) {
      double v;
      bc_weights_get(w.p, n, &v);
      vals.push_back(v);
    }
    payload = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os.precision(17);
    os << "n,w_n\n";
    for (int n = 0; n < count; ++n) {
      double v;
      bc_weights_get(w.p, n, &v);
      os << n << "," << v << "\n";
    }
    payload = os.str();
  }
  return deliver(out_dir, format == "json" ? "weights.json" : "weights.csv",
                 payload);
}

int cmd_beta(const std::string& symbol, const std::string& weights, int N,
             const std::string& out_dir, const std::string& format) {
  SymbolHandle s;
  if (bc_status st = bc_symbol_parse(symbol.c_str(), &s.p); st != BC_OK)
    return report_failure(st);
  WeightsHandle w;
  if (bc_status st = bc_weights_create(weights.c_str(), N, &w.p); st != BC_OK)
    return report_failure(st);
  SpectrumHandle sp;
  if (bc_status st = bc_spectrum_compute(s.p, w.p, N, &sp.p); st != BC_OK)
    return report_failure(st);
  double beta, stderr_, r2;
  int lo, hi;
  if (bc_status st = bc_spectrum_beta(sp.p, &beta, &stderr_, &r2, &lo, &hi);
      st != BC_OK)
    return report_failure(st);

  std::string payload;
  if (format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "n,a_n,log_a_n\n";
    for (int n = 1; n <= bc_spectrum_count(sp.p); ++n) {
      double a;
      bc_spectrum_get(sp.p, n, &a);
      os << n << "," << a << "," << (a > 0 ? std::log(a) : -INFINITY) << "\n";
    }
    payload = os.str();
  } else if (format == "json") {
    ordered_json j{{"symbol", symbol}, {"weights", weights},   {"N", N},
                   {"beta", beta},     {"window", {lo, hi}},
                   {"slope_stderr", stderr_}, {"fit_r2", r2}};
    payload = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os.precision(12);
    os << "beta(" << symbol << ") on " << weights << " [N=" << N
       << "]: " << beta << "  (window " << lo << ".." << hi << ", stderr "
       << stderr_ << ", R2 " << r2 << ")\n";
    payload = os.str();
  }
  return deliver(out_dir,
                 format == "csv" ? "spectrum.csv"
                                 : (format == "json" ? "beta.json" : "beta.txt"),
                 payload);
}

int cmd_capacity(const std::string& set, const std::string& method, int M,
                 double h, const std::string& out_dir,
                 const std::string& format) {
  double value, m_value, err;
  if (bc_status st =
          bc_capacity(set.c_str(), method.c_str(), M, h, &value, &m_value, &err);
      st != BC_OK)
    return report_failure(st);
  std::string payload;
  if (format == "json") {
    ordered_json j{{"set", set},
                   {"method", method},
                   {"value", value},
                   {"m_value", m_value},
                   {"error_indicator", err}};
    payload = j.dump(2) + "\n";
  } else if (format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "set,method,cap,m_value,error_indicator\n"
       << set << "," << method << "," << value << "," << m_value << "," << err
       << "\n";
    payload = os.str();
  } else {
    std::ostringstream os;
    os.precision(12);
    os << "cap(" << set << ") by " << method << ": " << value
       << "  (m = e^{-1/cap} = " << m_value << ", err " << err << ")\n";
    payload = os.str();
  }
  return deliver(out_dir,
                 format == "csv" ? "capacity.csv"
                                 : (format == "json" ? "capacity.json"
                                                     : "capacity.txt"),
                 payload);
}

int cmd_verify(const std::string& config, const std::string& out_dir,
               const std::string& format) {
  int all_pass = 0;
  char* dir = nullptr;
  const std::string root = out_dir.empty() ? "reports" : out_dir;
  if (bc_status st = bc_verify_file(config.c_str(), root.c_str(),
                                    format.c_str(), &all_pass, &dir);
      st != BC_OK)
    return report_failure(st);
  std::cout << "reports written to " << dir << "\n"
            << (all_pass ? "PASS" : "FAIL") << "\n";
  bc_string_free(dir);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approximation-number decay vs Green capacity toolkit"};
  app.require_subcommand(1);
  std::string out_dir, format = "text";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "output directory (default: stdout)");
    sub->add_option("--format", format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
  };

  std::string spec, symbol = "dil(0.5)", weights = "hardy", set,
              method = "closed_form", config;
  int n_max = 128, N = 128, M = 512;
  double h = 1.0 / 256.0;

  auto* c_weights = app.add_subcommand("weights", "coefficient weights w_n");
  c_weights->add_option("spec", spec, "hardy|bergman|dirichlet|alpha(a)")
      ->required();
  c_weights->add_option("n_max", n_max, "highest index")->required();
  add_common(c_weights);

  auto* c_beta = app.add_subcommand("beta", "singular value decay rate");
  c_beta->add_option("symbol", symbol, "e.g. affine(0.3,0.4)")->required();
  c_beta->add_option("--weights", weights, "weight spec (default hardy)");
  c_beta->add_option("--N", N, "truncation order");
  add_common(c_beta);

  auto* c_cap = app.add_subcommand("capacity", "Green capacity of a set");
  c_cap->add_option("set", set, "disk(b,a)|phdisk(w,r)|segment(x0,x1)|image(sym)")
      ->required();
  c_cap->add_option("--method", method, "closed_form|equilibrium|grid");
  c_cap->add_option("--M", M, "equilibrium panel count");
  c_cap->add_option("--grid-h", h, "grid spacing");
  add_common(c_cap);

  auto* c_verify = app.add_subcommand("verify", "run a verification suite");
  c_verify->add_option("config", config, "experiment config file")->required();
  add_common(c_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (c_weights->parsed()) return cmd_weights(spec, n_max, out_dir, format);
  if (c_beta->parsed()) return cmd_beta(symbol, weights, N, out_dir, format);
  if (c_cap->parsed()) return cmd_capacity(set, method, M, h, out_dir, format);
  if (c_verify->parsed()) return cmd_verify(config, out_dir, format);
  return 2;
}
