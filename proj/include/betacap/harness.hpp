#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betacap/capacity.hpp"
#include "betacap/opmatrix.hpp"
#include "betacap/symbols.hpp"
#include "betacap/weights.hpp"

namespace betacap {

enum class ReportFormat { json, csv, text };
ReportFormat parse_format(const std::string& name);

// One end-to-end experiment: estimate beta(C_phi) per weight and compare
// against e^{-1/cap[phi(D)]} per capacity method.
struct ExperimentConfig {
  std::string name = "experiment";
  std::string symbol;
  std::vector<std::string> weights = {"hardy"};
  int N = 128;                       // starting truncation order
  std::vector<std::string> cap_methods = {"closed_form"};
  int M = 512;                       // equilibrium panels
  double h = 1.0 / 256.0;            // grid spacing
  double tol = 0.0;                  // 0 = default per method
};

struct BetaResult {
  std::string weights;
  int N = 0;  // truncation actually used after tail certification
  std::optional<BetaEstimate> estimate;
  std::string error;  // nonempty on failure
};

struct CapacityResult {
  std::string method;
  std::optional<CapacityEstimate> estimate;
  std::string error;
};

struct PairCheck {
  std::string weights;
  std::string method;
  double beta = 0.0;
  double cap = 0.0;
  double m_value = 0.0;
  double discrepancy = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct VerificationReport {
  ExperimentConfig config;
  std::string symbol_text;
  double sup_norm = 0.0;
  std::optional<Disk> image;
  std::vector<BetaResult> betas;
  std::vector<CapacityResult> capacities;
  std::vector<PairCheck> checks;
  std::vector<std::string> errors;
  bool pass = false;
  double runtime_seconds = 0.0;
};

VerificationReport run_verification(const ExperimentConfig& cfg);

// Serialize one report. JSON output is deterministic except for the
// fields under "meta".
std::string emit_report(const VerificationReport& r, ReportFormat format);

// Fixed header of the summary CSV.
extern const char* kSummaryCsvHeader;
std::string summary_csv(const std::vector<VerificationReport>& reports);

// Config file: INI-style sections, one per experiment, flat key=value lines.
// Keys: symbol, weights, N, cap_method, M, h, tol.
std::vector<ExperimentConfig> parse_suite(const std::string& path);
std::vector<ExperimentConfig> parse_suite_text(const std::string& text);

struct SuiteResult {
  std::vector<VerificationReport> reports;
  std::string out_dir;  // timestamped directory the reports went to
  bool all_pass = false;
};

// Runs all experiments (parallel across entries; thread count from
// BETACAP_THREADS), writes one report per entry plus summary.csv under a
// fresh timestamped subdirectory of out_root.
SuiteResult run_suite(const std::string& config_path,
                      const std::string& out_root, ReportFormat format);

}  // namespace betacap
