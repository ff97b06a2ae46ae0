#include "betacap/harness.hpp"

#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "betacap/errors.hpp"

namespace betacap {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

const char* kSummaryCsvHeader =
    "symbol,weight,beta,cap_method,cap,m_value,discrepancy,pass";

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "text") return ReportFormat::text;
  throw ParseError("unknown format '" + name + "' (json|csv|text)");
}

namespace {

constexpr double kTailTarget = 1e-12 * 1e-10;  // certify down to the window floor
constexpr int kMaxTruncation = 1024;

BetaResult beta_for_weight(const Symbol& phi, const std::string& weight_text,
                           int start_N) {
  BetaResult res;
  res.weights = weight_text;
  try {
    const WeightSpec spec = WeightSpec::parse(weight_text);
    int N = std::max(start_N, 8);
    while (true) {
      const CoefWeights w = coef_weights(spec, N);
      if (truncation_tail_bound(phi, w, N) <= kTailTarget || N >= kMaxTruncation) {
        res.N = N;
        const CompositionMatrix m = assemble_matrix(phi, w, N);
        res.estimate = estimate_beta(approximation_numbers(m));
        break;
      }
      N *= 2;
    }
  } catch (const std::exception& e) {
    res.error = e.what();
  }
  return res;
}

CapacityResult capacity_for_method(const Symbol& phi, const std::string& method,
                                   int M, double h) {
  CapacityResult res;
  res.method = method;
  try {
    if (method == "closed_form") {
      const Disk d = phi.image_disk();
      res.estimate = cap_euclid_disk(std::abs(d.center), d.radius);
    } else {
      const CompactSetSpec K =
          phi.fractional_linear()
              ? CompactSetSpec::euclid(phi.image_disk().center,
                                       phi.image_disk().radius)
              : CompactSetSpec::from_symbol(phi);
      if (method == "equilibrium") {
        res.estimate = cap_equilibrium(K, M);
      } else if (method == "grid") {
        res.estimate = cap_dirichlet_grid(K, h);
      } else {
        throw ParseError("unknown capacity method '" + method + "'");
      }
    }
  } catch (const std::exception& e) {
    res.error = e.what();
  }
  return res;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

VerificationReport run_verification(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.config = cfg;
  try {
    if (cfg.weights.empty() || cfg.cap_methods.empty())
      throw InvalidArgument("need at least one weight and one capacity method");
    const Symbol phi = Symbol::parse(cfg.symbol);
    rep.symbol_text = phi.text();
    rep.sup_norm = phi.sup_norm();
    if (!(rep.sup_norm < 1.0))
      throw InvalidArgument(
          "identity experiments require sup norm < 1 strictly");
    if (phi.fractional_linear()) rep.image = phi.image_disk();

    for (const auto& w : cfg.weights)
      rep.betas.push_back(beta_for_weight(phi, w, cfg.N));
    for (const auto& m : cfg.cap_methods)
      rep.capacities.push_back(capacity_for_method(phi, m, cfg.M, cfg.h));

    bool all_checks = true;
    for (const auto& b : rep.betas) {
      if (!b.estimate) {
        all_checks = false;
        continue;
      }
      for (const auto& c : rep.capacities) {
        if (!c.estimate) {
          all_checks = false;
          continue;
        }
        PairCheck pc;
        pc.weights = b.weights;
        pc.method = c.method;
        pc.beta = b.estimate->beta;
        pc.cap = c.estimate->value;
        pc.m_value = c.estimate->m_value;
        pc.discrepancy = std::abs(pc.beta - pc.m_value) / pc.m_value;
        pc.tol = cfg.tol > 0.0 ? cfg.tol
                               : (c.method == "closed_form" ? 0.01 : 0.02);
        pc.pass = pc.discrepancy <= pc.tol;
        all_checks = all_checks && pc.pass;
        rep.checks.push_back(pc);
      }
    }
    for (const auto& b : rep.betas)
      if (!b.error.empty()) rep.errors.push_back("beta[" + b.weights + "]: " + b.error);
    for (const auto& c : rep.capacities)
      if (!c.error.empty()) rep.errors.push_back("cap[" + c.method + "]: " + c.error);
    rep.pass = all_checks && rep.errors.empty() && !rep.checks.empty();
  } catch (const std::exception& e) {
    rep.errors.push_back(e.what());
    rep.pass = false;
  }
  rep.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

namespace {

ordered_json report_json(const VerificationReport& r) {
  ordered_json j;
  j["schema"] = "betacap-report-v1";
  j["config"] = {{"name", r.config.name},
                 {"symbol", r.config.symbol},
                 {"weights", r.config.weights},
                 {"N", r.config.N},
                 {"cap_method", r.config.cap_methods},
                 {"M", r.config.M},
                 {"h", r.config.h},
                 {"tol", r.config.tol}};
  j["symbol"] = {{"text", r.symbol_text}, {"sup_norm", r.sup_norm}};
  if (r.image) {
    j["symbol"]["image_disk"] = {{"center_re", r.image->center.real()},
                                 {"center_im", r.image->center.imag()},
                                 {"radius", r.image->radius}};
  } else {
    j["symbol"]["image_disk"] = nullptr;
  }
  j["beta"] = ordered_json::array();
  for (const auto& b : r.betas) {
    ordered_json e{{"weights", b.weights}, {"N", b.N}};
    if (b.estimate) {
      e["beta"] = b.estimate->beta;
      e["window"] = {b.estimate->n_lo, b.estimate->n_hi};
      e["slope_stderr"] = b.estimate->slope_stderr;
      e["fit_r2"] = b.estimate->fit_r2;
    } else {
      e["error"] = b.error;
    }
    j["beta"].push_back(e);
  }
  j["capacity"] = ordered_json::array();
  for (const auto& c : r.capacities) {
    ordered_json e{{"method", c.method}};
    if (c.estimate) {
      e["value"] = c.estimate->value;
      e["m_value"] = c.estimate->m_value;
      e["error_indicator"] = c.estimate->error_indicator;
    } else {
      e["error"] = c.error;
    }
    j["capacity"].push_back(e);
  }
  j["checks"] = ordered_json::array();
  for (const auto& pc : r.checks) {
    j["checks"].push_back({{"weights", pc.weights},
                           {"method", pc.method},
                           {"beta", pc.beta},
                           {"cap", pc.cap},
                           {"m_value", pc.m_value},
                           {"discrepancy", pc.discrepancy},
                           {"tol", pc.tol},
                           {"pass", pc.pass}});
  }
  j["errors"] = r.errors;
  j["pass"] = r.pass;
  j["meta"] = {{"runtime_seconds", r.runtime_seconds}};
  return j;
}

std::string report_csv(const VerificationReport& r) {
  std::ostringstream os;
  os << kSummaryCsvHeader << "\n";
  for (const auto& pc : r.checks) {
    os << r.config.symbol << "," << pc.weights << "," << format_double(pc.beta)
       << "," << pc.method << "," << format_double(pc.cap) << ","
       << format_double(pc.m_value) << "," << format_double(pc.discrepancy)
       << "," << (pc.pass ? "true" : "false") << "\n";
  }
  return os.str();
}

std::string report_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "experiment: " << r.config.name << "\n";
  os << "symbol:     " << r.config.symbol << " (sup norm "
     << format_double(r.sup_norm) << ")\n";
  if (r.image)
    os << "image disk: center " << format_double(r.image->center.real())
       << (r.image->center.imag() < 0 ? "" : "+")
       << format_double(r.image->center.imag()) << "i, radius "
       << format_double(r.image->radius) << "\n";
  for (const auto& b : r.betas) {
    os << "beta[" << b.weights << ", N=" << b.N << "]: ";
    if (b.estimate)
      os << format_double(b.estimate->beta) << " (window " << b.estimate->n_lo
         << ".." << b.estimate->n_hi << ", R2 "
         << format_double(b.estimate->fit_r2) << ")";
    else
      os << "FAILED: " << b.error;
    os << "\n";
  }
  for (const auto& c : r.capacities) {
    os << "cap[" << c.method << "]: ";
    if (c.estimate)
      os << format_double(c.estimate->value) << " (m "
         << format_double(c.estimate->m_value) << ", err "
         << format_double(c.estimate->error_indicator) << ")";
    else
      os << "FAILED: " << c.error;
    os << "\n";
  }
  for (const auto& pc : r.checks) {
    os << "check[" << pc.weights << " vs " << pc.method
       << "]: |beta - m|/m = " << format_double(pc.discrepancy) << " (tol "
       << format_double(pc.tol) << ") " << (pc.pass ? "PASS" : "FAIL") << "\n";
  }
  for (const auto& e : r.errors) os << "error: " << e << "\n";
  os << "result: " << (r.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace

std::string emit_report(const VerificationReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: return report_json(r).dump(2) + "\n";
    case ReportFormat::csv: return report_csv(r);
    case ReportFormat::text: return report_text(r);
  }
  return {};
}

std::string summary_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << kSummaryCsvHeader << "\n";
  for (const auto& r : reports) {
    const std::string body = report_csv(r);
    os << body.substr(body.find('\n') + 1);
  }
  return os.str();
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return {};
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

void apply_key(ExperimentConfig& cfg, const std::string& key,
               const std::string& value) {
  try {
    if (key == "symbol") {
      cfg.symbol = value;
    } else if (key == "weights") {
      cfg.weights = split_list(value);
    } else if (key == "N") {
      cfg.N = std::stoi(value);
    } else if (key == "cap_method") {
      cfg.cap_methods = split_list(value);
    } else if (key == "M") {
      cfg.M = std::stoi(value);
    } else if (key == "h") {
      cfg.h = std::stod(value);
    } else if (key == "tol") {
      cfg.tol = std::stod(value);
    } else {
      throw ParseError("unknown config key '" + key + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad value for config key '" + key + "': " + value);
  }
}

}  // namespace

std::vector<ExperimentConfig> parse_suite_text(const std::string& text) {
  std::vector<ExperimentConfig> out;
  std::istringstream in(text);
  std::string line;
  ExperimentConfig cur;
  bool have_section = false;
  int lineno = 0;
  auto flush = [&]() {
    if (have_section) {
      if (cur.symbol.empty())
        throw ParseError("experiment '" + cur.name + "' is missing key 'symbol'");
      out.push_back(cur);
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    if (t.front() == '[' && t.back() == ']') {
      flush();
      cur = ExperimentConfig{};
      cur.name = trim(t.substr(1, t.size() - 2));
      have_section = true;
      continue;
    }
    const size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected key=value, got '" + t + "'");
    if (!have_section) {
      cur.name = "experiment";
      have_section = true;
    }
    apply_key(cur, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  flush();
  return out;
}

std::vector<ExperimentConfig> parse_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_suite_text(ss.str());
}

namespace {

std::string timestamped_dir(const std::string& root) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream os;
  os << "run-" << std::put_time(&tm, "%Y%m%d-%H%M%S");
  std::string base = (fs::path(root) / os.str()).string();
  std::string dir = base;
  for (int k = 1; fs::exists(dir); ++k) dir = base + "-" + std::to_string(k);
  fs::create_directories(dir);
  return dir;
}

int thread_count(size_t jobs) {
  if (const char* env = std::getenv("BETACAP_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return std::min<size_t>(t, jobs);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min<size_t>(hw ? hw : 1, jobs));
}

const char* format_ext(ReportFormat f) {
  switch (f) {
    case ReportFormat::json: return ".json";
    case ReportFormat::csv: return ".csv";
    case ReportFormat::text: return ".txt";
  }
  return ".out";
}

}  // namespace

SuiteResult run_suite(const std::string& config_path,
                      const std::string& out_root, ReportFormat format) {
  const std::vector<ExperimentConfig> configs = parse_suite(config_path);
  SuiteResult result;
  result.reports.resize(configs.size());
  if (!configs.empty()) {
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (size_t i = next.fetch_add(1); i < configs.size();
           i = next.fetch_add(1))
        result.reports[i] = run_verification(configs[i]);
    };
    std::vector<std::thread> pool;
    const int T = thread_count(configs.size());
    for (int t = 1; t < T; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }
  result.out_dir = timestamped_dir(out_root);
  for (size_t i = 0; i < result.reports.size(); ++i) {
    std::string stem = result.reports[i].config.name;
    for (char& ch : stem)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_')
        ch = '_';
    fs::path file = fs::path(result.out_dir) /
                    (std::to_string(i) + "_" + stem + format_ext(format));
    std::ofstream(file) << emit_report(result.reports[i], format);
  }
  std::ofstream(fs::path(result.out_dir) / "summary.csv")
      << summary_csv(result.reports);
  result.all_pass = true;
  for (const auto& r : result.reports) result.all_pass = result.all_pass && r.pass;
  return result;
}

}  // namespace betacap
