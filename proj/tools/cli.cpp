#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "subfourier/subfourier.hpp"
#include "verify.hpp"

namespace subfourier::cli {

namespace {

using nlohmann::json;

enum class StateKind { Coherent, Cat, Compass };
enum class OutputFormat { Csv, Json };

struct RunConfig {
  StateKind state_kind = StateKind::Cat;
  double alpha = 2.0;
  double sigma = 1.0;
  double k = 0.0;
  UnitOptions units;
  OutputFormat output_format = OutputFormat::Json;
  std::string output_path;  // empty: standard output
  std::uint64_t seed = 20070209;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, StateKind> kStateNames = {
    {"coherent", StateKind::Coherent}, {"cat", StateKind::Cat}, {"compass", StateKind::Compass}};
const std::map<std::string, UnitProfile> kUnitNames = {{"natural", UnitProfile::Natural},
                                                       {"thz", UnitProfile::TimeFrequency}};
const std::map<std::string, OutputFormat> kFormatNames = {{"csv", OutputFormat::Csv},
                                                          {"json", OutputFormat::Json}};

std::string_view state_name(StateKind kind) {
  switch (kind) {
    case StateKind::Coherent: return "coherent";
    case StateKind::Cat: return "cat";
    case StateKind::Compass: return "compass";
  }
  return "";
}

void add_common_flags(CLI::App& cmd, RunConfig& cfg, OutputFormat default_format) {
  cfg.output_format = default_format;
  cmd.add_option("--state", cfg.state_kind, "coherent | cat | compass")
      ->transform(CLI::CheckedTransformer(kStateNames, CLI::ignore_case));
  cmd.add_option("--alpha", cfg.alpha, "lobe displacement (>= 0)");
  cmd.add_option("--sigma", cfg.sigma, "Gaussian width (> 0)");
  cmd.add_option("--k", cfg.k, "carrier wavenumber, enters as exp(-i k x)");
  cmd.add_option("--units", cfg.units.profile, "natural | thz")
      ->transform(CLI::CheckedTransformer(kUnitNames, CLI::ignore_case));
  cmd.add_flag("--units-cyclic", cfg.units.cyclic, "report thz frequencies divided by 2 pi");
  cmd.add_option("--format", cfg.output_format, "csv | json")
      ->transform(CLI::CheckedTransformer(kFormatNames, CLI::ignore_case));
  cmd.add_option("--out", cfg.output_path, "output file (default: standard output)");
  cmd.add_option("--seed", cfg.seed, "seed for randomized sweeps");
}

void validate(const RunConfig& cfg) {
  if (!std::isfinite(cfg.sigma) || !(cfg.sigma > 0.0)) throw UsageError("--sigma must be > 0");
  if (!std::isfinite(cfg.alpha) || cfg.alpha < 0.0) throw UsageError("--alpha must be >= 0");
  if (!std::isfinite(cfg.k)) throw UsageError("--k must be finite");
}

SuperpositionState build_state(const RunConfig& cfg) {
  switch (cfg.state_kind) {
    case StateKind::Coherent: return normalize(make_coherent(cfg.alpha, cfg.sigma, cfg.k));
    case StateKind::Cat: return normalize(make_cat(cfg.alpha, cfg.sigma, cfg.k));
    case StateKind::Compass: return normalize(make_compass(cfg.alpha, cfg.sigma));
  }
  throw UsageError("unknown state");
}

// Writes to --out when given, otherwise to the caller's stream.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output_path, std::ios::binary);
  if (!file) throw UsageError("cannot open --out " + cfg.output_path);
  file << text;
}

std::string csv_cell(std::optional<double> v) { return v ? format_double(*v) : "NA"; }

// ---- report ---------------------------------------------------------------

struct ReportFlags {
  bool require_root = false;
  std::optional<double> k_max;
  std::optional<double> measured_delta;
  std::optional<double> measured_width;
};

int cmd_report(const RunConfig& cfg, const ReportFlags& flags, std::ostream& out) {
  validate(cfg);
  const SuperpositionState state = build_state(cfg);
  const UncertaintyReport rep = uncertainty_report(state);
  std::optional<OrthogonalityResult> root;
  try {
    root = subfourier_ratio(state, flags.k_max.value_or(default_k_max(state)));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoRoot) throw;
  }
  const double lf = length_factor(cfg.units);
  const double kf = wavenumber_factor(cfg.units);

  std::optional<MeasuredComparison> measured;
  if (flags.measured_delta || flags.measured_width) {
    if (!flags.measured_delta || !flags.measured_width) {
      throw UsageError("--measured-delta and --measured-width must be given together");
    }
    measured = compare_measured(*flags.measured_delta, *flags.measured_width);
  }

  std::string text;
  if (cfg.output_format == OutputFormat::Json) {
    json j;
    j["state"] = state_name(cfg.state_kind);
    j["alpha"] = cfg.alpha;
    j["sigma"] = cfg.sigma;
    j["k"] = cfg.k;
    j["units"] = profile_name(cfg.units.profile);
    j["length_unit"] = length_unit(cfg.units);
    j["wavenumber_unit"] = wavenumber_unit(cfg.units);
    j["delta_x"] = rep.delta_x * lf;
    j["delta_k"] = rep.delta_k * kf;
    j["delta_p"] = rep.delta_p * kf;
    j["product"] = rep.delta_x * lf * rep.delta_p * kf;
    j["mean_x"] = rep.mean_x * lf;
    j["mean_p"] = rep.mean_p * kf;
    if (root) {
      j["delta_star"] = root->delta_star * kf;
      j["residual"] = root->residual;
      j["ratio"] = *root->ratio;
    } else {
      j["delta_star"] = "no_root";
      j["residual"] = nullptr;
      j["ratio"] = nullptr;
    }
    j["subfourier"] = root ? root->subfourier() : false;
    if (measured) {
      j["measured"] = {{"delta", measured->delta},
                       {"width", measured->width},
                       {"ratio", measured->ratio},
                       {"subfourier", measured->subfourier}};
    }
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "state,alpha,sigma,k,units,delta_x,delta_k,delta_p,product,mean_x,mean_p,delta_star,"
          "residual,ratio,subfourier";
    if (measured) os << ",measured_delta,measured_width,measured_ratio,measured_subfourier";
    os << '\n'
       << state_name(cfg.state_kind) << ',' << format_double(cfg.alpha) << ','
       << format_double(cfg.sigma) << ',' << format_double(cfg.k) << ','
       << profile_name(cfg.units.profile) << ',' << format_double(rep.delta_x * lf) << ','
       << format_double(rep.delta_k * kf) << ',' << format_double(rep.delta_p * kf) << ','
       << format_double(rep.delta_x * lf * rep.delta_p * kf) << ','
       << format_double(rep.mean_x * lf) << ',' << format_double(rep.mean_p * kf) << ','
       << (root ? format_double(root->delta_star * kf) : "NA") << ','
       << (root ? format_double(root->residual) : "NA") << ','
       << (root ? format_double(*root->ratio) : "NA") << ','
       << ((root && root->subfourier()) ? "true" : "false");
    if (measured) {
      os << ',' << format_double(measured->delta) << ',' << format_double(measured->width) << ','
         << format_double(measured->ratio) << ',' << (measured->subfourier ? "true" : "false");
    }
    os << '\n';
    text = os.str();
  }
  emit(cfg, out, text);
  if (!root && flags.require_root) return kRootAbsent;
  return kOk;
}

// ---- scan -----------------------------------------------------------------

struct ScanFlags {
  double ratio_min = 0.1;
  double ratio_max = 6.0;
  int steps = 60;
};

int cmd_scan(const RunConfig& cfg, const ScanFlags& flags, std::ostream& out) {
  if (!std::isfinite(cfg.sigma) || !(cfg.sigma > 0.0)) throw UsageError("--sigma must be > 0");
  const std::vector<ScanRow> rows =
      regime_scan(flags.ratio_min, flags.ratio_max, cfg.sigma, flags.steps);
  const double lf = length_factor(cfg.units);
  const double kf = wavenumber_factor(cfg.units);
  auto scaled = [](std::optional<double> v, double f) -> std::optional<double> {
    if (v) return *v * f;
    return std::nullopt;
  };

  std::string text;
  if (cfg.output_format == OutputFormat::Csv) {
    std::ostringstream os;
    os << "alpha_over_sigma,delta_x,delta_k,delta_star,ratio,product,subfourier\n";
    for (const auto& r : rows) {
      os << format_double(r.alpha_over_sigma) << ',' << format_double(r.delta_x * lf) << ','
         << format_double(r.delta_k * kf) << ',' << csv_cell(scaled(r.delta_star, kf)) << ','
         << csv_cell(r.ratio) << ',' << format_double(r.product * lf * kf) << ','
         << (r.subfourier ? "true" : "false") << '\n';
    }
    text = os.str();
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      json j;
      j["alpha_over_sigma"] = r.alpha_over_sigma;
      j["delta_x"] = r.delta_x * lf;
      j["delta_k"] = r.delta_k * kf;
      j["delta_star"] = r.delta_star ? json(*r.delta_star * kf) : json(nullptr);
      j["ratio"] = r.ratio ? json(*r.ratio) : json(nullptr);
      j["product"] = r.product * lf * kf;
      j["subfourier"] = r.subfourier;
      arr.push_back(std::move(j));
    }
    text = arr.dump(2) + "\n";
  }
  emit(cfg, out, text);
  return kOk;
}

// ---- wigner ---------------------------------------------------------------

struct WignerFlags {
  std::optional<double> xmin, xmax, kmin, kmax;
  std::size_t nx = 256;
  std::size_t nk = 256;
};

int cmd_wigner(const RunConfig& cfg, const WignerFlags& flags, std::ostream& out) {
  validate(cfg);
  const SuperpositionState state = build_state(cfg);
  const PhaseSpaceWindow support = wigner_support(state);
  const WignerGrid w =
      wigner_grid(state, flags.xmin.value_or(support.x_min), flags.xmax.value_or(support.x_max),
                  flags.nx, flags.kmin.value_or(support.k_min), flags.kmax.value_or(support.k_max),
                  flags.nk);
  std::string text;
  if (cfg.output_format == OutputFormat::Json) {
    json j;
    j["sum_w_dxdk"] = w.riemann_sum();
    j["max_imag_residue"] = w.max_imag_residue;
    json xs = json::array(), ks = json::array(), rows = json::array();
    for (std::size_t i = 0; i < w.nx; ++i) xs.push_back(w.x(i));
    for (std::size_t jk = 0; jk < w.nk; ++jk) ks.push_back(w.k(jk));
    for (std::size_t i = 0; i < w.nx; ++i) {
      json row = json::array();
      for (std::size_t jk = 0; jk < w.nk; ++jk) row.push_back(w.value(i, jk));
      rows.push_back(std::move(row));
    }
    j["x"] = std::move(xs);
    j["k"] = std::move(ks);
    j["w"] = std::move(rows);
    text = j.dump() + "\n";
  } else {
    std::string s;
    s.reserve(w.nx * w.nk * 64);
    s += "# sum_w_dxdk=" + format_double(w.riemann_sum()) + "\n";
    s += "# max_imag_residue=" + format_double(w.max_imag_residue) + "\n";
    s += "x,k,w\n";
    for (std::size_t i = 0; i < w.nx; ++i) {
      const std::string x = format_double(w.x(i));
      for (std::size_t jk = 0; jk < w.nk; ++jk) {
        s += x;
        s += ',';
        s += format_double(w.k(jk));
        s += ',';
        s += format_double(w.value(i, jk));
        s += '\n';
      }
    }
    text = std::move(s);
  }
  emit(cfg, out, text);
  return kOk;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, double perturbation, std::ostream& out) {
  VerifyOptions opts;
  opts.seed = cfg.seed;
  opts.kernel_perturbation = perturbation;
  const VerifyReport report = run_verification(opts);
  std::ostringstream os;
  print_verification(report, os);
  emit(cfg, out, os.str());
  return report.all_passed() ? kOk : kVerificationFailed;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::GridTooCoarse:
      return kGrid;
    case ErrorKind::NonPositiveSigma:
    case ErrorKind::NonPositiveAlpha:
    case ErrorKind::NonPositiveLambda:
    case ErrorKind::NonFiniteParameter:
    case ErrorKind::EmptyState:
    case ErrorKind::InvalidRange:
      return kUsage;
    case ErrorKind::NoRoot:
      return kRootAbsent;
    default:
      return kNumeric;
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian superposition states: uncertainty, orthogonality shifts, sub-Fourier ratios",
               "subfourier"};
  app.require_subcommand(1);

  RunConfig report_cfg, scan_cfg, wigner_cfg, verify_cfg;
  ReportFlags report_flags;
  ScanFlags scan_flags;
  WignerFlags wigner_flags;
  double perturbation = 0.0;

  auto* report = app.add_subcommand("report", "uncertainty report and orthogonality shift");
  add_common_flags(*report, report_cfg, OutputFormat::Json);
  report->add_flag("--require-root", report_flags.require_root, "exit 2 when no orthogonal shift exists");
  report->add_option("--k-max", report_flags.k_max, "upper end of the shift search");
  report->add_option("--measured-delta", report_flags.measured_delta,
                     "measured shift to compare against --measured-width (same unit)");
  report->add_option("--measured-width", report_flags.measured_width, "measured spectral width");

  auto* scan = app.add_subcommand("scan", "sub-Fourier regime scan over alpha/sigma for cats");
  add_common_flags(*scan, scan_cfg, OutputFormat::Csv);
  scan->add_option("--ratio-min,--alpha-over-sigma-min", scan_flags.ratio_min, "smallest alpha/sigma");
  scan->add_option("--ratio-max,--alpha-over-sigma-max", scan_flags.ratio_max, "largest alpha/sigma");
  scan->add_option("--steps,--alpha-over-sigma-steps", scan_flags.steps, "grid points (>= 2)");

  auto* wigner = app.add_subcommand("wigner", "Wigner function on a phase-space grid");
  add_common_flags(*wigner, wigner_cfg, OutputFormat::Csv);
  wigner->add_option("--xmin", wigner_flags.xmin);
  wigner->add_option("--xmax", wigner_flags.xmax);
  wigner->add_option("--nx", wigner_flags.nx);
  wigner->add_option("--kmin", wigner_flags.kmin);
  wigner->add_option("--kmax", wigner_flags.kmax);
  wigner->add_option("--nk", wigner_flags.nk);

  auto* verify = app.add_subcommand("verify", "closed forms against the quadrature oracle");
  add_common_flags(*verify, verify_cfg, OutputFormat::Csv);
  verify->add_option("--perturb-kernel", perturbation,
                     "scale closed-form values by (1 + value) before comparing (harness check)");

  std::vector<const char*> argv;
  argv.push_back("subfourier");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*report) return cmd_report(report_cfg, report_flags, out);
    if (*scan) return cmd_scan(scan_cfg, scan_flags, out);
    if (*wigner) return cmd_wigner(wigner_cfg, wigner_flags, out);
    if (*verify) return cmd_verify(verify_cfg, perturbation, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}

}  // namespace subfourier::cli
