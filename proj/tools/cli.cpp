#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <ostream>

#include <CLI11.hpp>

#include "ptrobin/io.hpp"
#include "ptrobin/metric.hpp"
#include "ptrobin/roots.hpp"
#include "ptrobin/spectrum.hpp"
#include "ptrobin/verify.hpp"

namespace ptrobin::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_plain(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

std::optional<double> parse_real(std::string_view text) {
  std::string_view s = trim(text);
  const auto at = s.find("pi");
  if (at == std::string_view::npos) return parse_plain(s);

  std::string_view head = trim(s.substr(0, at));
  std::string_view tail = trim(s.substr(at + 2));
  double factor = 1.0;
  if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
  if (head == "-")
    factor = -1.0;
  else if (!head.empty() && head != "+") {
    const auto f = parse_plain(head);
    if (!f) return std::nullopt;
    factor = *f;
  }
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') return std::nullopt;
    const auto q = parse_plain(tail.substr(1));
    if (!q || *q == 0.0) return std::nullopt;
    divisor = *q;
  }
  return factor * std::numbers::pi / divisor;
}

std::vector<double> Range::values() const {
  std::vector<double> v(steps);
  for (std::size_t i = 0; i < steps; ++i)
    v[i] = i + 1 == steps ? stop : start + (stop - start) * double(i) / double(steps - 1);
  return v;
}

std::optional<Range> parse_range(std::string_view text) {
  const auto first = text.find(':');
  if (first == std::string_view::npos) return std::nullopt;
  const auto second = text.find(':', first + 1);
  if (second == std::string_view::npos) return std::nullopt;
  const auto start = parse_real(text.substr(0, first));
  const auto stop = parse_real(text.substr(first + 1, second - first - 1));
  const std::string_view steps_text = trim(text.substr(second + 1));
  std::size_t steps = 0;
  const auto [ptr, ec] =
      std::from_chars(steps_text.data(), steps_text.data() + steps_text.size(), steps);
  if (!start || !stop || ec != std::errc() || ptr != steps_text.data() + steps_text.size() ||
      steps < 2)
    return std::nullopt;
  return Range{*start, *stop, steps};
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double alpha = 0.0;
  double beta = 0.0;
  std::string d_text = "pi";
  std::size_t n = 4096;
  std::optional<std::size_t> j_max;
  std::optional<double> k_max;
  std::optional<double> tol;
  std::uint64_t seed = SuiteOptions{}.seed;
  std::string format;
  std::string out_path;

  double d() const {
    const auto v = parse_real(d_text);
    if (!v || !(*v > 0.0)) throw UsageError("--d must be a positive number or a multiple of pi");
    return *v;
  }
  ModelParams model() const {
    ModelParams p{alpha, beta, d()};
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return p;
  }
};

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty() || cfg.out_path == "-") {
    out << text << std::flush;
    return;
  }
  write_text(cfg.out_path, text);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool has_partner(const std::vector<GeneralEigenvalue>& all, cplx e) {
  for (const auto& o : all)
    if (std::abs(o.k2 - std::conj(e)) <= 1e-9 * (1.0 + std::abs(e))) return true;
  return false;
}

/// Closed-form rows j = 0..j_max (beta = 0).
std::vector<SpectrumRow> closed_form_rows(const ModelParams& p, std::size_t j_max,
                                          std::optional<double> k_max) {
  std::vector<SpectrumRow> rows;
  for (std::size_t j = 0; j <= j_max; ++j) {
    const double k = j == 0 ? std::abs(p.alpha) : wavenumber(j, p.d);
    if (k_max && k > *k_max) continue;
    rows.push_back({static_cast<long long>(j), eigenvalue(j, p), eigen_residual(k, p), {}});
  }
  return rows;
}

std::vector<SpectrumRow> root_rows(const ModelParams& p, double k_max, std::ostream& err) {
  const RootSearchResult rf = general_eigenvalues(p, k_max);
  std::vector<SpectrumRow> rows;
  for (std::size_t i = 0; i < rf.eigenvalues.size(); ++i) {
    const auto& e = rf.eigenvalues[i];
    const bool resolved = e.status == RootStatus::resolved;
    if (!resolved)
      err << "warning: unresolved eigenvalue near k2 = " << format_double(e.k2.real()) << " + "
          << format_double(e.k2.imag()) << "i\n";
    else if (e.k2.imag() != 0.0 && !has_partner(rf.eigenvalues, e.k2))
      err << "warning: no conjugate partner within 1e-9 for k2 = "
          << format_double(e.k2.real()) << " + " << format_double(e.k2.imag()) << "i\n";
    rows.push_back({static_cast<long long>(i), e.k2, e.residual,
                    resolved ? "resolved" : "unresolved"});
  }
  return rows;
}

double default_k_max(const RunConfig& cfg, double d) {
  if (cfg.k_max) return *cfg.k_max;
  return (static_cast<double>(cfg.j_max.value_or(10)) + 0.5) * std::numbers::pi / d;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelParams p = cfg.model();
  std::vector<SpectrumRow> rows;
  if (p.beta == 0.0) {
    std::size_t j_max = cfg.j_max.value_or(10);
    if (cfg.k_max && !cfg.j_max)
      j_max = static_cast<std::size_t>(std::floor(*cfg.k_max * p.d / std::numbers::pi));
    rows = closed_form_rows(p, j_max, cfg.j_max ? std::nullopt : cfg.k_max);
  } else {
    rows = root_rows(p, default_k_max(cfg, p.d), err);
  }
  emit(cfg, cfg.format == "json" ? spectrum_json(rows) : spectrum_csv(rows), out);
  return kOk;
}

int cmd_metric_apply(const RunConfig& cfg, bool d_given, const std::string& in_path,
                     const std::string& method, std::ostream& out, std::ostream& err) {
  if (cfg.format == "csv") throw UsageError("metric apply writes the grid-function JSON format only");
  GridFunction psi = [&] {
    try {
      return read_grid_function(in_path);
    } catch (const FormatError& e) {
      throw UsageError(e.what());
    }
  }();
  const double d = psi.grid().length();
  if (d_given) {
    const double flag_d = cfg.d();
    if (std::abs(flag_d - d) > 1e-12 * std::max(1.0, d))
      throw UsageError("--d " + format_double(flag_d) + " does not match d = " +
                       format_double(d) + " in " + in_path);
  }
  const MetricConfig mc{cfg.alpha, d, cfg.j_max.value_or(1000)};
  GridFunction result = psi;
  if (method == "series") {
    try {
      const SeriesApplication s = theta_apply_series(psi, mc);
      err << "series tail norm: " << format_double(s.tail_norm) << "\n";
      result = s.value;
    } catch (const DegenerateAlphaError& e) {
      err << "error: alpha d / pi = " << e.flag().multiple
          << " is a non-zero integer; the spectral series diverges there. "
             "Use --method closed.\n";
      return kDegenerate;
    }
  } else {
    result = theta_apply_closed(psi, mc);
  }
  emit(cfg, grid_function_to_json(result), out);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, bool alpha_given, bool beta_given,
               const std::vector<std::string>& suites, std::ostream& out, std::ostream& err) {
  SuiteOptions o;
  o.d = cfg.d();
  o.n = cfg.n;
  if (alpha_given) o.alphas = {cfg.alpha};
  if (beta_given) o.betas = {0.0, cfg.beta};
  if (cfg.j_max) o.j_max = *cfg.j_max;
  if (cfg.tol) o.quadrature_tolerance = *cfg.tol;
  o.seed = cfg.seed;
  for (const auto& s : suites) {
    std::string_view rest = s;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      o.suites.emplace_back(trim(rest.substr(0, comma)));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  }
  VerificationReport report;
  try {
    report = run_all(o);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::string text;
  if (cfg.format == "json") {
    text = report_json(report, utc_timestamp());
  } else if (cfg.format == "csv") {
    text = "name,suite,status,worst,tolerance\n";
    for (const auto& c : report.checks) {
      double worst = 0.0;
      for (const auto& [k, v] : c.residuals) worst = std::max(worst, v);
      text += "\"" + c.name + "\"," + c.suite + "," + to_string(c.status) + "," +
              format_double(worst) + "," + format_double(c.tolerance) + "\n";
    }
  } else {
    text = report_text(report);
  }
  emit(cfg, text, out);
  if (!cfg.out_path.empty() && cfg.out_path != "-")
    out << report.count(CheckStatus::pass) << " passed, " << report.count(CheckStatus::fail)
        << " failed, " << report.count(CheckStatus::info) << " info\n";
  if (!report.all_passed()) {
    for (const auto& c : report.checks)
      if (c.status == CheckStatus::fail)
        err << "FAIL " << c.name << (c.witness.empty() ? "" : ": " + c.witness) << "\n";
    return kFailure;
  }
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, const std::string& param, const std::string& range_text,
              bool plot_data, std::ostream& out, std::ostream& err) {
  const auto range = parse_range(range_text);
  if (!range) throw UsageError("malformed --range '" + range_text + "', expected start:stop:steps");
  const double d = cfg.d();
  const bool closed = param == "alpha" && cfg.beta == 0.0;
  std::vector<SweepRow> rows;
  for (double v : range->values()) {
    ModelParams p{cfg.alpha, cfg.beta, d};
    (param == "alpha" ? p.alpha : p.beta) = v;
    const std::vector<SpectrumRow> spec =
        closed ? closed_form_rows(p, cfg.j_max.value_or(5), std::nullopt)
               : root_rows(p, default_k_max(cfg, d), err);
    for (const auto& r : spec) rows.push_back({v, r.j, r.k2, r.residual});
  }
  std::string text;
  if (plot_data)
    text = sweep_plot_data(rows);
  else
    text = cfg.format == "json" ? sweep_json(rows) : sweep_csv(rows);
  emit(cfg, text, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra and metric operator of the PT-symmetric Robin Laplacian on (0, d)",
               "ptrobin"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  auto* alpha_opt = app.add_option("--alpha", cfg.alpha, "Robin parameter alpha");
  auto* beta_opt = app.add_option("--beta", cfg.beta, "second boundary parameter (default 0)");
  auto* d_opt = app.add_option("--d", cfg.d_text, "interval length; accepts pi, 2pi, pi/2 (default pi)");
  app.add_option("--n", cfg.n, "quadrature intervals (default 4096)")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()).description(">= 2"));
  app.add_option("--jmax,--Jmax", cfg.j_max, "highest mode index / series cutoff");
  app.add_option("--kmax", cfg.k_max, "largest |k| for the root search")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "tolerance for quadrature-limited checks")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for random test functions");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out_path, "output file (default stdout)");

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues k^2 with residuals");

  auto* metric = app.add_subcommand("metric", "metric operator Theta(alpha)");
  metric->require_subcommand(1);
  auto* apply = metric->add_subcommand("apply", "apply Theta to a grid function file");
  std::string in_path;
  std::string method = "closed";
  apply->add_option("--in", in_path, "input grid function (JSON)")->required();
  apply->add_option("--method", method, "closed or series")
      ->check(CLI::IsMember({"closed", "series"}));

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  std::vector<std::string> suites;
  verify->add_option("--suite", suites, "spectrum, metric, forms, expansions or all");

  auto* sweep = app.add_subcommand("sweep", "eigenvalue trajectories over alpha or beta");
  std::string param = "alpha";
  std::string range_text;
  bool plot_data = false;
  sweep->add_option("--param", param, "swept parameter")->check(CLI::IsMember({"alpha", "beta"}));
  sweep->add_option("--range", range_text, "start:stop:steps, steps >= 2")->required();
  sweep->add_flag("--plot-data", plot_data, "whitespace-delimited output for gnuplot");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(cfg, out, err);
    if (apply->parsed())
      return cmd_metric_apply(cfg, d_opt->count() > 0, in_path, method, out, err);
    if (verify->parsed())
      return cmd_verify(cfg, alpha_opt->count() > 0, beta_opt->count() > 0, suites, out, err);
    if (sweep->parsed()) return cmd_sweep(cfg, param, range_text, plot_data, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace ptrobin::cli
