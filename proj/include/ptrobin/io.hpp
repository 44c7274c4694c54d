#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ptrobin/grid.hpp"
#include "ptrobin/verify.hpp"

namespace ptrobin {

/// Malformed or inconsistent input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal string that reads back to the same double; never
/// depends on the global locale.
std::string format_double(double v);

/// {"d": ..., "n": ..., "values": [[re, im], ...]}. The grid rule is not
/// stored; reading yields the default cubic rule.
std::string grid_function_to_json(const GridFunction& f);
GridFunction grid_function_from_json(std::string_view text);

GridFunction read_grid_function(const std::string& path);
void write_grid_function(const std::string& path, const GridFunction& f);

struct SpectrumRow {
  long long j = 0;
  cplx k2;
  double residual = 0.0;
  /// "resolved" / "unresolved"; only emitted when some row is unresolved.
  std::optional<std::string> status;
};

/// Columns j,re_k2,im_k2,residual[,status].
std::string spectrum_csv(const std::vector<SpectrumRow>& rows);
/// {"rows": [{"j":..,"re_k2":..,"im_k2":..,"residual":..}, ...]}
std::string spectrum_json(const std::vector<SpectrumRow>& rows);

struct SweepRow {
  double param = 0.0;
  long long j = 0;
  cplx k2;
  double residual = 0.0;
};

/// Columns param,j,re_k2,im_k2,residual.
std::string sweep_csv(const std::vector<SweepRow>& rows);
/// Whitespace-delimited, '#' header, blank line between parameter values
/// (gnuplot data blocks).
std::string sweep_plot_data(const std::vector<SweepRow>& rows);
/// {"rows": [...]} mirroring the CSV columns.
std::string sweep_json(const std::vector<SweepRow>& rows);

/// Per-check JSON records. A "timestamp" field is added when given; it is
/// the only part that varies between identical runs.
std::string report_json(const VerificationReport& report,
                        const std::optional<std::string>& timestamp = std::nullopt);
/// Fixed-width table, one line per check, followed by a summary line.
std::string report_text(const VerificationReport& report);

/// Writes text to path, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace ptrobin
