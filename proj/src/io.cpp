#include "ptrobin/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace ptrobin {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string grid_function_to_json(const GridFunction& f) {
  json values = json::array();
  for (const cplx& v : f.values()) values.push_back({v.real(), v.imag()});
  json j{{"d", f.grid().length()}, {"n", f.grid().intervals()}, {"values", std::move(values)}};
  return j.dump() + "\n";
}

GridFunction grid_function_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  try {
    const double d = j.at("d").get<double>();
    const auto n = j.at("n").get<std::size_t>();
    const json& values = j.at("values");
    if (!values.is_array() || values.size() != n + 1)
      throw FormatError("values must hold n + 1 = " + std::to_string(n + 1) + " entries");
    std::vector<cplx> v;
    v.reserve(values.size());
    for (const json& pair : values) {
      if (!pair.is_array() || pair.size() != 2)
        throw FormatError("each value must be a [re, im] pair");
      v.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return GridFunction(Grid(d, n), std::move(v));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed grid function: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid grid function: ") + e.what());
  }
}

GridFunction read_grid_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return grid_function_from_json(ss.str());
}

void write_grid_function(const std::string& path, const GridFunction& f) {
  write_text(path, grid_function_to_json(f));
}

std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
  bool with_status = false;
  for (const auto& r : rows) with_status |= r.status && *r.status != "resolved";
  std::string out = with_status ? "j,re_k2,im_k2,residual,status\n" : "j,re_k2,im_k2,residual\n";
  for (const auto& r : rows) {
    out += std::to_string(r.j) + "," + format_double(r.k2.real()) + "," +
           format_double(r.k2.imag()) + "," + format_double(r.residual);
    if (with_status) out += "," + r.status.value_or("resolved");
    out += "\n";
  }
  return out;
}

std::string spectrum_json(const std::vector<SpectrumRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json row{{"j", r.j}, {"re_k2", r.k2.real()}, {"im_k2", r.k2.imag()}, {"residual", r.residual}};
    if (r.status) row["status"] = *r.status;
    arr.push_back(std::move(row));
  }
  return json{{"rows", std::move(arr)}}.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "param,j,re_k2,im_k2,residual\n";
  for (const auto& r : rows)
    out += format_double(r.param) + "," + std::to_string(r.j) + "," +
           format_double(r.k2.real()) + "," + format_double(r.k2.imag()) + "," +
           format_double(r.residual) + "\n";
  return out;
}

std::string sweep_plot_data(const std::vector<SweepRow>& rows) {
  std::string out = "# param j re_k2 im_k2 residual\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (i > 0 && rows[i - 1].param != r.param) out += "\n";
    out += format_double(r.param) + " " + std::to_string(r.j) + " " +
           format_double(r.k2.real()) + " " + format_double(r.k2.imag()) + " " +
           format_double(r.residual) + "\n";
  }
  return out;
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"param", r.param},
                   {"j", r.j},
                   {"re_k2", r.k2.real()},
                   {"im_k2", r.k2.imag()},
                   {"residual", r.residual}});
  return json{{"rows", std::move(arr)}}.dump(2) + "\n";
}

namespace {

// JSON has no infinity or NaN; they become strings so that nothing is lost.
json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

json pairs(const std::vector<std::pair<std::string, double>>& kv) {
  json o = json::object();
  for (const auto& [k, v] : kv) o[k] = number(v);
  return o;
}

}  // namespace

std::string report_json(const VerificationReport& report,
                        const std::optional<std::string>& timestamp) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json rec{{"name", c.name},
             {"suite", c.suite},
             {"status", to_string(c.status)},
             {"parameters", pairs(c.parameters)},
             {"residuals", pairs(c.residuals)},
             {"tolerance", number(c.tolerance)}};
    if (!c.witness.empty()) rec["witness"] = c.witness;
    if (!c.note.empty()) rec["note"] = c.note;
    checks.push_back(std::move(rec));
  }
  json j{{"seed", report.seed},
         {"summary",
          {{"pass", report.count(CheckStatus::pass)},
           {"fail", report.count(CheckStatus::fail)},
           {"info", report.count(CheckStatus::info)},
           {"skipped", report.count(CheckStatus::skipped)}}},
         {"all_passed", report.all_passed()},
         {"checks", std::move(checks)}};
  if (timestamp) j["timestamp"] = *timestamp;
  return j.dump(2) + "\n";
}

std::string report_text(const VerificationReport& report) {
  std::size_t width = 5;
  for (const auto& c : report.checks) width = std::max(width, c.name.size());

  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "%-*s  %-10s  %-7s  %-12s  %s\n", int(width), "check",
                "suite", "status", "worst", "tolerance");
  out += line;
  out += std::string(width + 50, '-') + "\n";
  for (const auto& c : report.checks) {
    double worst = 0.0;
    for (const auto& [k, v] : c.residuals) worst = std::max(worst, v);
    std::snprintf(line, sizeof line, "%-*s  %-10s  %-7s  %-12.3e  %.1e\n", int(width),
                  c.name.c_str(), c.suite.c_str(), to_string(c.status), worst, c.tolerance);
    out += line;
    if (c.status == CheckStatus::fail && !c.witness.empty())
      out += "    witness: " + c.witness + "\n";
    if (c.status == CheckStatus::info && !c.note.empty()) out += "    note: " + c.note + "\n";
  }
  std::snprintf(line, sizeof line, "\n%zu passed, %zu failed, %zu info, %zu skipped (seed %llu)\n",
                report.count(CheckStatus::pass), report.count(CheckStatus::fail),
                report.count(CheckStatus::info), report.count(CheckStatus::skipped),
                static_cast<unsigned long long>(report.seed));
  out += line;
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ptrobin
