#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "gibbsmimo/errors.hpp"
#include "gibbsmimo/numerics.hpp"

namespace gibbsmimo::cli {

namespace {

struct Row {
  std::string detector;
  double snr_db = 0.0;
  std::optional<long> iteration;
  double ber = 0.0;
};

double field_number(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("plot: line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

std::vector<Row> parse_rows(std::string_view csv_text) {
  std::istringstream in{std::string(csv_text)};
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("plot: empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSimulateHeader) throw InvalidArgument("plot: header is not a simulate table: '" + line + "'");
  std::vector<Row> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 9)
      throw InvalidArgument("plot: line " + std::to_string(line_no) + ": expected 9 fields");
    Row r;
    r.detector = fields[0];
    for (char c : r.detector)
      if (c == '"' || c == '\\' || c == '\'')
        throw InvalidArgument("plot: line " + std::to_string(line_no) + ": bad detector name");
    r.snr_db = field_number(fields[1], line_no);
    if (fields[2] != "terminal") r.iteration = static_cast<long>(field_number(fields[2], line_no));
    r.ber = field_number(fields[3], line_no);
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw InvalidArgument("plot: CSV has a header but no data rows");
  return rows;
}

std::string py_list(const std::vector<double>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += shortest_repr(xs[i]);
  }
  return s + "]";
}

}  // namespace

// Rows with more than one iteration per (detector, snr) give BER-vs-iteration
// curves with the non-iterative detectors as horizontal lines; otherwise one
// BER-vs-SNR curve per detector.
std::string plot_script(std::string_view csv_text, std::string_view image_path) {
  const auto rows = parse_rows(csv_text);

  std::map<std::pair<std::string, double>, std::set<long>> iterations;
  for (const auto& r : rows)
    if (r.iteration) iterations[{r.detector, r.snr_db}].insert(*r.iteration);
  bool by_iteration = false;
  for (const auto& [key, its] : iterations) by_iteration = by_iteration || its.size() > 1;

  std::ostringstream py;
  py << "#!/usr/bin/env python3\n"
     << "import matplotlib\n"
     << "matplotlib.use(\"Agg\")\n"
     << "import matplotlib.pyplot as plt\n\n"
     << "fig, ax = plt.subplots(figsize=(6.4, 4.8))\n";

  // Keep first-appearance order of curves.
  std::vector<std::string> order;
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> curves;
  std::map<std::string, double> levels;
  auto touch = [&](const std::string& name) {
    if (!curves.count(name) && !levels.count(name)) order.push_back(name);
  };
  std::set<double> snrs;
  for (const auto& r : rows) snrs.insert(r.snr_db);

  for (const auto& r : rows) {
    if (by_iteration) {
      const std::string name = snrs.size() > 1 ? r.detector + " @ " + shortest_repr(r.snr_db) + " dB" : r.detector;
      if (r.iteration && iterations[{r.detector, r.snr_db}].size() > 1) {
        touch(name);
        curves[name].first.push_back(static_cast<double>(*r.iteration));
        curves[name].second.push_back(r.ber);
      } else {
        touch(name);
        levels[name] = r.ber;
      }
    } else {
      touch(r.detector);
      curves[r.detector].first.push_back(r.snr_db);
      curves[r.detector].second.push_back(r.ber);
    }
  }

  for (const auto& name : order) {
    if (auto it = curves.find(name); it != curves.end()) {
      py << "ax.plot(" << py_list(it->second.first) << ", " << py_list(it->second.second)
         << ", marker=\"o\", label=\"" << name << "\")\n";
    } else {
      py << "ax.axhline(" << shortest_repr(levels[name]) << ", linestyle=\"--\", label=\"" << name << "\")\n";
    }
  }
  py << "ax.set_yscale(\"log\")\n"
     << "ax.set_xlabel(\"" << (by_iteration ? "iteration" : "SNR [dB]") << "\")\n"
     << "ax.set_ylabel(\"BER\")\n"
     << "ax.grid(True, which=\"both\", alpha=0.3)\n"
     << "ax.legend()\n"
     << "fig.tight_layout()\n"
     << "fig.savefig(\"" << image_path << "\", dpi=150)\n";
  return py.str();
}

}  // namespace gibbsmimo::cli
