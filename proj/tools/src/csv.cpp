#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

#include "cli.hpp"
#include "gibbsmimo/analysis.hpp"
#include "gibbsmimo/errors.hpp"
#include "gibbsmimo/numerics.hpp"
#include "gibbsmimo/temperature.hpp"

namespace gibbsmimo::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw InvalidArgument("not a number: '" + std::string(text) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string optional_number(const std::optional<double>& x) { return x ? shortest_repr(*x) : std::string(); }

}  // namespace

std::vector<double> parse_db_grid(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw InvalidArgument("empty SNR grid");
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw InvalidArgument("SNR range must be start:step:stop");
    const double start = parse_number(parts[0]);
    const double step = parse_number(parts[1]);
    const double stop = parse_number(parts[2]);
    if (step == 0.0 || (stop - start) / step < 0.0)
      throw InvalidArgument("SNR range step does not lead from start to stop");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) throw InvalidArgument("SNR range has too many points");
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) grid[k] = start + static_cast<double>(k) * step;
    return grid;
  }
  std::vector<double> grid;
  for (auto part : split(text, ',')) grid.push_back(parse_number(part));
  return grid;
}

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw InvalidArgument("config line " + std::to_string(line_no) + ": expected key=value");
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (key.empty()) throw InvalidArgument("config line " + std::to_string(line_no) + ": empty key");
    if (key.find('-') != std::string_view::npos)
      throw InvalidArgument("config line " + std::to_string(line_no) + ": keys use underscores, got '" +
                            std::string(key) + "'");
    values[std::string(key)] = std::string(value);
  }
  return values;
}

std::string alpha_csv(std::size_t n, const std::vector<double>& snr_db_grid, std::optional<double> zeta) {
  std::ostringstream out;
  out << kAlphaHeader << '\n';
  const double z = zeta ? *zeta : default_zeta(static_cast<double>(n));
  for (double db : snr_db_grid) {
    const double snr = snr_db_to_linear(db);
    const auto sol = alpha_bounds(snr, n, z);
    out << shortest_repr(db) << ',' << shortest_repr(snr) << ',' << shortest_repr(sol.l_value) << ','
        << shortest_repr(sol.c_value) << ',' << shortest_repr(sol.beta_target) << ','
        << optional_number(sol.alpha_minus) << ',' << optional_number(sol.alpha_plus) << ','
        << (sol.feasible ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string bound_csv(std::size_t n, const std::vector<double>& snr_db_grid) {
  std::ostringstream out;
  out << kBoundHeader << '\n';
  const std::string threshold = n >= 2 ? shortest_repr(snr_linear_to_db(snr_threshold(n))) : std::string();
  for (double db : snr_db_grid) {
    const auto report = pe_union_bound(n, snr_db_to_linear(db));
    out << shortest_repr(db) << ',' << shortest_repr(report.log_pe_bound / std::log(10.0)) << ','
        << (report.vacuous ? "true" : "false") << ',' << threshold << '\n';
  }
  return out.str();
}

std::string records_csv(const std::vector<BerRecord>& records) {
  std::ostringstream out;
  out << kSimulateHeader << '\n';
  for (const auto& r : records) {
    out << r.detector << ',' << shortest_repr(r.snr_db) << ','
        << (r.iteration ? std::to_string(*r.iteration) : std::string("terminal")) << ','
        << shortest_repr(r.ber) << ',' << shortest_repr(r.ci_low) << ',' << shortest_repr(r.ci_high)
        << ',' << r.bit_errors << ',' << r.bits << ',' << shortest_repr(r.mean_mac) << '\n';
  }
  return out.str();
}

std::string complexity_csv(const std::vector<ComplexityRow>& rows) {
  std::ostringstream out;
  out << kComplexityHeader << '\n';
  for (const auto& r : rows)
    out << r.detector << ',' << shortest_repr(r.snr_db) << ',' << shortest_repr(r.mean_mac_per_symbol_vector)
        << '\n';
  return out.str();
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

}  // namespace gibbsmimo::cli
