#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gibbsmimo/harness.hpp"

namespace gibbsmimo::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // I/O and other unexpected errors
  kExitUsage = 2,
  kExitGuard = 3,
  kExitStatistical = 4,
};

// "10" or "6:2:14" (start:step:stop, stop included up to rounding) or a
// comma-separated list "4,8,12".
std::vector<double> parse_db_grid(std::string_view text);

// Flat key=value lines; '#' starts a comment, blank lines are ignored.
std::map<std::string, std::string> parse_config(std::istream& in);

// CSV tables. Numbers use the shortest round-trip decimal form.
std::string alpha_csv(std::size_t n, const std::vector<double>& snr_db_grid,
                      std::optional<double> zeta);
std::string bound_csv(std::size_t n, const std::vector<double>& snr_db_grid);
std::string records_csv(const std::vector<BerRecord>& records);
std::string complexity_csv(const std::vector<ComplexityRow>& rows);

inline constexpr std::string_view kAlphaHeader =
    "snr_db,snr_linear,l_value,c_value,beta,alpha_minus,alpha_plus,feasible";
inline constexpr std::string_view kSimulateHeader =
    "detector,snr_db,iteration,ber,ci_low,ci_high,bit_errors,bits,mean_mac";
inline constexpr std::string_view kBoundHeader =
    "snr_db,log10_pe_bound,vacuous_flag,snr_threshold_db";
inline constexpr std::string_view kComplexityHeader = "detector,snr_db,mean_mac_per_symbol_vector";

// matplotlib script for a simulate CSV. Throws InvalidArgument on a malformed
// or empty table.
std::string plot_script(std::string_view csv_text, std::string_view image_path);

std::string sha256_hex(std::string_view data);

// Whole command line without the program name. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gibbsmimo::cli
