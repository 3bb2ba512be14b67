#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "gibbsmimo/analysis.hpp"
#include "gibbsmimo/errors.hpp"
#include "gibbsmimo/numerics.hpp"
#include "gibbsmimo/temperature.hpp"

namespace gibbsmimo::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

#ifndef GIBBSMIMO_VERSION
#define GIBBSMIMO_VERSION "0.0.0"
#endif
constexpr const char* kToolVersion = GIBBSMIMO_VERSION;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<DetectorKind> parse_detectors(const std::string& text) {
  std::vector<DetectorKind> out;
  for (const auto& name : split_list(text)) {
    DetectorKind kind;
    if (name == "gibbs") kind = DetectorKind::gibbs;
    else if (name == "zf") kind = DetectorKind::zf;
    else if (name == "lmmse") kind = DetectorKind::lmmse;
    else if (name == "ml") kind = DetectorKind::ml;
    else if (name == "sphere") kind = DetectorKind::sphere;
    else throw InvalidArgument("unknown detector '" + name + "'");
    if (std::find(out.begin(), out.end(), kind) != out.end())
      throw InvalidArgument("detector '" + name + "' listed twice");
    out.push_back(kind);
  }
  if (out.empty()) throw InvalidArgument("no detectors given");
  return out;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw InvalidArgument("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::optional<double> parse_zeta(const std::string& text) {
  if (text == "auto") return std::nullopt;
  const auto values = parse_number_list(text);
  if (values.size() != 1 || !(values[0] > 0.0)) throw InvalidArgument("zeta must be 'auto' or a positive number");
  return values[0];
}

std::uint64_t whole_count(double x, const char* what) {
  if (!(x >= 1.0) || x != std::floor(x) || x > 1e15)
    throw InvalidArgument(std::string(what) + " must be a positive whole number");
  return static_cast<std::uint64_t>(x);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  f << content;
  if (!f) throw Error("failed writing '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Writes `csv` to `out_path` plus a JSON manifest next to it, or prints the
// table when no path was given.
void emit_table(const std::string& command, const std::string& schema_name, std::string_view header,
                const std::string& csv, Json parameters, Clock::time_point started,
                const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << csv;
    return;
  }
  const std::filesystem::path path(out_path);
  write_file(path, csv);
  Json columns = Json::array();
  for (const auto& c : split_list(std::string(header))) columns.push_back(c);
  Json manifest;
  manifest["tool_version"] = kToolVersion;
  manifest["command"] = command;
  manifest["csv_schema"] = {{"name", schema_name}, {"version", 1}, {"columns", columns}};
  manifest["parameters"] = std::move(parameters);
  manifest["wall_time_seconds"] = std::chrono::duration<double>(Clock::now() - started).count();
  manifest["outputs"] = Json::array({Json{{"path", path.filename().string()}, {"sha256", sha256_hex(csv)}}});
  write_file(path.string() + ".manifest.json", manifest.dump(2) + "\n");
}

Json grid_json(const std::vector<double>& grid) {
  Json a = Json::array();
  for (double x : grid) a.push_back(x);
  return a;
}

// Turns config-file entries into command-line tokens for options that were
// not given on the command line itself.
std::vector<std::string> config_tokens(CLI::App& sub, const std::map<std::string, std::string>& config,
                                       const std::set<std::string>& given) {
  std::vector<std::string> tokens;
  for (const auto& [key, value] : config) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (flag == "--config") throw InvalidArgument("config files cannot include other config files");
    CLI::Option* opt = sub.get_option_no_throw(flag);
    if (opt == nullptr) throw InvalidArgument("unknown config key '" + key + "'");
    if (given.count(flag)) continue;
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1" || value == "yes") tokens.push_back(flag);
      else if (!(value == "false" || value == "0" || value == "no"))
        throw InvalidArgument("config key '" + key + "' expects true or false");
    } else {
      tokens.push_back(flag + "=" + value);
    }
  }
  return tokens;
}

struct SimulateOptions {
  std::string mode = "ber-vs-iter";
  std::size_t n = 10;
  std::string snr_db = "10";
  std::size_t iters = 100;
  double trials = 10000;
  std::string detectors = "gibbs,zf,lmmse";
  std::string alpha_policy = "alpha-plus";
  std::optional<double> alpha;
  std::string alpha_grid;
  std::string zeta = "auto";
  std::string scan_order = "random-permutation";
  std::string init = "uniform-random";
  std::string symbols = "uniform-random";
  std::uint64_t seed = 1;
  std::optional<double> fallback_alpha;
  bool noiseless = false;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::string out;
};

ExperimentSpec build_spec(const SimulateOptions& o) {
  ExperimentSpec spec;
  if (o.mode == "ber-vs-iter") spec.mode = ExperimentMode::ber_vs_iterations;
  else if (o.mode == "ber-vs-snr") spec.mode = ExperimentMode::ber_vs_snr;
  else if (o.mode == "complexity") spec.mode = ExperimentMode::complexity_table;
  else throw InvalidArgument("unknown mode '" + o.mode + "'");
  spec.n = o.n;
  spec.snr_db_grid = parse_db_grid(o.snr_db);
  spec.iterations = o.iters;
  spec.trials = whole_count(o.trials, "trials");
  spec.detectors = parse_detectors(o.detectors);
  if (o.alpha_policy == "alpha-plus") {
    spec.alpha_policy = AlphaPlus{};
  } else if (o.alpha_policy == "sigma-rule") {
    spec.alpha_policy = AlphaSigmaRule{};
  } else if (o.alpha_policy == "fixed") {
    if (!o.alpha) throw InvalidArgument("--alpha-policy fixed needs --alpha");
    spec.alpha_policy = AlphaFixed{*o.alpha};
  } else if (o.alpha_policy == "grid") {
    if (o.alpha_grid.empty()) throw InvalidArgument("--alpha-policy grid needs --alpha-grid");
    spec.alpha_policy = AlphaGrid{parse_number_list(o.alpha_grid)};
  } else {
    throw InvalidArgument("unknown alpha policy '" + o.alpha_policy + "'");
  }
  if (o.alpha && o.alpha_policy != "fixed") throw InvalidArgument("--alpha only applies to --alpha-policy fixed");
  spec.zeta = parse_zeta(o.zeta);
  if (o.scan_order == "random-permutation") spec.scan_order = ScanOrder::random_permutation;
  else if (o.scan_order == "sequential") spec.scan_order = ScanOrder::sequential;
  else if (o.scan_order == "random-with-replacement") spec.scan_order = ScanOrder::random_with_replacement;
  else throw InvalidArgument("unknown scan order '" + o.scan_order + "'");
  if (o.init == "uniform-random") spec.init = InitKind::uniform_random;
  else if (o.init == "zero-forcing") spec.init = InitKind::zero_forcing;
  else throw InvalidArgument("unknown init '" + o.init + "'");
  if (o.symbols == "uniform-random") spec.symbol_policy = SymbolPolicy::uniform_random;
  else if (o.symbols == "all-minus-one") spec.symbol_policy = SymbolPolicy::all_minus_one;
  else throw InvalidArgument("unknown symbol policy '" + o.symbols + "'");
  spec.master_seed = o.seed;
  spec.fallback_alpha = o.fallback_alpha;
  spec.noiseless = o.noiseless;
  spec.validate();
  return spec;
}

Json spec_json(const ExperimentSpec& spec, const SimulateOptions& o) {
  Json detectors = Json::array();
  for (auto d : spec.detectors) detectors.push_back(std::string(to_string(d)));
  Json j;
  j["mode"] = std::string(to_string(spec.mode));
  j["n"] = spec.n;
  j["snr_db_grid"] = grid_json(spec.snr_db_grid);
  j["iterations"] = spec.iterations;
  j["trials"] = spec.trials;
  j["detectors"] = detectors;
  j["alpha_policy"] = o.alpha_policy;
  if (o.alpha) j["alpha"] = *o.alpha;
  if (!o.alpha_grid.empty()) j["alpha_grid"] = grid_json(parse_number_list(o.alpha_grid));
  j["zeta"] = spec.zeta ? Json(*spec.zeta) : Json("auto");
  j["scan_order"] = std::string(to_string(spec.scan_order));
  j["init"] = std::string(to_string(spec.init));
  j["symbols"] = o.symbols;
  j["master_seed"] = spec.master_seed;
  j["fallback_alpha"] = spec.fallback_alpha ? Json(*spec.fallback_alpha) : Json(nullptr);
  j["noiseless"] = spec.noiseless;
  j["workers"] = o.workers;
  return j;
}

std::string format_z(double z) { return std::isinf(z) ? (z > 0 ? "inf" : "-inf") : shortest_repr(z); }

double z_score(double estimate, double reference, double se) {
  if (se > 0.0) return (estimate - reference) / se;
  return estimate == reference ? 0.0 : (estimate > reference ? INFINITY : -INFINITY);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gibbs-sampler MIMO detection toolkit", "gibbsmimo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string config_path;

  // alpha
  auto* alpha_cmd = app.add_subcommand("alpha", "Temperature table: alpha roots per SNR point");
  std::size_t alpha_n = 10;
  std::string alpha_grid_text = "10";
  std::string alpha_zeta = "auto";
  std::string alpha_out;
  alpha_cmd->add_option("--n", alpha_n, "Number of antennas")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  alpha_cmd->add_option("--snr-db", alpha_grid_text, "SNR grid in dB (x, a,b,c or start:step:stop)");
  alpha_cmd->add_option("--zeta", alpha_zeta, "Decay exponent zeta or 'auto' (1/ln n)");
  alpha_cmd->add_option("--out", alpha_out, "CSV output path (manifest written beside it)");
  alpha_cmd->add_option("--config", config_path, "key=value config file");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo BER / complexity experiment");
  SimulateOptions so;
  sim_cmd->add_option("--mode", so.mode, "ber-vs-iter | ber-vs-snr | complexity");
  sim_cmd->add_option("--n", so.n, "Number of antennas")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--snr-db", so.snr_db, "SNR grid in dB");
  sim_cmd->add_option("--iters", so.iters, "Gibbs sweeps per trial")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--trials", so.trials, "Trials per SNR point");
  sim_cmd->add_option("--detectors", so.detectors, "Comma list of gibbs,zf,lmmse,ml,sphere");
  sim_cmd->add_option("--alpha-policy", so.alpha_policy, "alpha-plus | sigma-rule | fixed | grid");
  sim_cmd->add_option("--alpha", so.alpha, "Temperature for --alpha-policy fixed");
  sim_cmd->add_option("--alpha-grid", so.alpha_grid, "Comma list of temperatures for --alpha-policy grid");
  sim_cmd->add_option("--zeta", so.zeta, "Decay exponent zeta or 'auto'");
  sim_cmd->add_option("--scan-order", so.scan_order, "random-permutation | sequential | random-with-replacement");
  sim_cmd->add_option("--init", so.init, "uniform-random | zero-forcing");
  sim_cmd->add_option("--symbols", so.symbols, "uniform-random | all-minus-one");
  sim_cmd->add_option("--seed", so.seed, "Master seed");
  sim_cmd->add_option("--fallback-alpha", so.fallback_alpha, "Temperature where alpha_plus does not exist");
  sim_cmd->add_flag("--noiseless", so.noiseless, "Drop the noise term");
  sim_cmd->add_option("--workers", so.workers, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--out", so.out, "CSV output path (manifest written beside it)");
  sim_cmd->add_option("--config", config_path, "key=value config file");

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "Union bound on the ML error probability");
  std::size_t bound_n = 10;
  std::string bound_grid_text = "0:2:20";
  std::string bound_out;
  bound_cmd->add_option("--n", bound_n, "Number of antennas")->check(CLI::PositiveNumber);
  bound_cmd->add_option("--snr-db", bound_grid_text, "SNR grid in dB");
  bound_cmd->add_option("--out", bound_out, "CSV output path (manifest written beside it)");
  bound_cmd->add_option("--config", config_path, "key=value config file");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check an analytic identity by Monte Carlo");
  verify_cmd->require_subcommand(1);
  auto* gi_cmd = verify_cmd->add_subcommand("gaussian-integral", "Gaussian-integral lemma");
  double gi_a = 1.0, gi_eta = -0.25, gi_samples = 1e6;
  std::size_t gi_n = 2;
  std::uint64_t gi_seed = 1;
  gi_cmd->add_option("--a", gi_a, "Scale a");
  gi_cmd->add_option("--eta", gi_eta, "Exponent eta");
  gi_cmd->add_option("--n", gi_n, "Dimension")->check(CLI::PositiveNumber);
  gi_cmd->add_option("--samples", gi_samples, "Monte Carlo samples (>= 1000)");
  gi_cmd->add_option("--seed", gi_seed, "Seed");
  gi_cmd->add_option("--config", config_path, "key=value config file");

  auto* ip_cmd = verify_cmd->add_subcommand("inv-pi", "Mean inverse stationary probability identity");
  std::size_t ip_n = 8;
  double ip_snr = 10.0, ip_alpha = 2.0, ip_trials = 1e5;
  std::uint64_t ip_seed = 1;
  ip_cmd->add_option("--n", ip_n, "Dimension (<= 12)")->check(CLI::PositiveNumber);
  ip_cmd->add_option("--snr", ip_snr, "Linear SNR");
  ip_cmd->add_option("--alpha", ip_alpha, "Temperature (> 1)");
  ip_cmd->add_option("--trials", ip_trials, "Monte Carlo trials");
  ip_cmd->add_option("--seed", ip_seed, "Seed");
  ip_cmd->add_option("--config", config_path, "key=value config file");

  auto* sp_cmd = verify_cmd->add_subcommand("saddle", "Saddle-point approximation of the weight sum");
  std::size_t sp_n = 1000;
  std::optional<double> sp_beta;
  double sp_root_beta = 30.0, sp_tolerance = 0.1;
  sp_cmd->add_option("--n", sp_n, "Dimension")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  sp_cmd->add_option("--beta", sp_beta, "beta for the sum (default 2 ln n)");
  sp_cmd->add_option("--root-beta", sp_root_beta, "beta for the saddle-root check");
  sp_cmd->add_option("--tolerance", sp_tolerance, "Relative tolerance for both checks");
  sp_cmd->add_option("--config", config_path, "key=value config file");

  // plot
  auto* plot_cmd = app.add_subcommand("plot", "Emit a matplotlib script for a simulate CSV");
  std::string plot_csv, plot_out, plot_image;
  plot_cmd->add_option("--csv", plot_csv, "simulate CSV")->required();
  plot_cmd->add_option("--out", plot_out, "Script path (stdout when omitted)");
  plot_cmd->add_option("--image", plot_image, "Image the script writes (default: <out>.png or ber.png)");

  // Config merging needs the subcommand, so find it first.
  std::vector<std::string> merged = args;
  {
    CLI::App* sub = nullptr;
    std::size_t pos = 0;
    for (; pos < args.size(); ++pos) {
      if (CLI::App* s = app.get_subcommand_no_throw(args[pos])) {
        sub = s;
        if (sub == verify_cmd && pos + 1 < args.size())
          if (CLI::App* s2 = verify_cmd->get_subcommand_no_throw(args[pos + 1])) {
            sub = s2;
            ++pos;
          }
        break;
      }
    }
    std::string cfg;
    std::set<std::string> given;
    for (std::size_t i = pos + 1; i < args.size(); ++i) {
      const std::string& a = args[i];
      if (a.rfind("--", 0) != 0) continue;
      const std::string name = a.substr(0, a.find('='));
      given.insert(name);
      if (name == "--config") {
        if (a.size() > name.size()) cfg = a.substr(name.size() + 1);
        else if (i + 1 < args.size()) cfg = args[i + 1];
      }
    }
    if (sub && !cfg.empty()) {
      std::ifstream f(cfg);
      if (!f) throw InvalidArgument("cannot read config file '" + cfg + "'");
      const auto tokens = config_tokens(*sub, parse_config(f), given);
      merged.insert(merged.begin() + static_cast<std::ptrdiff_t>(pos) + 1, tokens.begin(), tokens.end());
    }
  }

  try {
    std::vector<std::string> reversed(merged.rbegin(), merged.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto started = Clock::now();

  if (*alpha_cmd) {
    const auto grid = parse_db_grid(alpha_grid_text);
    const auto zeta = parse_zeta(alpha_zeta);
    const std::string csv = alpha_csv(alpha_n, grid, zeta);
    Json params{{"n", alpha_n}, {"snr_db_grid", grid_json(grid)}, {"zeta", zeta ? Json(*zeta) : Json("auto")}};
    emit_table("alpha", "alpha", kAlphaHeader, csv, params, started, alpha_out, out);
    return kExitOk;
  }

  if (*sim_cmd) {
    const ExperimentSpec spec = build_spec(so);
    RunOptions ro;
    ro.workers = so.workers;
    std::string csv;
    std::string schema;
    std::string_view header;
    if (spec.mode == ExperimentMode::complexity_table) {
      csv = complexity_csv(complexity_table(spec, ro));
      schema = "complexity";
      header = kComplexityHeader;
    } else {
      csv = records_csv(run_experiment(spec, ro));
      schema = "simulate";
      header = kSimulateHeader;
    }
    emit_table("simulate", schema, header, csv, spec_json(spec, so), started, so.out, out);
    return kExitOk;
  }

  if (*bound_cmd) {
    const auto grid = parse_db_grid(bound_grid_text);
    const std::string csv = bound_csv(bound_n, grid);
    Json params{{"n", bound_n}, {"snr_db_grid", grid_json(grid)}, {"chernoff_parameter", chernoff_optimal_parameter()}};
    emit_table("bound", "bound", kBoundHeader, csv, params, started, bound_out, out);
    return kExitOk;
  }

  if (*gi_cmd) {
    const double closed = gaussian_integral_closed_form(gi_a, gi_eta, gi_n);
    const auto mc = gaussian_integral_mc(gi_a, gi_eta, gi_n, whole_count(gi_samples, "samples"), RngSeed{gi_seed, 0});
    if (!mc.second_moment_finite) err << "warning: " << mc.warning << '\n';
    const double z = z_score(mc.estimate, closed, mc.standard_error);
    const bool pass = std::abs(z) <= 3.0;
    out << "target: gaussian-integral\n"
        << "a: " << shortest_repr(gi_a) << "\neta: " << shortest_repr(gi_eta) << "\nn: " << gi_n
        << "\nsamples: " << mc.samples << "\nestimate: " << shortest_repr(mc.estimate)
        << "\nclosed_form: " << shortest_repr(closed) << "\nstandard_error: " << shortest_repr(mc.standard_error)
        << "\nz_score: " << format_z(z) << "\nsecond_moment_finite: " << (mc.second_moment_finite ? "true" : "false")
        << "\nresult: " << (pass ? "pass" : "fail") << '\n';
    return pass ? kExitOk : kExitStatistical;
  }

  if (*ip_cmd) {
    const double closed = expected_inv_pi_closed_form(ip_n, ip_snr, ip_alpha);
    const auto mc = expected_inv_pi_mc(ip_n, ip_snr, ip_alpha, whole_count(ip_trials, "trials"), RngSeed{ip_seed, 0});
    const double z = z_score(mc.inv_pi.estimate, closed, mc.inv_pi.standard_error);
    const bool pass = std::abs(z) <= 3.0;
    out << "target: inv-pi\n"
        << "n: " << ip_n << "\nsnr: " << shortest_repr(ip_snr) << "\nalpha: " << shortest_repr(ip_alpha)
        << "\nbeta: " << shortest_repr(beta_of_alpha(ip_snr, ip_alpha)) << "\ntrials: " << mc.inv_pi.samples
        << "\nestimate: " << shortest_repr(mc.inv_pi.estimate) << "\nclosed_form: " << shortest_repr(closed)
        << "\nstandard_error: " << shortest_repr(mc.inv_pi.standard_error) << "\nz_score: " << format_z(z)
        << "\nmean_pi: " << shortest_repr(mc.pi.estimate) << "\njensen_lower_bound: " << shortest_repr(1.0 / closed)
        << "\nresult: " << (pass ? "pass" : "fail") << '\n';
    return pass ? kExitOk : kExitStatistical;
  }

  if (*sp_cmd) {
    const double beta = sp_beta ? *sp_beta : beta_target(static_cast<double>(sp_n), default_zeta(static_cast<double>(sp_n)));
    const double exact = log_sum_exact(sp_n, beta);
    const double approx = log_sum_saddle(sp_n, beta);
    const double sum_rel = std::abs(exact - approx) / std::abs(exact);
    const double root = exact_saddle_point(sp_root_beta);
    const double root_rel = std::abs(saddle_point(sp_root_beta) - root) / root;
    const bool pass = sum_rel <= sp_tolerance && root_rel <= sp_tolerance;
    out << "target: saddle\n"
        << "n: " << sp_n << "\nbeta: " << shortest_repr(beta) << "\nlog_sum_exact: " << shortest_repr(exact)
        << "\nlog_sum_saddle: " << shortest_repr(approx) << "\nsum_relative_error: " << shortest_repr(sum_rel)
        << "\nroot_beta: " << shortest_repr(sp_root_beta) << "\nexact_root: " << shortest_repr(root)
        << "\napprox_root: " << shortest_repr(saddle_point(sp_root_beta))
        << "\nroot_relative_error: " << shortest_repr(root_rel) << "\ntolerance: " << shortest_repr(sp_tolerance)
        << "\nresult: " << (pass ? "pass" : "fail") << '\n';
    return pass ? kExitOk : kExitStatistical;
  }

  if (*plot_cmd) {
    std::string image = plot_image;
    if (image.empty())
      image = plot_out.empty() ? "ber.png" : std::filesystem::path(plot_out).replace_extension(".png").string();
    if (image.find_first_of("\"\\") != std::string::npos) throw InvalidArgument("image path may not contain quotes");
    const std::string script = plot_script(read_file(plot_csv), image);
    if (plot_out.empty()) out << script;
    else write_file(plot_out, script);
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const GuardViolation& e) {
    err << "guard violation: " << e.what() << '\n';
    return kExitGuard;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace gibbsmimo::cli
