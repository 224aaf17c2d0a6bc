#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "normgeo/constants.hpp"
#include "normgeo/errors.hpp"
#include "normgeo/run_record.hpp"
#include "normgeo/space_io.hpp"
#include "normgeo/verifier.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitParse = 2;
constexpr int kExitNoConverge = 3;

struct CommonFlags {
  std::string space;
  std::uint64_t seed = 0;
  int starts = 64;
  int grid = 180;
  std::string cache_dir;
  std::string output;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--space", f.space, "space descriptor, e.g. l2:2, wl1:2:1,2, poly:@file.json")
      ->required();
  cmd->add_option("--seed", f.seed, "RNG seed; all randomness flows from it");
  cmd->add_option("--starts", f.starts, "random multistart count");
  cmd->add_option("--grid", f.grid, "angular grid resolution for dim-2 spaces");
  cmd->add_option("--cache-dir", f.cache_dir, "result cache directory (overrides NORMGEO_CACHE_DIR)");
  cmd->add_option("--output", f.output, "write the document here instead of standard output");
}

normgeo::OptimizerConfig make_config(const CommonFlags& f) {
  normgeo::OptimizerConfig cfg;
  cfg.seed = f.seed;
  cfg.starts = f.starts;
  cfg.grid_resolution = f.grid;
  return cfg;
}

std::string effective_cache_dir(const CommonFlags& f) {
  if (!f.cache_dir.empty()) return f.cache_dir;
  if (const char* env = std::getenv("NORMGEO_CACHE_DIR")) return env;
  return {};
}

void emit(const CommonFlags& f, const std::string& text) {
  if (f.output.empty() || f.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(f.output);
  if (!out) throw std::runtime_error("cannot write output file: " + f.output);
  out << text;
}

// The swept/fixed parameter a constant takes: mr wants p, delta wants eps,
// rho wants tau; the rest take none.
const char* param_flag_for(const std::string& constant) {
  if (constant == "mr") return "--p";
  if (constant == "delta") return "--eps";
  if (constant == "rho") return "--tau";
  return nullptr;
}

normgeo::EstimateResult run_estimate(const normgeo::NormedSpace& space, const std::string& constant,
                                     std::optional<double> param, bool extended_p,
                                     const normgeo::OptimizerConfig& cfg) {
  if (constant == "mr") return normgeo::estimate_mr(space, normgeo::Exponent(*param, extended_p), cfg);
  if (constant == "dr") return normgeo::estimate_dr(space, cfg);
  if (constant == "dw") return normgeo::estimate_dw(space, cfg);
  if (constant == "delta") return normgeo::modulus_convexity(space, *param, cfg);
  if (constant == "eps0") return normgeo::eps0(space, cfg);
  if (constant == "rho") return normgeo::modulus_smoothness(space, *param, cfg);
  if (constant == "rho-prime") return normgeo::rho_prime_zero(space, cfg);
  throw normgeo::ParseError(0, "unknown constant '" + constant +
                                   "' (expected mr, dr, dw, delta, eps0, rho or rho-prime)");
}

struct Range {
  double start, stop, step;
};

Range parse_range(const std::string& text) {
  std::istringstream is(text);
  Range r{};
  char c1 = 0, c2 = 0;
  if (!(is >> r.start >> c1 >> r.stop >> c2 >> r.step) || c1 != ':' || c2 != ':' || !is.eof()) {
    throw normgeo::ParseError(0, "expected a range 'start:stop:step': " + text);
  }
  if (!(r.step > 0.0) || r.stop < r.start) {
    throw normgeo::ParseError(0, "range needs step > 0 and stop >= start: " + text);
  }
  return r;
}

int cmd_compute(const CommonFlags& f, const std::string& constant, std::optional<double> param,
                bool extended_p) {
  const normgeo::NormedSpace space = normgeo::parse_space(f.space);
  const char* needs = param_flag_for(constant);
  if (needs && !param) throw normgeo::ParseError(0, std::string(constant) + " requires " + needs);
  const auto cfg = make_config(f);

  normgeo::RunRecord rec;
  rec.command = "compute";
  rec.space = space.descriptor();
  rec.seed = f.seed;
  rec.params = {{"constant", constant}, {"starts", f.starts}, {"grid", f.grid}};
  if (needs) rec.params[needs + 2] = *param;  // strip the leading "--"
  if (extended_p) rec.params["extended_p"] = true;

  const std::string cache_dir = effective_cache_dir(f);
  if (!cache_dir.empty()) {
    if (auto hit = normgeo::cache_lookup(cache_dir, rec.cache_key())) {
      hit->cached = true;
      hit->timestamp = normgeo::iso8601_utc_now();
      emit(f, hit->to_json().dump(2) + "\n");
      return hit->result.value("converged", false) ? kExitOk : kExitNoConverge;
    }
  }

  const auto est = run_estimate(space, constant, param, extended_p, cfg);
  rec.result = est.to_json();
  rec.timestamp = normgeo::iso8601_utc_now();
  if (!cache_dir.empty()) normgeo::cache_store(cache_dir, rec);
  emit(f, rec.to_json().dump(2) + "\n");
  return est.converged ? kExitOk : kExitNoConverge;
}

int cmd_sweep(const CommonFlags& f, const std::string& constant, const std::string& range_text,
              bool extended_p) {
  const normgeo::NormedSpace space = normgeo::parse_space(f.space);
  if (!param_flag_for(constant)) {
    throw normgeo::ParseError(0, "sweep needs a parameterized constant (mr, delta or rho)");
  }
  const Range r = parse_range(range_text);
  const auto cfg = make_config(f);

  std::ostringstream csv;
  csv << "space,constant,p,value,converged,seed\n";
  bool all_converged = true;
  for (double v = r.start; v <= r.stop + 0.5 * r.step; v += r.step) {
    const auto est = run_estimate(space, constant, v, extended_p, cfg);
    all_converged = all_converged && est.converged;
    csv << space.descriptor() << ',' << constant << ',' << v << ',' << est.value << ','
        << (est.converged ? "true" : "false") << ',' << f.seed << '\n';
  }
  emit(f, csv.str());
  return all_converged ? kExitOk : kExitNoConverge;
}

int cmd_verify(const CommonFlags& f, std::vector<double> p_grid) {
  const normgeo::NormedSpace space = normgeo::parse_space(f.space);
  if (p_grid.empty()) p_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  const auto cfg = make_config(f);
  const auto report = normgeo::verify_space(space, p_grid, cfg);

  normgeo::RunRecord rec;
  rec.command = "verify";
  rec.space = space.descriptor();
  rec.seed = f.seed;
  rec.params = {{"p_grid", p_grid}, {"starts", f.starts}, {"grid", f.grid}};
  rec.result = report.to_json();
  rec.timestamp = normgeo::iso8601_utc_now();
  const std::string cache_dir = effective_cache_dir(f);
  if (!cache_dir.empty()) normgeo::cache_store(cache_dir, rec);
  emit(f, rec.to_json().dump(2) + "\n");
  return (report.any_violated() || !report.findings.empty()) ? kExitViolated : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical estimates of geometric constants of finite-dimensional normed spaces"};
  app.require_subcommand(1);

  CommonFlags fc, fs, fv;
  std::string constant_c, constant_s;
  std::optional<double> p_c, eps_c, tau_c;
  std::string p_range, eps_range, tau_range;
  bool ext_c = false, ext_s = false;
  std::vector<double> p_grid;

  auto* compute = app.add_subcommand("compute", "estimate one constant, print a run record");
  add_common(compute, fc);
  compute->add_option("--constant", constant_c, "mr | dr | dw | delta | eps0 | rho | rho-prime")
      ->required();
  compute->add_option("--p", p_c, "exponent for mr");
  compute->add_option("--eps", eps_c, "argument for delta");
  compute->add_option("--tau", tau_c, "argument for rho");
  compute->add_flag("--extended-p", ext_c, "allow p outside [0, 1]");

  auto* sweep = app.add_subcommand("sweep", "estimate over a parameter grid, emit CSV");
  add_common(sweep, fs);
  sweep->add_option("--constant", constant_s, "mr | delta | rho")->required();
  sweep->add_option("--p", p_range, "p range start:stop:step (mr)");
  sweep->add_option("--eps", eps_range, "eps range start:stop:step (delta)");
  sweep->add_option("--tau", tau_range, "tau range start:stop:step (rho)");
  sweep->add_flag("--extended-p", ext_s, "allow p outside [0, 1]");

  auto* verify = app.add_subcommand("verify", "check the asserted inequalities on one space");
  add_common(verify, fv);
  verify->add_option("--p", p_grid, "p grid values (default 0 0.25 0.5 0.75 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (compute->parsed()) {
      std::optional<double> param = p_c ? p_c : (eps_c ? eps_c : tau_c);
      if (const char* flag = param_flag_for(constant_c)) {
        // Only the matching flag counts; e.g. --eps does not stand in for --p.
        if (std::string(flag) == "--p") param = p_c;
        if (std::string(flag) == "--eps") param = eps_c;
        if (std::string(flag) == "--tau") param = tau_c;
      }
      return cmd_compute(fc, constant_c, param, ext_c);
    }
    if (sweep->parsed()) {
      std::string range = !p_range.empty() ? p_range : (!eps_range.empty() ? eps_range : tau_range);
      if (const char* flag = param_flag_for(constant_s)) {
        if (std::string(flag) == "--p") range = p_range;
        if (std::string(flag) == "--eps") range = eps_range;
        if (std::string(flag) == "--tau") range = tau_range;
      }
      if (range.empty()) throw normgeo::ParseError(0, "sweep requires a start:stop:step range");
      return cmd_sweep(fs, constant_s, range, ext_s);
    }
    return cmd_verify(fv, p_grid);
  } catch (const normgeo::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConverge;
  }
}
