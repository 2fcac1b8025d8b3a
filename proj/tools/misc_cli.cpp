// Command-line front end: fit rates, build index sets, evaluate estimators,
// run convergence studies and produce plot scripts for the elliptic test
// problem.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "misc/config.hpp"
#include "misc/index_sets.hpp"
#include "misc/rates.hpp"
#include "misc/study.hpp"

namespace {

using namespace misc;
using study::LoadedConfig;

struct CommonOpts {
  std::string config_path;
};

LoadedConfig require_config(const CommonOpts& opts) {
  if (opts.config_path.empty()) throw std::runtime_error("--config is required");
  return study::load_config(opts.config_path);
}

double reference_threshold(const LoadedConfig& cfg) {
  if (cfg.reference_L) return *cfg.reference_L;
  switch (cfg.study.method) {
    case study::Method::misc_apriori:
    case study::Method::misc_aposteriori:
    case study::Method::mlsc_apriori:
    case study::Method::mlsc_aposteriori: {
      if (cfg.study.thresholds.empty())
        throw std::runtime_error("reference: no thresholds to derive L_ref from");
      const double margin = cfg.reference_margin.value_or(cfg.study.default_margin());
      double max_l = cfg.study.thresholds.front();
      for (double t : cfg.study.thresholds) max_l = std::max(max_l, t);
      return max_l + margin;
    }
    default:
      throw std::runtime_error(
          "reference: methods with non-L schedules need an explicit reference.L");
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

int run_fit_rates(const CommonOpts& common, const std::string& out_path) {
  LoadedConfig cfg = require_config(common);
  cfg.rate_source.kind = "fitted";
  study::ProblemEvaluator problem(cfg.study.problem);
  const RateModel rates = study::resolve_rates(cfg.rate_source, problem);
  const std::string text = study::rates_to_json(rates);
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    open_out(out_path) << text << "\n";
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int run_build_set(const CommonOpts& common, double threshold, const std::string& out_path) {
  LoadedConfig cfg = require_config(common);
  study::ProblemEvaluator problem(cfg.study.problem);
  const RateModel rates = study::resolve_rates(cfg.rate_source, problem);
  const int D = cfg.study.problem.d;
  const int N = cfg.study.problem.N;

  IndexSet set(D, N);
  switch (cfg.study.method) {
    case study::Method::misc_apriori:
      set = apriori_set(threshold, rates, D, N);
      break;
    case study::Method::misc_aposteriori: {
      SurplusCache cache(problem.cost_fn());
      const double margin =
          cfg.study.aposteriori_buffer_margin.value_or(cfg.study.default_margin());
      IndexSet buffer = apriori_set(threshold + margin, rates, D, N);
      set = aposteriori_set(std::exp(-threshold), buffer, problem.evaluator(), cache, rates);
      break;
    }
    case study::Method::mlsc_apriori:
      set = mlsc_set(threshold, rates, D, N);
      break;
    case study::Method::scc:
      set = scc_set(static_cast<int>(std::lround(threshold)), N);
      break;
    default:
      throw std::runtime_error("build-set: unsupported method " +
                               study::method_name(cfg.study.method));
  }
  if (out_path.empty()) {
    write_index_set(std::cout, set);
  } else {
    auto out = open_out(out_path);
    write_index_set(out, set);
    std::cout << "wrote " << out_path << " (" << set.size() << " indices)\n";
  }
  return 0;
}

int run_estimate(const CommonOpts& common, const std::string& set_path,
                 const std::string& mode_name) {
  LoadedConfig cfg = require_config(common);
  study::ProblemEvaluator problem(cfg.study.problem);
  std::ifstream in(set_path);
  if (!in) throw std::runtime_error("cannot open set file: " + set_path);
  IndexSet set = read_index_set(in);

  Evaluator eval;
  if (set.D() == cfg.study.problem.d)
    eval = problem.evaluator();
  else if (set.D() == 1)
    eval = problem.diagonal_evaluator();
  else
    throw std::runtime_error("estimate: set dimensions do not match the problem");

  const EstimateMode mode = mode_name == "combination" ? EstimateMode::combination
                                                       : EstimateMode::surplus;
  SurplusCache cache(problem.cost_fn());
  const double value = estimate(set, eval, mode, cache);
  std::cout << "estimate " << std::setprecision(17) << value << "\n"
            << "set_size " << set.size() << "\n"
            << "evaluator_calls " << cache.evaluator_calls() << "\n"
            << "work_measured " << cache.measured_work() << "\n";
  return 0;
}

int run_reference(const CommonOpts& common, const std::string& out_path,
                  const std::string& set_out) {
  LoadedConfig cfg = require_config(common);
  study::ProblemEvaluator problem(cfg.study.problem);
  const RateModel rates = study::resolve_rates(cfg.rate_source, problem);
  const double L_ref = reference_threshold(cfg);
  const study::ReferenceResult ref = study::reference_value(problem, rates, L_ref);
  std::ostringstream body;
  body << "{\n  \"L\": " << std::setprecision(17) << ref.L
       << ",\n  \"set_size\": " << ref.set.size() << ",\n  \"value\": " << ref.value
       << "\n}\n";
  if (out_path.empty())
    std::cout << body.str();
  else {
    open_out(out_path) << body.str();
    std::cout << "wrote " << out_path << "\n";
  }
  if (!set_out.empty()) {
    auto out = open_out(set_out);
    write_index_set(out, ref.set);
  }
  return 0;
}

int run_converge(const CommonOpts& common, const std::string& out_path) {
  LoadedConfig cfg = require_config(common);
  study::ProblemEvaluator problem(cfg.study.problem);
  cfg.study.rates = study::resolve_rates(cfg.rate_source, problem);
  const double L_ref = reference_threshold(cfg);
  const study::ReferenceResult ref = study::reference_value(problem, cfg.study.rates, L_ref);

  std::vector<study::ConvergenceRecord> records;
  SurplusCache cache(problem.cost_fn());
  if (cfg.study.method == study::Method::sgsc) {
    auto curves = study::sgsc_study(cfg.study, problem, ref.value, cache);
    std::vector<std::vector<std::pair<double, double>>> points;
    for (const auto& curve : curves) {
      points.push_back(study::error_work_points(curve));
      records.insert(records.end(), curve.begin(), curve.end());
    }
    for (const auto& [w, e] : study::lower_envelope(points)) {
      study::ConvergenceRecord rec;
      rec.method = "sgsc-envelope";
      rec.work_model = w;
      rec.abs_error = e;
      rec.estimate = std::numeric_limits<double>::quiet_NaN();
      records.push_back(rec);
    }
  } else {
    records = study::convergence_study(cfg.study, problem, ref.value, cache);
  }

  const std::string path = out_path.empty() ? cfg.csv_path : out_path;
  if (path.empty()) {
    study::write_csv(std::cout, records);
  } else {
    auto out = open_out(path);
    study::write_csv(out, records);
    std::cout << "wrote " << path << " (" << records.size() << " records, reference "
              << std::setprecision(17) << ref.value << ")\n";
  }
  int failures = 0;
  for (const auto& rec : records)
    if (!rec.ok) {
      std::cerr << "threshold " << rec.threshold << " failed: " << rec.message << "\n";
      ++failures;
    }
  return failures == 0 ? 0 : 1;
}

int run_envelope(const std::vector<std::string>& csvs, const std::string& out_path) {
  if (csvs.empty()) throw std::runtime_error("envelope: no input csv files");
  std::vector<std::vector<std::pair<double, double>>> curves;
  for (const std::string& path : csvs) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::map<std::string, std::vector<std::pair<double, double>>> by_method;
    for (const auto& rec : study::read_csv(in))
      if (rec.ok) by_method[rec.method].emplace_back(rec.work_model, rec.abs_error);
    for (auto& [name, pts] : by_method) curves.push_back(std::move(pts));
  }
  std::vector<study::ConvergenceRecord> records;
  for (const auto& [w, e] : study::lower_envelope(curves)) {
    study::ConvergenceRecord rec;
    rec.method = "envelope";
    rec.work_model = w;
    rec.abs_error = e;
    rec.estimate = std::numeric_limits<double>::quiet_NaN();
    records.push_back(rec);
  }
  if (out_path.empty())
    study::write_csv(std::cout, records);
  else {
    auto out = open_out(out_path);
    study::write_csv(out, records);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int run_plot(const std::vector<std::string>& csvs, const std::string& out_path, double zeta,
             int zfrak) {
  for (const std::string& path : csvs) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    const auto records = study::read_csv(in);
    if (records.empty()) throw std::runtime_error("plot: empty csv " + path);
  }
  if (out_path.empty()) {
    study::emit_plot_script(std::cout, csvs, zeta, zfrak);
  } else {
    auto out = open_out(out_path);
    study::emit_plot_script(out, csvs, zeta, zfrak);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-index stochastic collocation for the elliptic test problem"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string out_path, set_path, set_out, mode_name = "surplus";
  double threshold = 0.0;
  double zeta = 2.0;
  int zfrak = 1;
  std::vector<std::string> csvs;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", common.config_path, "study configuration (json)");
  };

  CLI::App* fit = app.add_subcommand("fit-rates", "fit spatial and stochastic decay rates");
  add_config(fit);
  fit->add_option("--out", out_path, "output rates json");

  CLI::App* build = app.add_subcommand("build-set", "construct an index set");
  add_config(build);
  build->add_option("--threshold", threshold, "profit threshold L (or total degree w)")
      ->required();
  build->add_option("--out", out_path, "output set file");

  CLI::App* est = app.add_subcommand("estimate", "evaluate the estimator on a stored set");
  add_config(est);
  est->add_option("--set", set_path, "index set file")->required();
  est->add_option("--mode", mode_name, "surplus | combination");

  CLI::App* ref = app.add_subcommand("reference", "well-resolved reference value");
  add_config(ref);
  ref->add_option("--out", out_path, "output json");
  ref->add_option("--set-out", set_out, "also store the reference index set");

  CLI::App* conv = app.add_subcommand("converge", "error-vs-work convergence study");
  add_config(conv);
  conv->add_option("--out", out_path, "output csv (default from config)");

  CLI::App* env = app.add_subcommand("envelope", "lower envelope of convergence curves");
  env->add_option("csvs", csvs, "input csv files")->required();
  env->add_option("--out", out_path, "output csv");

  CLI::App* plot = app.add_subcommand("plot", "emit a python plot script");
  plot->add_option("csvs", csvs, "input csv files")->required();
  plot->add_option("--out", out_path, "output .py path");
  plot->add_option("--zeta", zeta, "guide-curve error exponent");
  plot->add_option("--zfrak", zfrak, "guide-curve log multiplicity");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed()) return run_fit_rates(common, out_path);
    if (build->parsed()) return run_build_set(common, threshold, out_path);
    if (est->parsed()) return run_estimate(common, set_path, mode_name);
    if (ref->parsed()) return run_reference(common, out_path, set_out);
    if (conv->parsed()) return run_converge(common, out_path);
    if (env->parsed()) return run_envelope(csvs, out_path);
    if (plot->parsed()) return run_plot(csvs, out_path, zeta, zfrak);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
