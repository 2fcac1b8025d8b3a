#include "misc/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "misc/rates.hpp"

namespace misc::study {

field::FieldSpec ProblemConfig::make_field() const {
  field::FieldSpec spec = field::FieldSpec::test_problem(d, N);
  if (!mode_table.empty()) {
    if (static_cast<int>(mode_table.size()) < N)
      throw std::invalid_argument("ProblemConfig: mode table shorter than N");
    spec.mode_table = mode_table;
  }
  return spec;
}

field::QoISpec ProblemConfig::make_qoi() const {
  field::QoISpec qoi = field::QoISpec::test_problem(d);
  qoi.sigma = sigma;
  if (!x0.empty()) {
    if (static_cast<int>(x0.size()) != d)
      throw std::invalid_argument("ProblemConfig: x0 dimension mismatch");
    qoi.x0 = x0;
  }
  return qoi;
}

struct ProblemEvaluator::Tables {
  fd::SpatialGrid grid;
  // psi_n at every face of every direction: faces[dir][face * N + n].
  std::vector<std::vector<double>> psi_faces;
  std::vector<double> qoi_weights;  // per interior node, premultiplied by cell volume
  std::vector<double> rhs;
};

ProblemEvaluator::ProblemEvaluator(ProblemConfig config)
    : config_(std::move(config)),
      field_(config_.make_field()),
      qoi_(config_.make_qoi()) {}

const ProblemEvaluator::Tables& ProblemEvaluator::tables_for(
    const std::vector<int>& alpha) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = tables_.find(alpha);
    if (it != tables_.end()) return *it->second;
  }

  auto tables = std::make_shared<Tables>();
  tables->grid = fd::build_grid(alpha, config_.inv_h0);
  const fd::SpatialGrid& grid = tables->grid;
  if (grid.dof() > config_.dof_cap) {
    std::ostringstream msg;
    msg << "problem level (";
    for (std::size_t i = 0; i < alpha.size(); ++i) msg << (i ? "," : "") << alpha[i];
    msg << ") needs " << grid.dof() << " dofs, above the cap " << config_.dof_cap
        << "; use a smaller problem or raise dof_cap";
    throw std::runtime_error(msg.str());
  }
  const int d = grid.dims();
  const int N = field_.N;

  tables->psi_faces.resize(d);
  std::vector<double> x(d);
  for (int dir = 0; dir < d; ++dir) {
    std::vector<int> extents = grid.n;
    extents[dir] += 1;
    std::size_t count = 1;
    for (int e : extents) count *= static_cast<std::size_t>(e);
    tables->psi_faces[dir].resize(count * N);
    std::vector<int> k(d, 0);
    std::size_t face = 0;
    while (true) {
      for (int i = 0; i < d; ++i)
        x[i] = (i == dir) ? (k[i] + 0.5) * grid.h[i] : grid.coord(i, k[i]);
      for (int n = 1; n <= N; ++n)
        tables->psi_faces[dir][face * N + (n - 1)] = field::psi(field_, n, x);
      ++face;
      int i = d - 1;
      while (i >= 0 && ++k[i] == extents[i]) k[i--] = 0;
      if (i < 0) break;
    }
  }

  double cell = 1.0;
  for (int i = 0; i < d; ++i) cell *= grid.h[i];
  tables->qoi_weights.resize(grid.dof());
  tables->rhs.assign(grid.dof(), config_.rhs_const);
  std::vector<int> k(d, 0);
  std::size_t flat = 0;
  while (true) {
    for (int i = 0; i < d; ++i) x[i] = grid.coord(i, k[i]);
    tables->qoi_weights[flat++] = cell * field::qoi_weight(qoi_, x);
    int i = d - 1;
    while (i >= 0 && ++k[i] == grid.n[i]) k[i--] = 0;
    if (i < 0) break;
  }

  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = tables_.emplace(alpha, std::move(tables));
  return *it->second;
}

double ProblemEvaluator::operator()(const std::vector<int>& alpha,
                                    const std::vector<double>& y) const {
  if (static_cast<int>(alpha.size()) != config_.d)
    throw std::invalid_argument("ProblemEvaluator: alpha dimension mismatch");
  if (static_cast<int>(y.size()) != config_.N)
    throw std::invalid_argument("ProblemEvaluator: y dimension mismatch");
  const Tables& tables = tables_for(alpha);
  const int N = field_.N;

  fd::EllipticSystem sys;
  sys.grid = tables.grid;
  sys.rhs = tables.rhs;
  sys.face_coeff.resize(tables.psi_faces.size());
  for (std::size_t dir = 0; dir < tables.psi_faces.size(); ++dir) {
    const std::vector<double>& psi = tables.psi_faces[dir];
    const std::size_t faces = psi.size() / N;
    std::vector<double>& coeff = sys.face_coeff[dir];
    coeff.resize(faces);
    for (std::size_t f = 0; f < faces; ++f) {
      double exponent = 0.0;
      for (int n = 0; n < N; ++n)
        exponent += field_.lambdas[n] * psi[f * N + n] * y[n];
      coeff[f] = std::exp(exponent);
    }
  }

  fd::SolverOptions opts;
  opts.rel_tol = config_.solver_tol;
  opts.dof_cap = config_.dof_cap;
  const fd::SolveResult solution = fd::solve(sys, opts);

  double value = 0.0;
  for (std::size_t k = 0; k < solution.u.size(); ++k)
    value += solution.u[k] * tables.qoi_weights[k];
  return value;
}

Evaluator ProblemEvaluator::evaluator() const {
  return [this](const std::vector<int>& alpha, const std::vector<double>& y) {
    return (*this)(alpha, y);
  };
}

Evaluator ProblemEvaluator::pinned_evaluator(const std::vector<int>& alpha_fixed) const {
  return [this, alpha_fixed](const std::vector<int>&, const std::vector<double>& y) {
    return (*this)(alpha_fixed, y);
  };
}

Evaluator ProblemEvaluator::diagonal_evaluator() const {
  const int d = config_.d;
  return [this, d](const std::vector<int>& alpha, const std::vector<double>& y) {
    if (alpha.size() != 1)
      throw std::invalid_argument("diagonal evaluator expects a scalar spatial level");
    return (*this)(std::vector<int>(d, alpha[0]), y);
  };
}

double ProblemEvaluator::dof_cost(const std::vector<int>& alpha) const {
  double dofs = 1.0;
  for (int a : alpha)
    dofs *= static_cast<double>((static_cast<long>(config_.inv_h0) << a) - 1);
  return dofs;
}

SurplusCache::CostFn ProblemEvaluator::cost_fn() const {
  const int d = config_.d;
  const int inv_h0 = config_.inv_h0;
  return [d, inv_h0](const std::vector<int>& alpha) {
    // Collapsed lattices charge the isotropic grid they stand for.
    std::vector<int> full = alpha;
    if (static_cast<int>(alpha.size()) == 1 && d > 1) full.assign(d, alpha[0]);
    double dofs = 1.0;
    for (int a : full) dofs *= static_cast<double>((static_cast<long>(inv_h0) << a) - 1);
    return dofs;
  };
}

std::string method_name(Method m) {
  switch (m) {
    case Method::misc_apriori: return "misc-apriori";
    case Method::misc_aposteriori: return "misc-aposteriori";
    case Method::mlsc_apriori: return "mlsc-apriori";
    case Method::mlsc_aposteriori: return "mlsc-aposteriori";
    case Method::scc: return "scc";
    case Method::sgsc: return "sgsc";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "misc-apriori") return Method::misc_apriori;
  if (name == "misc-aposteriori") return Method::misc_aposteriori;
  if (name == "mlsc-apriori") return Method::mlsc_apriori;
  if (name == "mlsc-aposteriori") return Method::mlsc_aposteriori;
  if (name == "scc") return Method::scc;
  if (name == "sgsc") return Method::sgsc;
  throw std::invalid_argument("unknown method: " + name);
}

double StudyConfig::default_margin() const {
  double m = 0.0;
  for (int i = 0; i < rates.D(); ++i) m = std::max(m, rates.rs[i] + rates.gammas[i]);
  return 2.0 * m;
}

ReferenceResult reference_value(const ProblemEvaluator& problem, const RateModel& rates,
                                double L_ref) {
  ReferenceResult result;
  result.L = L_ref;
  result.set = apriori_set(L_ref, rates, rates.D(), rates.N());
  SurplusCache cache(problem.cost_fn());
  result.value = estimate(result.set, problem.evaluator(), EstimateMode::surplus, cache);
  return result;
}

namespace {

double set_model_work(const IndexSet& set, const RateModel& rates) {
  double total = 0.0;
  for (const MultiIndex& idx : set.members()) total += work_contribution_model(idx, rates);
  return total;
}

ConvergenceRecord make_record(const std::string& method, double threshold,
                              const IndexSet& set, const RateModel& work_rates,
                              double est, double reference, const SurplusCache& cache) {
  ConvergenceRecord rec;
  rec.method = method;
  rec.threshold = threshold;
  rec.set_size = set.size();
  rec.work_model = set_model_work(set, work_rates);
  rec.work_measured = cache.measured_work();
  rec.estimate = est;
  rec.abs_error = std::abs(est - reference);
  return rec;
}

}  // namespace

std::vector<ConvergenceRecord> convergence_study(const StudyConfig& config,
                                                 const ProblemEvaluator& problem,
                                                 double reference, SurplusCache& cache) {
  if (config.thresholds.empty())
    throw std::invalid_argument("convergence_study: empty threshold schedule");
  if (config.method == Method::sgsc)
    throw std::invalid_argument("convergence_study: sgsc produces curves, use sgsc_study");

  const RateModel& rates = config.rates;
  const int D = rates.D();
  const int N = rates.N();
  const std::string name = method_name(config.method);
  const double buffer_margin =
      config.aposteriori_buffer_margin.value_or(config.default_margin());

  std::vector<ConvergenceRecord> records;
  for (double threshold : config.thresholds) {
    ConvergenceRecord rec;
    rec.method = name;
    rec.threshold = threshold;
    try {
      switch (config.method) {
        case Method::misc_apriori: {
          IndexSet set = apriori_set(threshold, rates, D, N);
          const double est = estimate(set, problem.evaluator(), EstimateMode::surplus, cache);
          rec = make_record(name, threshold, set, rates, est, reference, cache);
          break;
        }
        case Method::misc_aposteriori: {
          IndexSet buffer = apriori_set(threshold + buffer_margin, rates, D, N);
          IndexSet set = aposteriori_set(std::exp(-threshold), buffer, problem.evaluator(),
                                         cache, rates);
          const double est = estimate(set, problem.evaluator(), EstimateMode::surplus, cache);
          rec = make_record(name, threshold, set, rates, est, reference, cache);
          break;
        }
        case Method::mlsc_apriori: {
          const RateModel collapsed = collapse_rates(rates);
          IndexSet set = mlsc_collapsed_set(threshold, rates, N);
          const double est =
              estimate(set, problem.diagonal_evaluator(), EstimateMode::surplus, cache);
          rec = make_record(name, threshold, set, collapsed, est, reference, cache);
          break;
        }
        case Method::mlsc_aposteriori: {
          const RateModel collapsed = collapse_rates(rates);
          IndexSet set = mlsc_collapsed_set_aposteriori(
              std::exp(-threshold), threshold + buffer_margin, rates, N,
              problem.diagonal_evaluator(), cache);
          const double est =
              estimate(set, problem.diagonal_evaluator(), EstimateMode::surplus, cache);
          rec = make_record(name, threshold, set, collapsed, est, reference, cache);
          break;
        }
        case Method::scc: {
          const RateModel collapsed = collapse_rates(rates);
          IndexSet set = scc_set(static_cast<int>(std::lround(threshold)), N);
          const double est =
              estimate(set, problem.diagonal_evaluator(), EstimateMode::surplus, cache);
          rec = make_record(name, threshold, set, collapsed, est, reference, cache);
          break;
        }
        case Method::sgsc:
          break;  // unreachable
      }
    } catch (const std::exception& err) {
      rec.ok = false;
      rec.message = err.what();
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<std::vector<ConvergenceRecord>> sgsc_study(const StudyConfig& config,
                                                       const ProblemEvaluator& problem,
                                                       double reference, SurplusCache& cache) {
  if (config.sgsc_alpha_levels.empty())
    throw std::invalid_argument("sgsc_study: no spatial levels configured");
  const RateModel& rates = config.rates;
  const int D = config.problem.d;
  const int N = rates.N();

  std::vector<std::vector<ConvergenceRecord>> curves;
  for (int level : config.sgsc_alpha_levels) {
    const std::vector<int> alpha_fixed(D, level);
    const std::string name = "sgsc-a" + std::to_string(level);
    // Work model of one term with alpha pinned at the isotropic level.
    RateModel work_rates = collapse_rates(rates);
    const Evaluator pinned = problem.pinned_evaluator(alpha_fixed);

    std::vector<ConvergenceRecord> records;
    for (double threshold : config.thresholds) {
      ConvergenceRecord rec;
      rec.method = name;
      rec.threshold = threshold;
      try {
        IndexSet stoc = sgsc_stochastic_set(threshold, rates, N);
        const double est = estimate(stoc, pinned, EstimateMode::surplus, cache);
        rec.set_size = stoc.size();
        double total = 0.0;
        for (const MultiIndex& idx : stoc.members()) {
          MultiIndex full(std::vector<int>{level}, idx.beta);
          total += work_contribution_model(full, work_rates);
        }
        rec.work_model = total;
        rec.work_measured = cache.measured_work();
        rec.estimate = est;
        rec.abs_error = std::abs(est - reference);
      } catch (const std::exception& err) {
        rec.ok = false;
        rec.message = err.what();
      }
      records.push_back(std::move(rec));
    }
    curves.push_back(std::move(records));
  }
  return curves;
}

std::vector<std::pair<double, double>> error_work_points(
    const std::vector<ConvergenceRecord>& records) {
  std::vector<std::pair<double, double>> points;
  for (const ConvergenceRecord& rec : records)
    if (rec.ok) points.emplace_back(rec.work_model, rec.abs_error);
  return points;
}

std::vector<std::pair<double, double>> lower_envelope(
    const std::vector<std::vector<std::pair<double, double>>>& curves) {
  std::vector<double> grid;
  for (const auto& curve : curves)
    for (const auto& [w, e] : curve) grid.push_back(w);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<std::pair<double, double>> envelope;
  for (double w : grid) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& curve : curves) {
      for (const auto& [cw, ce] : curve) {
        if (cw <= w) best = std::min(best, ce);
      }
    }
    if (std::isfinite(best)) envelope.emplace_back(w, best);
  }
  return envelope;
}

std::optional<double> error_at_work(const std::vector<ConvergenceRecord>& records,
                                    double work_budget) {
  std::optional<double> best;
  for (const ConvergenceRecord& rec : records) {
    if (!rec.ok || rec.work_model > work_budget) continue;
    if (!best || rec.abs_error < *best) best = rec.abs_error;
  }
  return best;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ConvergenceRecord>& records) {
  os << "method,threshold,set_size,work_model,work_measured,estimate,abs_error\n";
  for (const ConvergenceRecord& rec : records) {
    os << rec.method << "," << fmt(rec.threshold) << "," << rec.set_size << ","
       << fmt(rec.work_model) << "," << fmt(rec.work_measured) << ",";
    if (rec.ok) {
      os << fmt(rec.estimate) << "," << fmt(rec.abs_error);
    } else {
      os << "nan,nan";
    }
    os << "\n";
  }
}

std::vector<ConvergenceRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("csv: empty file");
  const std::string expected = "method,threshold,set_size,work_model,work_measured,estimate,abs_error";
  if (line != expected) throw std::runtime_error("csv: unexpected header: " + line);
  std::vector<ConvergenceRecord> records;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    ConvergenceRecord rec;
    std::string token;
    std::getline(ls, rec.method, ',');
    std::getline(ls, token, ',');
    rec.threshold = std::stod(token);
    std::getline(ls, token, ',');
    rec.set_size = static_cast<std::size_t>(std::stoul(token));
    std::getline(ls, token, ',');
    rec.work_model = std::stod(token);
    std::getline(ls, token, ',');
    rec.work_measured = std::stod(token);
    std::getline(ls, token, ',');
    rec.estimate = std::stod(token);
    std::getline(ls, token, ',');
    rec.abs_error = std::stod(token);
    rec.ok = !std::isnan(rec.abs_error);
    records.push_back(std::move(rec));
  }
  return records;
}

void emit_plot_script(std::ostream& os, const std::vector<std::string>& csv_paths,
                      double zeta, int zfrak) {
  if (csv_paths.empty()) throw std::invalid_argument("emit_plot_script: no csv inputs");
  os << "#!/usr/bin/env python3\n"
     << "# Error against model work, one series per method, with the\n"
     << "# predicted-rate guide curve.\n"
     << "import csv, math\n"
     << "import matplotlib\n"
     << "matplotlib.use('Agg')\n"
     << "import matplotlib.pyplot as plt\n\n"
     << "paths = [\n";
  for (const std::string& p : csv_paths) os << "    " << '"' << p << '"' << ",\n";
  os << "]\n"
     << "zeta, zfrak = " << fmt(zeta) << ", " << zfrak << "\n\n"
     << "series = {}\n"
     << "for path in paths:\n"
     << "    with open(path) as f:\n"
     << "        rows = list(csv.DictReader(f))\n"
     << "    if not rows:\n"
     << "        raise SystemExit(f'empty csv: {path}')\n"
     << "    for col in ('method', 'work_model', 'abs_error'):\n"
     << "        if col not in rows[0]:\n"
     << "            raise SystemExit(f'missing column {col} in {path}')\n"
     << "    for row in rows:\n"
     << "        err = float(row['abs_error'])\n"
     << "        if math.isnan(err):\n"
     << "            continue\n"
     << "        series.setdefault(row['method'], []).append((float(row['work_model']), err))\n\n"
     << "fig, ax = plt.subplots(figsize=(7, 5))\n"
     << "for name in sorted(series):\n"
     << "    pts = sorted(series[name])\n"
     << "    ax.loglog([p[0] for p in pts], [p[1] for p in pts], marker='o', label=name)\n"
     << "all_pts = sorted(p for pts in series.values() for p in pts)\n"
     << "if all_pts:\n"
     << "    w0, e0 = all_pts[-1]\n"
     << "    guide_w = [p[0] for p in all_pts if p[0] > 1.0]\n"
     << "    shape = lambda w: w ** (-zeta) * math.log(w) ** ((zeta + 1) * (zfrak - 1))\n"
     << "    scale = e0 / shape(w0)\n"
     << "    ax.loglog(guide_w, [scale * shape(w) for w in guide_w], 'k--',\n"
     << "              label=f'W^(-{zeta:g}) guide')\n"
     << "ax.set_xlabel('model work')\n"
     << "ax.set_ylabel('error vs reference')\n"
     << "ax.grid(True, which='both', alpha=0.3)\n"
     << "ax.legend()\n"
     << "fig.tight_layout()\n"
     << "fig.savefig('convergence.png', dpi=150)\n"
     << "print('wrote convergence.png')\n";
}

double tail_slope(const std::vector<ConvergenceRecord>& records, int points) {
  std::vector<double> lw, le;
  for (const ConvergenceRecord& rec : records) {
    if (!rec.ok || rec.abs_error <= 0.0) continue;
    lw.push_back(std::log(rec.work_model));
    le.push_back(std::log(rec.abs_error));
  }
  if (static_cast<int>(lw.size()) < points)
    throw std::runtime_error("tail_slope: not enough usable records");
  lw.erase(lw.begin(), lw.end() - points);
  le.erase(le.begin(), le.end() - points);
  const int n = points;
  double mx = 0.0, my = 0.0;
  for (int k = 0; k < n; ++k) {
    mx += lw[k];
    my += le[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (int k = 0; k < n; ++k) {
    sxy += (lw[k] - mx) * (le[k] - my);
    sxx += (lw[k] - mx) * (lw[k] - mx);
  }
  return sxy / sxx;
}

const std::vector<double>& test_problem_g_table() {
  static const std::vector<double> table = {2.4855, 2.8174, 4.5044, 4.1938, 4.7459,
                                            6.8444, 7.1513, 7.8622, 8.6584, 9.4545};
  return table;
}

RateModel resolve_rates(const RateSource& source, const ProblemEvaluator& problem) {
  const int D = problem.config().d;
  const int N = problem.config().N;

  std::vector<double> gamma_tilde = source.gamma_tilde;
  if (gamma_tilde.empty()) gamma_tilde.assign(D, source.theta);
  std::vector<double> r_tilde = source.r_tilde;
  std::vector<double> g = source.g;

  if (source.kind == "explicit") {
    if (r_tilde.empty() || g.empty())
      throw std::invalid_argument("resolve_rates: explicit source needs r_tilde and g");
  } else if (source.kind == "table") {
    if (r_tilde.empty()) r_tilde.assign(D, 2.0);
    if (N > static_cast<int>(test_problem_g_table().size()))
      throw std::invalid_argument("resolve_rates: g table covers only N <= 10");
    g.assign(test_problem_g_table().begin(), test_problem_g_table().begin() + N);
  } else if (source.kind == "apriori-lemma") {
    if (r_tilde.empty()) r_tilde.assign(D, 2.0);
    const auto lemma =
        rates::apriori_g(N, problem.config().make_field().lambdas, source.eps_E);
    g = lemma.g_tilde;
  } else if (source.kind == "fitted") {
    SurplusCache cache(problem.cost_fn());
    rates::FitOptions opts;
    opts.noise_floor = source.noise_floor;
    if (r_tilde.empty()) {
      std::vector<rates::RaySamples> rays;
      for (int i = 0; i < D; ++i)
        rays.push_back(rates::sample_spatial_ray(i, source.spatial_j_max,
                                                 problem.evaluator(), cache, D, N));
      r_tilde = rates::fit_spatial_rates(rays, opts);
    }
    std::vector<int> alpha_fine = source.alpha_fine;
    if (alpha_fine.empty()) alpha_fine.assign(D, D == 1 ? 4 : 3);
    std::vector<rates::RaySamples> rays;
    for (int n = 0; n < N; ++n)
      rays.push_back(rates::sample_stochastic_ray(n, source.stochastic_j_max, alpha_fine,
                                                  problem.evaluator(), cache, N));
    g = rates::fit_stochastic_rates(rays, opts);
  } else {
    throw std::invalid_argument("resolve_rates: unknown source kind " + source.kind);
  }

  return RateModel::from_tilde(gamma_tilde, r_tilde, g);
}

}  // namespace misc::study
