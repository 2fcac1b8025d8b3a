// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line with the measured quantities. Criteria run against pinned tolerances.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "misc/collocation.hpp"
#include "misc/fd_solver.hpp"
#include "misc/index_sets.hpp"
#include "misc/rates.hpp"
#include "misc/study.hpp"
#include "test_util.hpp"

using namespace misc;

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

double uniform_moment(const std::vector<int>& degrees) {
  double m = 1.0;
  for (int p : degrees) m *= (p % 2 == 1) ? 0.0 : 1.0 / (p + 1);
  return m;
}

double tensor_monomial(const colloc::TensorGrid& grid, const std::vector<int>& degrees) {
  double sum = 0.0;
  for (std::size_t j = 0; j < grid.points.size(); ++j) {
    double v = grid.weights[j];
    for (std::size_t n = 0; n < degrees.size(); ++n)
      v *= std::pow(grid.points[j][n], degrees[n]);
    sum += v;
  }
  return sum;
}

IndexSet full_box(const std::vector<int>& alpha_max, const std::vector<int>& beta_max) {
  const int D = static_cast<int>(alpha_max.size());
  const int N = static_cast<int>(beta_max.size());
  IndexSet set(D, N);
  MultiIndex idx = MultiIndex::ones(D, N);
  while (true) {
    set.insert(idx);
    int k = D + N - 1;
    while (k >= 0) {
      const int cap = k < D ? alpha_max[k] : beta_max[k - D];
      if (++idx.component(k) <= cap) break;
      idx.component(k) = 1;
      --k;
    }
    if (k < 0) break;
  }
  return set;
}

study::ProblemConfig problem_config(int d, int N, std::size_t dof_cap) {
  study::ProblemConfig cfg;
  cfg.d = d;
  cfg.N = N;
  cfg.dof_cap = dof_cap;
  return cfg;
}

RateModel table_rates(int D, int N) {
  std::vector<double> g(study::test_problem_g_table().begin(),
                        study::test_problem_g_table().begin() + N);
  return RateModel::from_tilde(std::vector<double>(D, 1.0), std::vector<double>(D, 2.0), g);
}

}  // namespace

TEST_CASE("quadrature exactness") {
  Stopwatch timer;
  const std::vector<std::pair<double, double>> iv1{{-1.0, 1.0}};
  double worst = 0.0;
  long checks = 0;
  std::mt19937 rng(11);

  // N = 1: every level and every admissible degree.
  for (int l = 1; l <= 6; ++l) {
    const auto grid = colloc::tensor_grid({l}, iv1);
    for (int p = 0; p < colloc::level_to_nodes(l); ++p) {
      worst = std::max(worst, std::abs(tensor_monomial(grid, {p}) - uniform_moment({p})));
      ++checks;
    }
  }
  // N = 2: exhaustive through level 4, sampled monomials at the top levels.
  const std::vector<std::pair<double, double>> iv2{{-1.0, 1.0}, {-1.0, 1.0}};
  for (int l1 = 1; l1 <= 4; ++l1)
    for (int l2 = 1; l2 <= 4; ++l2) {
      const auto grid = colloc::tensor_grid({l1, l2}, iv2);
      for (int p1 = 0; p1 < colloc::level_to_nodes(l1); ++p1)
        for (int p2 = 0; p2 < colloc::level_to_nodes(l2); ++p2) {
          worst = std::max(worst,
                           std::abs(tensor_monomial(grid, {p1, p2}) - uniform_moment({p1, p2})));
          ++checks;
        }
    }
  for (const auto& levels : {std::vector<int>{6, 5}, {5, 6}, {6, 6}}) {
    const auto grid = colloc::tensor_grid(levels, iv2);
    const int m1 = colloc::level_to_nodes(levels[0]), m2 = colloc::level_to_nodes(levels[1]);
    std::vector<std::vector<int>> degs{{m1 - 1, m2 - 1}, {m1 - 1, 0}, {0, m2 - 1}};
    for (int trial = 0; trial < 30; ++trial)
      degs.push_back({static_cast<int>(rng() % m1), static_cast<int>(rng() % m2)});
    for (const auto& d : degs) {
      worst = std::max(worst, std::abs(tensor_monomial(grid, d) - uniform_moment(d)));
      ++checks;
    }
  }
  // N = 3: exhaustive at low levels, sampled tuples up to level 6.
  const std::vector<std::pair<double, double>> iv3(3, {-1.0, 1.0});
  for (int l1 = 1; l1 <= 2; ++l1)
    for (int l2 = 1; l2 <= 2; ++l2)
      for (int l3 = 1; l3 <= 2; ++l3) {
        const auto grid = colloc::tensor_grid({l1, l2, l3}, iv3);
        for (int p1 = 0; p1 < colloc::level_to_nodes(l1); ++p1)
          for (int p2 = 0; p2 < colloc::level_to_nodes(l2); ++p2)
            for (int p3 = 0; p3 < colloc::level_to_nodes(l3); ++p3) {
              worst = std::max(worst, std::abs(tensor_monomial(grid, {p1, p2, p3}) -
                                               uniform_moment({p1, p2, p3})));
              ++checks;
            }
      }
  for (const auto& levels : {std::vector<int>{4, 3, 2}, {6, 1, 2}, {3, 3, 3}, {6, 2, 1}}) {
    const auto grid = colloc::tensor_grid(levels, iv3);
    std::vector<std::vector<int>> degs;
    std::vector<int> corner(3);
    for (int n = 0; n < 3; ++n) corner[n] = colloc::level_to_nodes(levels[n]) - 1;
    degs.push_back(corner);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<int> d(3);
      for (int n = 0; n < 3; ++n) d[n] = static_cast<int>(rng() % (corner[n] + 1));
      degs.push_back(d);
    }
    for (const auto& d : degs) {
      worst = std::max(worst, std::abs(tensor_monomial(grid, d) - uniform_moment(d)));
      ++checks;
    }
  }

  const double elapsed = timer.seconds();
  const bool pass = worst <= 1e-12 && elapsed < 1.0;
  report("quadrature exactness", pass,
         fmt("max |Q - moment| = %.3e over %ld checks (tol 1e-12), %.2f s (limit 1 s)",
             worst, checks, elapsed));
  CHECK(worst <= 1e-12);
  CHECK(elapsed < 1.0);
}

TEST_CASE("nestedness and new-point counts") {
  double worst = 0.0;
  for (int l = 1; l < 8; ++l) {
    const auto coarse = colloc::cc_nodes(l);
    const auto fine = colloc::cc_nodes(l + 1);
    for (double c : coarse) {
      double best = 1e300;
      for (double f : fine) best = std::min(best, std::abs(c - f));
      worst = std::max(worst, best);
    }
  }
  bool counts_ok = colloc::new_point_count(1) == 1 && colloc::new_point_count(2) == 2;
  for (int l = 3; l <= 8; ++l)
    counts_ok = counts_ok && colloc::new_point_count(l) == (1 << (l - 2));

  const bool pass = worst <= 1e-14 && counts_ok;
  report("nestedness and new-point counts", pass,
         fmt("max nesting distance %.2e (tol 1e-14), case formula %s", worst,
             counts_ok ? "exact" : "violated"));
  CHECK(worst <= 1e-14);
  CHECK(counts_ok);
}

TEST_CASE("telescoping identity") {
  Stopwatch timer;
  double worst_rel = 0.0;

  // Analytic evaluator, boxes up to (3,3;3,3).
  const auto analytic = testutil::analytic_evaluator(2, 2);
  for (const auto& corner :
       {std::array<int, 4>{2, 2, 2, 2}, {3, 2, 2, 3}, {3, 3, 3, 3}, {1, 3, 2, 1}}) {
    const std::vector<int> a{corner[0], corner[1]}, b{corner[2], corner[3]};
    SurplusCache cache;
    const double est = estimate(full_box(a, b), analytic, EstimateMode::surplus, cache);
    SurplusCache fresh;
    const double q = tensor_quadrature(a, b, analytic, fresh);
    worst_rel = std::max(worst_rel, std::abs(est - q) / std::abs(q));
  }

  // The d=1 problem, boxes up to (3;3).
  const study::ProblemEvaluator problem(problem_config(1, 1, 1 << 14));
  for (const auto& corner : {std::array<int, 2>{2, 2}, {3, 2}, {3, 3}}) {
    const std::vector<int> a{corner[0]}, b{corner[1]};
    SurplusCache cache(problem.cost_fn());
    const double est =
        estimate(full_box(a, b), problem.evaluator(), EstimateMode::surplus, cache);
    SurplusCache fresh(problem.cost_fn());
    const double q = tensor_quadrature(a, b, problem.evaluator(), fresh);
    worst_rel = std::max(worst_rel, std::abs(est - q) / std::abs(q));
  }

  const double elapsed = timer.seconds();
  const bool pass = worst_rel <= 1e-12 && elapsed < 30.0;
  report("telescoping identity", pass,
         fmt("max relative gap %.3e (tol 1e-12), %.2f s (limit 30 s)", worst_rel, elapsed));
  CHECK(worst_rel <= 1e-12);
  CHECK(elapsed < 30.0);
}

TEST_CASE("coefficient normalization") {
  const auto eval = testutil::analytic_evaluator(2, 2);
  int bad_sums = 0;
  double worst_rel = 0.0;
  for (unsigned seed = 1; seed <= 50; ++seed) {
    const int D = 1 + seed % 2;
    const int N = 1 + (seed / 2) % 2;
    const IndexSet set =
        testutil::random_downward_closed(D, N, 10 + static_cast<int>(seed % 23), seed);
    int sum = 0;
    for (const auto& [idx, c] : combination_coefficients(set)) sum += c;
    if (sum != 1) ++bad_sums;

    const auto ev = testutil::analytic_evaluator(D, N);
    SurplusCache c1, c2;
    const double surplus = estimate(set, ev, EstimateMode::surplus, c1);
    const double combo = estimate(set, ev, EstimateMode::combination, c2);
    worst_rel = std::max(worst_rel, std::abs(surplus - combo) / std::abs(combo));
  }
  (void)eval;
  const bool pass = bad_sums == 0 && worst_rel <= 1e-12;
  report("coefficient normalization", pass,
         fmt("coefficient sums: %d/50 off, mode gap %.3e (tol 1e-12)", bad_sums, worst_rel));
  CHECK(bad_sums == 0);
  CHECK(worst_rel <= 1e-12);
}

TEST_CASE("fd order") {
  Stopwatch timer;

  auto manufactured_error = [](const std::vector<int>& alpha) {
    const int d = static_cast<int>(alpha.size());
    const auto grid = fd::build_grid(alpha, 3);
    const auto f = [d](const std::vector<double>& x) {
      double u = 1.0;
      for (double xi : x) u *= std::sin(std::numbers::pi * xi);
      return d * std::numbers::pi * std::numbers::pi * u;
    };
    const auto sys = fd::assemble(
        grid, [](const std::vector<double>&) { return 1.0; }, f);
    const auto sol = fd::solve(sys, {.rel_tol = 1e-12});
    double err = 0.0;
    std::vector<int> k(d, 0);
    std::size_t flat = 0;
    while (true) {
      double u = 1.0;
      for (int i = 0; i < d; ++i) u *= std::sin(std::numbers::pi * grid.coord(i, k[i]));
      err = std::max(err, std::abs(sol.u[flat++] - u));
      int i = d - 1;
      while (i >= 0 && ++k[i] == grid.n[i]) k[i--] = 0;
      if (i < 0) break;
    }
    return err;
  };

  std::vector<double> ratios;
  {
    const double e2 = manufactured_error({2}), e3 = manufactured_error({3}),
                 e4 = manufactured_error({4});
    ratios.push_back(e2 / e3);
    ratios.push_back(e3 / e4);
  }
  {
    const double e1 = manufactured_error({1, 1, 1}), e2 = manufactured_error({2, 2, 2}),
                 e3 = manufactured_error({3, 3, 3});
    ratios.push_back(e1 / e2);
    ratios.push_back(e2 / e3);
  }
  bool ratios_ok = true;
  for (double r : ratios) ratios_ok = ratios_ok && r >= 3.2 && r <= 4.8;

  // Fitted spatial rate for the actual problem (d=1).
  study::ProblemConfig cfg = problem_config(1, 1, 1 << 14);
  cfg.solver_tol = 1e-12;
  const study::ProblemEvaluator problem(cfg);
  SurplusCache cache(problem.cost_fn());
  const auto ray = rates::sample_spatial_ray(0, 4, problem.evaluator(), cache, 1, 1);
  const double r_tilde = rates::fit_spatial_rates({ray})[0];

  const double elapsed = timer.seconds();
  const bool pass = ratios_ok && r_tilde >= 1.7 && r_tilde <= 2.3 && elapsed < 120.0;
  report("fd order", pass,
         fmt("refinement ratios [%.2f %.2f %.2f %.2f] (window [3.2,4.8]), fitted r~ = %.3f "
             "(window [1.7,2.3]), %.1f s (limit 120 s)",
             ratios[0], ratios[1], ratios[2], ratios[3], r_tilde, elapsed));
  CHECK(ratios_ok);
  CHECK(r_tilde >= 1.7);
  CHECK(r_tilde <= 2.3);
  CHECK(elapsed < 120.0);
}

TEST_CASE("rate fits") {
  Stopwatch timer;

  // Planted synthetic decays are recovered to machine precision.
  rates::RaySamples spatial;
  spatial.direction = {1, 0};
  for (int j = 1; j <= 5; ++j) {
    spatial.offsets.push_back(j);
    spatial.values.push_back(std::pow(4.0, -(1.0 + j)));
  }
  const double synth_r = rates::fit_spatial_rates({spatial})[0];

  rates::RaySamples stoc;
  stoc.direction = {0, 1};
  for (int j = 1; j <= 4; ++j) {
    stoc.offsets.push_back(j);
    stoc.values.push_back(std::exp(-1.5 * colloc::level_to_nodes(j)));
  }
  const double synth_g = rates::fit_stochastic_rates({stoc})[0];
  const bool synth_ok = std::abs(synth_r - 2.0) < 1e-12 && std::abs(synth_g - 1.5) < 1e-12;

  // Fitted g_1 for the d=1, N=1 problem with default sampling.
  study::RateSource source;
  source.kind = "fitted";
  const study::ProblemEvaluator problem(problem_config(1, 1, 1 << 14));
  const RateModel fitted = study::resolve_rates(source, problem);
  const double g1 = fitted.gs[0];
  const double target = 2.4855;
  const bool g_ok = g1 >= 0.75 * target && g1 <= 1.25 * target;

  const double elapsed = timer.seconds();
  const bool pass = synth_ok && g_ok && elapsed < 300.0;
  report("rate fits", pass,
         fmt("synthetic r~ = %.12f, g = %.12f (exact 2, 1.5); fitted g_1 = %.4f vs %.4f "
             "(+/-25%%), %.1f s (limit 300 s)",
             synth_r, synth_g, g1, target, elapsed));
  CHECK(synth_ok);
  CHECK(g_ok);
  CHECK(elapsed < 300.0);
}

TEST_CASE("set-builder equivalence") {
  std::mt19937 rng(991);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  std::uniform_real_distribution<double> bump(0.5, 9.0);
  int mismatches = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const int D = 1 + trial % 3;
    const int N = 1 + trial % 2;
    std::vector<double> gamma(D), r(D), g(N);
    for (double& v : gamma) v = u(rng);
    for (double& v : r) v = u(rng);
    for (double& v : g) v = u(rng);
    const RateModel rates(gamma, r, g);
    const double L = apriori_profit_exponent(MultiIndex::ones(D, N), rates) + bump(rng);
    if (!(apriori_set(L, rates, D, N) == testutil::brute_force_apriori_set(L, rates, D, N)))
      ++mismatches;
  }
  report("set-builder equivalence", mismatches == 0,
         fmt("%d/10 random (L, rates) configurations mismatched", mismatches));
  CHECK(mismatches == 0);
}

TEST_CASE("convergence slope d=1 N=1") {
  Stopwatch timer;
  study::StudyConfig cfg;
  cfg.problem = problem_config(1, 1, 1 << 14);
  cfg.rates = table_rates(1, 1);
  const double root = apriori_profit_exponent(MultiIndex::ones(1, 1), cfg.rates);
  cfg.thresholds = {root + 2.0, root + 4.0, root + 6.0, root + 8.0, root + 10.0, root + 12.0};

  const study::ProblemEvaluator problem(cfg.problem);
  const auto ref =
      study::reference_value(problem, cfg.rates, cfg.thresholds.back() + cfg.default_margin());

  cfg.method = study::Method::misc_apriori;
  SurplusCache cache_pri(problem.cost_fn());
  const auto apriori = study::convergence_study(cfg, problem, ref.value, cache_pri);

  cfg.method = study::Method::misc_aposteriori;
  SurplusCache cache_post(problem.cost_fn());
  const auto aposteriori = study::convergence_study(cfg, problem, ref.value, cache_post);

  bool all_ok = true;
  for (const auto& rec : apriori) all_ok = all_ok && rec.ok;
  for (const auto& rec : aposteriori) all_ok = all_ok && rec.ok;

  const double slope = study::tail_slope(apriori, 3);
  const bool slope_ok = slope >= -2.6 && slope <= -1.5;

  // Matched model-work comparison at the largest budget both reach.
  const double budget =
      std::min(apriori.back().work_model, aposteriori.back().work_model);
  const auto e_pri = study::error_at_work(apriori, budget);
  const auto e_post = study::error_at_work(aposteriori, budget);
  const bool matched_ok = e_pri && e_post && *e_post <= 2.0 * *e_pri;

  const double elapsed = timer.seconds();
  const bool pass = all_ok && slope_ok && matched_ok && elapsed < 600.0;
  report("convergence slope d=1 N=1", pass,
         fmt("tail slope %.3f (window [-2.6,-1.5]); at work %.3g: apost %.3e vs apriori "
             "%.3e (factor %.2f, limit 2); %.1f s (limit 600 s)",
             slope, budget, e_post ? *e_post : -1.0, e_pri ? *e_pri : -1.0,
             (e_pri && e_post && *e_pri > 0.0) ? *e_post / *e_pri : -1.0, elapsed));
  CHECK(all_ok);
  CHECK(slope_ok);
  CHECK(matched_ok);
  CHECK(elapsed < 600.0);
}

TEST_CASE("method ordering d=1 N=5") {
  Stopwatch timer;
  study::StudyConfig cfg;
  cfg.problem = problem_config(1, 5, 1 << 14);
  cfg.rates = table_rates(1, 5);
  const double root = apriori_profit_exponent(MultiIndex::ones(1, 5), cfg.rates);
  cfg.thresholds = {root + 2.0, root + 4.0, root + 6.0, root + 8.0, root + 10.0};

  const study::ProblemEvaluator problem(cfg.problem);
  const auto ref =
      study::reference_value(problem, cfg.rates, cfg.thresholds.back() + cfg.default_margin());

  cfg.method = study::Method::misc_apriori;
  SurplusCache c1(problem.cost_fn());
  const auto apriori = study::convergence_study(cfg, problem, ref.value, c1);

  cfg.method = study::Method::misc_aposteriori;
  SurplusCache c2(problem.cost_fn());
  const auto aposteriori = study::convergence_study(cfg, problem, ref.value, c2);

  // SCC schedule: total degrees with comparable work spans.
  study::StudyConfig scc_cfg = cfg;
  scc_cfg.method = study::Method::scc;
  scc_cfg.thresholds = {6, 7, 8, 9, 10, 11};
  SurplusCache c3(problem.cost_fn());
  const auto scc = study::convergence_study(scc_cfg, problem, ref.value, c3);

  // SGSC curves over fixed spatial levels; envelope taken pointwise.
  study::StudyConfig sgsc_cfg = cfg;
  sgsc_cfg.method = study::Method::sgsc;
  sgsc_cfg.sgsc_alpha_levels = {1, 2, 3, 4, 5, 6};
  const double sroot = stochastic_profit_exponent(std::vector<int>(5, 1), cfg.rates);
  sgsc_cfg.thresholds = {sroot + 0.5, sroot + 2.0, sroot + 4.0, sroot + 6.0,
                         sroot + 8.0,  sroot + 10.0};
  SurplusCache c4(problem.cost_fn());
  const auto curves = study::sgsc_study(sgsc_cfg, problem, ref.value, c4);
  std::vector<std::vector<std::pair<double, double>>> points;
  for (const auto& curve : curves) points.push_back(study::error_work_points(curve));
  const auto envelope = study::lower_envelope(points);

  // Largest work budget every method reaches.
  double budget = apriori.back().work_model;
  budget = std::min(budget, aposteriori.back().work_model);
  budget = std::min(budget, scc.back().work_model);
  budget = std::min(budget, envelope.back().first);

  const auto e_pri = study::error_at_work(apriori, budget);
  const auto e_post = study::error_at_work(aposteriori, budget);
  const auto e_scc = study::error_at_work(scc, budget);
  double e_env = std::numeric_limits<double>::infinity();
  for (const auto& [w, e] : envelope)
    if (w <= budget) e_env = std::min(e_env, e);

  const bool have_all = e_pri && e_post && e_scc && std::isfinite(e_env);
  const bool chain_ok = have_all && *e_post <= 2.0 * *e_pri &&
                        2.0 * *e_pri <= *e_scc && 2.0 * *e_pri <= e_env;

  const double elapsed = timer.seconds();
  const bool pass = have_all && chain_ok && elapsed < 1200.0;
  report("method ordering d=1 N=5", pass,
         fmt("at work %.3g: apost %.3e <= 2*apriori %.3e <= scc %.3e, sgsc-env %.3e; "
             "%.1f s (limit 1200 s)",
             budget, e_post ? *e_post : -1.0, e_pri ? 2.0 * *e_pri : -1.0,
             e_scc ? *e_scc : -1.0, e_env, elapsed));
  CHECK(have_all);
  CHECK(chain_ok);
  CHECK(elapsed < 1200.0);
}

TEST_CASE("complexity parameters") {
  const auto d1 = rates::complexity_params(table_rates(1, 1));
  const auto d3 = rates::complexity_params(table_rates(3, 1));
  const bool zeta_ok = std::abs(d1.zeta - 2.0) < 1e-14 && d1.zfrak == 1 &&
                       std::abs(d3.zeta - 2.0) < 1e-14 && d3.zfrak == 3;

  // L(W) against the symbolic reduction for zfrak = 1: L = 3 log W at chi = 1/3.
  ComplexityParams p;
  p.chi = 1.0 / 3.0;
  p.zfrak = 1;
  p.C_W = 1.0;
  double worst = 0.0;
  for (double logw : {1.0, 2.5, 7.0, 12.0})
    worst = std::max(worst,
                     std::abs(rates::level_for_budget(std::exp(logw), p) - 3.0 * logw));

  const bool pass = zeta_ok && worst < 1e-12;
  report("complexity parameters", pass,
         fmt("(zeta, zfrak): d=1 (%.1f, %d), d=3 (%.1f, %d); |L - symbolic| max %.2e",
             d1.zeta, d1.zfrak, d3.zeta, d3.zfrak, worst));
  CHECK(zeta_ok);
  CHECK(worst < 1e-12);
}

TEST_CASE("d=3 smoke study") {
  Stopwatch timer;
  study::StudyConfig cfg;
  cfg.problem = problem_config(3, 1, std::size_t{1} << 17);
  cfg.method = study::Method::misc_apriori;
  cfg.rates = table_rates(3, 1);
  const double root = apriori_profit_exponent(MultiIndex::ones(3, 1), cfg.rates);
  cfg.thresholds = {root + 2.0, root + 4.0, root + 6.0, root + 8.0};

  const study::ProblemEvaluator problem(cfg.problem);
  const auto ref =
      study::reference_value(problem, cfg.rates, cfg.thresholds.back() + cfg.default_margin());

  SurplusCache cache(problem.cost_fn());
  const auto records = study::convergence_study(cfg, problem, ref.value, cache);

  bool all_ok = true;
  bool monotone = true;
  for (std::size_t k = 0; k < records.size(); ++k) {
    all_ok = all_ok && records[k].ok;
    if (k > 0) monotone = monotone && records[k].work_model > records[k - 1].work_model;
  }
  const double drop =
      all_ok ? records.front().abs_error / records.back().abs_error : 0.0;

  const double elapsed = timer.seconds();
  const bool pass = all_ok && monotone && drop >= 10.0 && elapsed < 1200.0;
  report("d=3 smoke study", pass,
         fmt("4 thresholds, work monotone: %s, error drop x%.1f (need >= 10), %.1f s "
             "(limit 1200 s)",
             monotone ? "yes" : "no", drop, elapsed));
  CHECK(all_ok);
  CHECK(monotone);
  CHECK(drop >= 10.0);
  CHECK(elapsed < 1200.0);
}
