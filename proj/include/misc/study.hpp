#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "misc/fd_solver.hpp"
#include "misc/index_sets.hpp"
#include "misc/misc_core.hpp"
#include "misc/random_field.hpp"
#include "misc/rate_model.hpp"

namespace misc::study {

struct ProblemConfig {
  int d = 1;
  int N = 1;
  int inv_h0 = 3;
  double sigma = 0.16;
  std::vector<double> x0;  // empty -> default location for d
  double rhs_const = 1.0;
  std::size_t dof_cap = std::size_t{1} << 17;
  double solver_tol = 1e-10;
  std::vector<std::array<int, 3>> mode_table;  // optional override for d=3

  field::FieldSpec make_field() const;
  field::QoISpec make_qoi() const;
};

/// F^alpha(y) for the elliptic test problem. The mode functions and the
/// quantity-of-interest weights are tabulated once per spatial level and
/// reused across parameter points; only the exponential of the field is
/// recomputed per solve.
class ProblemEvaluator {
 public:
  explicit ProblemEvaluator(ProblemConfig config);

  double operator()(const std::vector<int>& alpha, const std::vector<double>& y) const;

  Evaluator evaluator() const;
  /// Evaluator with the spatial level pinned; alpha is ignored (used by the
  /// single-level and collapsed-lattice methods).
  Evaluator pinned_evaluator(const std::vector<int>& alpha_fixed) const;
  /// Evaluator over the collapsed lattice: a scalar spatial level l maps to
  /// the isotropic grid l * ones.
  Evaluator diagonal_evaluator() const;

  /// Cost of one solve at the given level (interior dofs), used as the
  /// cache's measured-work charge.
  double dof_cost(const std::vector<int>& alpha) const;
  SurplusCache::CostFn cost_fn() const;

  const ProblemConfig& config() const { return config_; }

 private:
  struct Tables;
  const Tables& tables_for(const std::vector<int>& alpha) const;

  ProblemConfig config_;
  field::FieldSpec field_;
  field::QoISpec qoi_;
  mutable std::mutex mutex_;
  mutable std::map<std::vector<int>, std::shared_ptr<const Tables>> tables_;
};

enum class Method {
  misc_apriori,
  misc_aposteriori,
  mlsc_apriori,
  mlsc_aposteriori,
  scc,
  sgsc,
};

std::string method_name(Method m);
Method parse_method(const std::string& name);

struct StudyConfig {
  ProblemConfig problem;
  Method method = Method::misc_apriori;
  RateModel rates;
  /// Threshold schedule: L for the profit-based sets (a-posteriori uses
  /// epsilon = e^{-L}), the total degree w for scc, the stochastic-exponent
  /// threshold for sgsc.
  std::vector<double> thresholds;
  /// Buffer for the a-posteriori search, built as the a-priori set at
  /// L + buffer_margin. Defaults to 2 max(r_i + gamma_i).
  std::optional<double> aposteriori_buffer_margin;
  /// Isotropic spatial levels of the sgsc curves.
  std::vector<int> sgsc_alpha_levels;

  double default_margin() const;  // 2 max(r_i + gamma_i)
};

struct ConvergenceRecord {
  std::string method;
  double threshold = 0.0;
  std::size_t set_size = 0;
  double work_model = 0.0;
  double work_measured = 0.0;
  double estimate = 0.0;
  double abs_error = 0.0;
  bool ok = true;
  std::string message;
};

/// A-priori MISC estimate at L_ref, the well-resolved reference. Returns the
/// value together with the set it used.
struct ReferenceResult {
  double value = 0.0;
  IndexSet set{0, 0};
  double L = 0.0;
};

ReferenceResult reference_value(const ProblemEvaluator& problem, const RateModel& rates,
                                double L_ref);

/// One record per threshold; per-threshold failures are recorded and the
/// study continues. The cache persists across thresholds, so measured work
/// is cumulative (the incremental-construction accounting).
std::vector<ConvergenceRecord> convergence_study(const StudyConfig& config,
                                                 const ProblemEvaluator& problem,
                                                 double reference, SurplusCache& cache);

/// SGSC produces one curve per fixed spatial level.
std::vector<std::vector<ConvergenceRecord>> sgsc_study(const StudyConfig& config,
                                                       const ProblemEvaluator& problem,
                                                       double reference, SurplusCache& cache);

/// Pointwise-in-work minimum error across curves on the merged work grid.
/// Each input point is (work, error); outputs are sorted by work.
std::vector<std::pair<double, double>> lower_envelope(
    const std::vector<std::vector<std::pair<double, double>>>& curves);

std::vector<std::pair<double, double>> error_work_points(
    const std::vector<ConvergenceRecord>& records);

/// Best error achievable within the work budget (minimum error over records
/// with work_model <= budget); empty when no record qualifies.
std::optional<double> error_at_work(const std::vector<ConvergenceRecord>& records,
                                    double work_budget);

void write_csv(std::ostream& os, const std::vector<ConvergenceRecord>& records);
std::vector<ConvergenceRecord> read_csv(std::istream& is);

/// Self-contained python script plotting error against model work for every
/// method series in the CSVs, plus the predicted-rate guide curve.
void emit_plot_script(std::ostream& os, const std::vector<std::string>& csv_paths,
                      double zeta, int zfrak);

/// Least-squares slope of log(error) against log(work) over the last
/// `points` usable records.
double tail_slope(const std::vector<ConvergenceRecord>& records, int points);

/// Reference g rates for the test problem, fitted once per stochastic
/// direction (n = 1..10).
const std::vector<double>& test_problem_g_table();

/// Assembles the rate model for a problem from one of the configured
/// sources: "explicit" (use the given vectors), "table", "fitted" (rate
/// estimation runs on the problem), or "apriori-lemma".
struct RateSource {
  std::string kind = "table";
  std::vector<double> gamma_tilde;  // defaults to theta in every direction
  std::vector<double> r_tilde;      // defaults to 2 in every direction
  std::vector<double> g;            // used by kind == "explicit"
  double theta = 1.0;
  double eps_E = 0.0;
  int spatial_j_max = 3;
  int stochastic_j_max = 3;
  std::vector<int> alpha_fine;  // defaults: 4 (d=1), (3,3,3) (d=3)
  double noise_floor = 1e-13;
};

RateModel resolve_rates(const RateSource& source, const ProblemEvaluator& problem);

}  // namespace misc::study
