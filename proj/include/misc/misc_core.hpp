#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "misc/collocation.hpp"
#include "misc/multi_index.hpp"
#include "misc/rate_model.hpp"

namespace misc {

/// Discretized quantity of interest F^alpha(y). For collapsed lattices the
/// alpha vector may be empty (the spatial level is then baked into the
/// evaluator itself).
using Evaluator =
    std::function<double(const std::vector<int>& alpha, const std::vector<double>& y)>;

using PointKey = std::vector<colloc::NodeKey>;

/// Memo table for point evaluations F^alpha(y), tensor quadratures
/// Q^{m(beta)}[F^alpha] and mixed differences. Collocation points are keyed
/// by canonical node identity, never by floating coordinates, so nested
/// levels share entries exactly. Insertions are first-writer-wins and the
/// table may be used from concurrent workers; a duplicate computation is
/// tolerated but charged only once.
class SurplusCache {
 public:
  using CostFn = std::function<double(const std::vector<int>& alpha)>;

  SurplusCache() = default;
  explicit SurplusCache(CostFn cost) : cost_(std::move(cost)) {}

  double point_value(const std::vector<int>& alpha, const PointKey& key,
                     const std::vector<double>& y, const Evaluator& eval);

  std::optional<double> quadrature(const std::vector<int>& alpha,
                                   const std::vector<int>& beta) const;
  void store_quadrature(const std::vector<int>& alpha, const std::vector<int>& beta,
                        double value);

  std::optional<double> delta(const MultiIndex& idx) const;
  void store_delta(const MultiIndex& idx, double value);

  long long evaluator_calls() const;
  /// Accumulated cost of all evaluator calls (dofs x points when the cost
  /// function counts solver dofs; plain call count otherwise).
  double measured_work() const;

 private:
  CostFn cost_;
  mutable std::mutex mutex_;
  std::map<std::pair<std::vector<int>, PointKey>, double> points_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, double> quadratures_;
  std::map<MultiIndex, double> deltas_;
  long long calls_ = 0;
  double work_ = 0.0;
};

/// Q^{m(beta)}[F^alpha]: tensor Clenshaw-Curtis quadrature of the evaluator
/// over [-1,1]^N, served from / recorded into the cache.
double tensor_quadrature(const std::vector<int>& alpha, const std::vector<int>& beta,
                         const Evaluator& eval, SurplusCache& cache);

/// First-order mixed difference Delta[F_{alpha,beta}]: the signed sum of
/// tensor quadratures over all backward offsets in {0,1}^{D+N}, with terms
/// containing a zero component dropped.
double mixed_difference(const MultiIndex& idx, const Evaluator& eval, SurplusCache& cache);

/// |Delta[F_{alpha,beta}]|.
double error_contribution(const MultiIndex& idx, const Evaluator& eval, SurplusCache& cache);

/// Combination coefficients c_{alpha,beta} of the estimator written as
/// sum c F: the signed count of forward offsets staying inside the set.
/// Requires a downward-closed set; the coefficients always sum to 1.
std::map<MultiIndex, int> combination_coefficients(const IndexSet& set);

enum class EstimateMode { surplus, combination };

/// The estimator over a downward-closed set: sum of mixed differences
/// (surplus mode) or the equivalent signed combination of tensor
/// quadratures restricted to nonzero coefficients (combination mode).
double estimate(const IndexSet& set, const Evaluator& eval, EstimateMode mode,
                SurplusCache& cache);

/// Model work of one mixed difference, exp(sum gamma_i alpha_i + delta |beta|).
double work_contribution_model(const MultiIndex& idx, const RateModel& rates);

/// Measured work of one mixed difference: total dofs of the backward
/// spatial grids (zero-component grids skipped) times the number of new
/// collocation points the nested stochastic refinement adds.
double work_contribution_measured(const MultiIndex& idx, int inv_h0);

}  // namespace misc
