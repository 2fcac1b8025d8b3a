#include "misc/misc_core.hpp"

#include <cmath>
#include <stdexcept>

namespace misc {

double SurplusCache::point_value(const std::vector<int>& alpha, const PointKey& key,
                                 const std::vector<double>& y, const Evaluator& eval) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = points_.find({alpha, key});
    if (it != points_.end()) return it->second;
  }
  const double value = eval(alpha, y);
  const double cost = cost_ ? cost_(alpha) : 1.0;
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = points_.emplace(std::make_pair(alpha, key), value);
  if (inserted) {
    ++calls_;
    work_ += cost;
  }
  return it->second;  // first writer wins
}

std::optional<double> SurplusCache::quadrature(const std::vector<int>& alpha,
                                               const std::vector<int>& beta) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = quadratures_.find({alpha, beta});
  if (it == quadratures_.end()) return std::nullopt;
  return it->second;
}

void SurplusCache::store_quadrature(const std::vector<int>& alpha,
                                    const std::vector<int>& beta, double value) {
  std::lock_guard<std::mutex> lock(mutex_);
  quadratures_.emplace(std::make_pair(alpha, beta), value);
}

std::optional<double> SurplusCache::delta(const MultiIndex& idx) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = deltas_.find(idx);
  if (it == deltas_.end()) return std::nullopt;
  return it->second;
}

void SurplusCache::store_delta(const MultiIndex& idx, double value) {
  std::lock_guard<std::mutex> lock(mutex_);
  deltas_.emplace(idx, value);
}

long long SurplusCache::evaluator_calls() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return calls_;
}

double SurplusCache::measured_work() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return work_;
}

double tensor_quadrature(const std::vector<int>& alpha, const std::vector<int>& beta,
                         const Evaluator& eval, SurplusCache& cache) {
  if (auto cached = cache.quadrature(alpha, beta)) return *cached;

  const int N = static_cast<int>(beta.size());
  std::vector<std::vector<double>> nodes(N), weights(N);
  for (int n = 0; n < N; ++n) {
    if (beta[n] < 1) throw std::invalid_argument("tensor_quadrature: beta must be >= 1");
    nodes[n] = colloc::cc_nodes(beta[n]);
    weights[n] = colloc::cc_weights(beta[n]);
  }

  double sum = 0.0;
  std::vector<int> ord(N, 0);
  std::vector<double> y(N);
  PointKey key(N);
  bool more = true;
  while (more) {
    double w = 1.0;
    for (int n = 0; n < N; ++n) {
      y[n] = nodes[n][ord[n]];
      w *= weights[n][ord[n]];
      key[n] = colloc::node_key(beta[n], ord[n]);
    }
    sum += w * cache.point_value(alpha, key, y, eval);
    more = false;
    for (int n = N - 1; n >= 0; --n) {
      if (++ord[n] < static_cast<int>(nodes[n].size())) {
        more = true;
        break;
      }
      ord[n] = 0;
    }
  }
  // N = 0 degenerates to a single evaluation with weight 1 (handled above:
  // the loop body runs once with an empty point).
  cache.store_quadrature(alpha, beta, sum);
  return sum;
}

double mixed_difference(const MultiIndex& idx, const Evaluator& eval, SurplusCache& cache) {
  if (!idx.all_positive())
    throw std::invalid_argument("mixed_difference: index components must be >= 1");
  if (auto cached = cache.delta(idx)) return *cached;

  const int dims = idx.dims();
  double sum = 0.0;
  for (unsigned mask = 0; mask < (1u << dims); ++mask) {
    MultiIndex term = idx;
    int parity = 0;
    bool vanishes = false;
    for (int k = 0; k < dims; ++k) {
      if (mask & (1u << k)) {
        ++parity;
        if (--term.component(k) == 0) {
          vanishes = true;  // F_{v,w} = 0 whenever a component is zero
          break;
        }
      }
    }
    if (vanishes) continue;
    const double q = tensor_quadrature(term.alpha, term.beta, eval, cache);
    sum += (parity % 2 == 0) ? q : -q;
  }
  cache.store_delta(idx, sum);
  return sum;
}

double error_contribution(const MultiIndex& idx, const Evaluator& eval, SurplusCache& cache) {
  return std::abs(mixed_difference(idx, eval, cache));
}

std::map<MultiIndex, int> combination_coefficients(const IndexSet& set) {
  if (!set.is_downward_closed())
    throw std::invalid_argument("combination_coefficients: set is not downward closed");
  std::map<MultiIndex, int> coeffs;
  const int dims = set.D() + set.N();
  for (const MultiIndex& idx : set.members()) {
    int c = 0;
    for (unsigned mask = 0; mask < (1u << dims); ++mask) {
      MultiIndex fwd = idx;
      int parity = 0;
      for (int k = 0; k < dims; ++k) {
        if (mask & (1u << k)) {
          ++fwd.component(k);
          ++parity;
        }
      }
      if (mask != 0 && !set.contains(fwd)) continue;
      c += (parity % 2 == 0) ? 1 : -1;
    }
    coeffs[idx] = c;
  }
  return coeffs;
}

double estimate(const IndexSet& set, const Evaluator& eval, EstimateMode mode,
                SurplusCache& cache) {
  if (set.empty()) throw std::invalid_argument("estimate: empty index set");
  if (!set.is_downward_closed())
    throw std::invalid_argument("estimate: set is not downward closed");

  double total = 0.0;
  if (mode == EstimateMode::surplus) {
    for (const MultiIndex& idx : set.members())
      total += mixed_difference(idx, eval, cache);
  } else {
    for (const auto& [idx, c] : combination_coefficients(set)) {
      if (c == 0) continue;
      total += c * tensor_quadrature(idx.alpha, idx.beta, eval, cache);
    }
  }
  return total;
}

double work_contribution_model(const MultiIndex& idx, const RateModel& rates) {
  if (idx.spatial_dims() != rates.D() || idx.stochastic_dims() != rates.N())
    throw std::invalid_argument("work_contribution_model: dimension mismatch");
  double exponent = 0.0;
  for (int i = 0; i < idx.spatial_dims(); ++i) exponent += rates.gammas[i] * idx.alpha[i];
  for (int j = 0; j < idx.stochastic_dims(); ++j) exponent += rates.delta * idx.beta[j];
  return rates.C_work * std::exp(exponent);
}

double work_contribution_measured(const MultiIndex& idx, int inv_h0) {
  const int D = idx.spatial_dims();
  double grid_dofs = 0.0;
  for (unsigned mask = 0; mask < (1u << D); ++mask) {
    double dofs = 1.0;
    bool vanishes = false;
    for (int i = 0; i < D; ++i) {
      const int level = idx.alpha[i] - ((mask >> i) & 1u);
      if (level == 0) {
        vanishes = true;
        break;
      }
      dofs *= static_cast<double>((static_cast<long>(inv_h0) << level) - 1);
    }
    if (!vanishes) grid_dofs += dofs;
  }
  double new_points = 1.0;
  for (int b : idx.beta) new_points *= colloc::new_point_count(b);
  return grid_dofs * new_points;
}

}  // namespace misc
