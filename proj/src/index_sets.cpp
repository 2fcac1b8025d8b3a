#include "misc/index_sets.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace misc {

double apriori_profit_exponent(const MultiIndex& idx, const RateModel& rates) {
  if (idx.spatial_dims() != rates.D() || idx.stochastic_dims() != rates.N())
    throw std::invalid_argument("apriori_profit_exponent: dimension mismatch");
  double e = 0.0;
  for (int i = 0; i < idx.spatial_dims(); ++i)
    e += (rates.rs[i] + rates.gammas[i]) * idx.alpha[i];
  for (int j = 0; j < idx.stochastic_dims(); ++j)
    e += rates.delta * idx.beta[j] + rates.gs[j] * std::exp(rates.delta * idx.beta[j]);
  return e;
}

double stochastic_profit_exponent(const std::vector<int>& beta, const RateModel& rates) {
  if (static_cast<int>(beta.size()) != rates.N())
    throw std::invalid_argument("stochastic_profit_exponent: dimension mismatch");
  double e = 0.0;
  for (std::size_t j = 0; j < beta.size(); ++j)
    e += rates.delta * beta[j] + rates.gs[j] * std::exp(rates.delta * beta[j]);
  return e;
}

namespace {

// Recursive frontier expansion of the downward-closed level set of a
// monotone exponent; revisits are suppressed through the set itself.
void build_set_recurse(IndexSet& set, const MultiIndex& idx, double L,
                       const RateModel& rates) {
  for (int k = 0; k < idx.dims(); ++k) {
    MultiIndex cand = idx.forward(k);
    if (set.contains(cand)) continue;
    if (apriori_profit_exponent(cand, rates) <= L) {
      set.insert(cand);
      build_set_recurse(set, cand, L, rates);
    }
  }
}

}  // namespace

IndexSet apriori_set(double L, const RateModel& rates, int D, int N) {
  if (rates.D() != D || rates.N() != N)
    throw std::invalid_argument("apriori_set: rates dimension mismatch");
  const MultiIndex root = MultiIndex::ones(D, N);
  const double root_exp = apriori_profit_exponent(root, rates);
  if (root_exp > L) {
    std::ostringstream msg;
    msg << "apriori_set: L=" << L << " is below the root exponent " << root_exp
        << "; the estimator requires the all-ones index";
    throw std::invalid_argument(msg.str());
  }
  IndexSet set(D, N);
  set.insert(root);
  build_set_recurse(set, root, L, rates);
  return set;
}

IndexSet aposteriori_set(double epsilon, const IndexSet& search_buffer,
                         const Evaluator& eval, SurplusCache& cache,
                         const RateModel& rates) {
  if (epsilon <= 0.0) throw std::invalid_argument("aposteriori_set: epsilon must be positive");
  if (!search_buffer.is_downward_closed())
    throw std::invalid_argument("aposteriori_set: search buffer is not downward closed");
  std::vector<MultiIndex> selected;
  selected.push_back(MultiIndex::ones(search_buffer.D(), search_buffer.N()));
  for (const MultiIndex& idx : search_buffer.members()) {
    const double dE = error_contribution(idx, eval, cache);
    const double dW = work_contribution_model(idx, rates);
    if (dE / dW >= epsilon) selected.push_back(idx);
  }
  return downward_closure(search_buffer.D(), search_buffer.N(), selected);
}

IndexSet scc_set(int w, int N) {
  if (w < 1 + N) {
    std::ostringstream msg;
    msg << "scc_set: w=" << w << " is below 1+N=" << (1 + N) << " and yields an empty set";
    throw std::invalid_argument(msg.str());
  }
  IndexSet set(1, N);
  MultiIndex idx = MultiIndex::ones(1, N);
  // Enumerate the box [1, w-N]^{1+N} and keep the simplex alpha + |beta| <= w.
  const int dims = 1 + N;
  const int cap = w - dims + 1;
  std::vector<int> comp(dims, 1);
  while (true) {
    if (std::accumulate(comp.begin(), comp.end(), 0) <= w) {
      idx.alpha[0] = comp[0];
      for (int j = 0; j < N; ++j) idx.beta[j] = comp[1 + j];
      set.insert(idx);
    }
    int k = dims - 1;
    while (k >= 0) {
      if (++comp[k] <= cap) break;
      comp[k] = 1;
      --k;
    }
    if (k < 0) break;
  }
  return set;
}

RateModel collapse_rates(const RateModel& rates) {
  RateModel out({std::accumulate(rates.gammas.begin(), rates.gammas.end(), 0.0)},
                {std::accumulate(rates.rs.begin(), rates.rs.end(), 0.0)}, rates.gs);
  out.C_work = rates.C_work;
  out.C_error = rates.C_error;
  return out;
}

IndexSet mlsc_collapsed_set(double L, const RateModel& rates, int N) {
  return apriori_set(L, collapse_rates(rates), 1, N);
}

IndexSet mlsc_collapsed_set_aposteriori(double epsilon, double buffer_L,
                                        const RateModel& rates, int N,
                                        const Evaluator& collapsed_eval,
                                        SurplusCache& cache) {
  const RateModel collapsed = collapse_rates(rates);
  const IndexSet buffer = apriori_set(buffer_L, collapsed, 1, N);
  return aposteriori_set(epsilon, buffer, collapsed_eval, cache, collapsed);
}

IndexSet expand_diagonal(const IndexSet& collapsed, int D) {
  if (collapsed.D() != 1)
    throw std::invalid_argument("expand_diagonal: expected a collapsed set with one spatial dim");
  IndexSet out(D, collapsed.N());
  for (const MultiIndex& idx : collapsed.members())
    out.insert(MultiIndex(std::vector<int>(D, idx.alpha[0]), idx.beta));
  return out;
}

IndexSet mlsc_set(double L, const RateModel& rates, int D, int N) {
  return expand_diagonal(mlsc_collapsed_set(L, rates, N), D);
}

IndexSet sgsc_stochastic_set(double L_stoc, const RateModel& rates, int N) {
  // Reuse the frontier expansion with no spatial dimensions.
  RateModel stoc;
  stoc.gs = rates.gs;
  stoc.delta = rates.delta;
  const std::vector<int> root(N, 1);
  if (stochastic_profit_exponent(root, stoc) > L_stoc)
    throw std::invalid_argument("sgsc_stochastic_set: threshold excludes the all-ones index");
  return apriori_set(L_stoc, stoc, 0, N);
}

std::vector<IndexSet> sgsc_sets(const std::vector<int>& alpha_fixed,
                                const std::vector<double>& thresholds,
                                const RateModel& rates) {
  for (int a : alpha_fixed)
    if (a < 1) throw std::invalid_argument("sgsc_sets: alpha_fixed must have components >= 1");
  std::vector<IndexSet> out;
  out.reserve(thresholds.size());
  const int D = static_cast<int>(alpha_fixed.size());
  for (double L : thresholds) {
    IndexSet stoc = sgsc_stochastic_set(L, rates, rates.N());
    IndexSet full(D, rates.N());
    for (const MultiIndex& idx : stoc.members()) full.insert(MultiIndex(alpha_fixed, idx.beta));
    out.push_back(std::move(full));
  }
  return out;
}

}  // namespace misc
