#pragma once

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "misc/index_sets.hpp"
#include "misc/misc_core.hpp"
#include "misc/multi_index.hpp"

namespace misc::testutil {

/// Separable analytic evaluator: converging in every alpha direction with a
/// 4^-a tail and smooth in y. Cheap enough for exhaustive oracles.
inline Evaluator analytic_evaluator(int D, int N) {
  return [D, N](const std::vector<int>& alpha, const std::vector<double>& y) {
    double v = 1.0;
    for (int i = 0; i < D; ++i) v *= 1.0 + std::pow(4.0, -alpha[i]);
    for (int n = 0; n < N; ++n) v *= std::exp(y[n] * 0.7 / (n + 1));
    return v;
  };
}

/// Random downward-closed set grown by repeatedly promoting admissible
/// forward neighbors. Deterministic for a given seed.
inline IndexSet random_downward_closed(int D, int N, int growth_steps, unsigned seed) {
  std::mt19937 rng(seed);
  IndexSet set(D, N);
  set.insert(MultiIndex::ones(D, N));
  std::uniform_int_distribution<int> dim_pick(0, D + N - 1);
  for (int step = 0; step < growth_steps; ++step) {
    std::uniform_int_distribution<std::size_t> member_pick(0, set.size() - 1);
    auto it = set.members().begin();
    std::advance(it, member_pick(rng));
    MultiIndex cand = it->forward(dim_pick(rng));
    if (set.contains(cand)) continue;
    bool admissible = true;
    for (int k = 0; k < cand.dims(); ++k)
      if (cand.component(k) > 1 && !set.contains(cand.backward(k))) admissible = false;
    if (admissible) set.insert(cand);
  }
  return set;
}

/// Box-scan oracle for the quasi-optimal set: per-component bounds follow
/// from monotonicity of the exponent, then every index in the bounding box
/// is tested against the membership inequality directly.
inline IndexSet brute_force_apriori_set(double L, const RateModel& rates, int D, int N) {
  IndexSet out(D, N);
  const MultiIndex root = MultiIndex::ones(D, N);
  std::vector<int> caps(D + N, 1);
  for (int k = 0; k < D + N; ++k) {
    MultiIndex probe = root;
    while (apriori_profit_exponent(probe, rates) <= L) {
      caps[k] = probe.component(k);
      ++probe.component(k);
      if (probe.component(k) > 64) break;
    }
  }
  MultiIndex idx = root;
  while (true) {
    if (apriori_profit_exponent(idx, rates) <= L) out.insert(idx);
    int k = D + N - 1;
    while (k >= 0) {
      if (++idx.component(k) <= caps[k]) break;
      idx.component(k) = 1;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

/// Independent expansion oracle for the combination coefficients: apply the
/// difference-operator definition term by term and collect coefficients of
/// each tensor approximation.
inline std::map<MultiIndex, int> expand_coefficients(const IndexSet& set) {
  std::map<MultiIndex, int> coeffs;
  const int dims = set.D() + set.N();
  for (const MultiIndex& idx : set.members()) {
    for (unsigned mask = 0; mask < (1u << dims); ++mask) {
      MultiIndex term = idx;
      int parity = 0;
      bool vanishes = false;
      for (int k = 0; k < dims; ++k) {
        if (mask & (1u << k)) {
          ++parity;
          if (--term.component(k) == 0) {
            vanishes = true;
            break;
          }
        }
      }
      if (vanishes) continue;
      coeffs[term] += (parity % 2 == 0) ? 1 : -1;
    }
  }
  std::erase_if(coeffs, [](const auto& kv) { return kv.second == 0; });
  return coeffs;
}

}  // namespace misc::testutil
