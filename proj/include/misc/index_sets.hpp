#pragma once

#include <vector>

#include "misc/misc_core.hpp"
#include "misc/multi_index.hpp"
#include "misc/rate_model.hpp"

namespace misc {

/// Left-hand side of the quasi-optimal membership inequality,
///   sum_i (r_i + gamma_i) alpha_i + sum_j (delta beta_j + g_j e^{delta beta_j}),
/// i.e. -log of the model profit. Monotone increasing in every component.
double apriori_profit_exponent(const MultiIndex& idx, const RateModel& rates);

/// Stochastic part of the exponent only (used by the single-level sets).
double stochastic_profit_exponent(const std::vector<int>& beta, const RateModel& rates);

/// Quasi-optimal set {idx : exponent(idx) <= L}, built by recursive frontier
/// expansion from the all-ones root with duplicate suppression. Indices with
/// exponent exactly L are included. Throws if L excludes the root.
IndexSet apriori_set(double L, const RateModel& rates, int D, int N);

/// Selects the buffer indices whose measured profit |Delta|/dW_model reaches
/// epsilon, then repairs downward closure. The root is always kept.
IndexSet aposteriori_set(double epsilon, const IndexSet& search_buffer,
                         const Evaluator& eval, SurplusCache& cache,
                         const RateModel& rates);

/// Total-degree simplex {[alpha, beta] : alpha + sum beta_n <= w} with a
/// single spatial parameter. Throws if w < 1 + N (empty set).
IndexSet scc_set(int w, int N);

/// Collapses the D spatial rates onto one diagonal level: gamma' = sum gamma_i,
/// r' = sum r_i (the exponent of the isotropic grid alpha = l * ones).
RateModel collapse_rates(const RateModel& rates);

/// Multilevel restriction: the quasi-optimal construction over the diagonal
/// subfamily alpha_1 = ... = alpha_D. The collapsed form lives on the
/// (1+N)-dimensional lattice and is downward closed there.
IndexSet mlsc_collapsed_set(double L, const RateModel& rates, int N);
IndexSet mlsc_collapsed_set_aposteriori(double epsilon, double buffer_L,
                                        const RateModel& rates, int N,
                                        const Evaluator& collapsed_eval,
                                        SurplusCache& cache);

/// Expands a collapsed (1+N)-dim diagonal set to full (D+N)-dim indices with
/// equal spatial components (reporting/serialization view).
IndexSet expand_diagonal(const IndexSet& collapsed, int D);

/// Quasi-optimal set at the given L built over the diagonal subfamily,
/// returned in the full (D+N)-dim representation.
IndexSet mlsc_set(double L, const RateModel& rates, int D, int N);

/// Single-level sets for a fixed spatial discretization: for each threshold,
/// {(alpha_fixed; beta) : stochastic exponent <= L_stoc}, full-dim view.
std::vector<IndexSet> sgsc_sets(const std::vector<int>& alpha_fixed,
                                const std::vector<double>& thresholds,
                                const RateModel& rates);

/// Stochastic-only set {beta : stochastic exponent <= L_stoc} on the
/// N-dimensional lattice (D = 0).
IndexSet sgsc_stochastic_set(double L_stoc, const RateModel& rates, int N);

}  // namespace misc
