#pragma once

#include <vector>

#include "misc/misc_core.hpp"
#include "misc/rate_model.hpp"

namespace misc::rates {

/// |Delta| samples along a ray idx = ones + j * direction in the combined
/// (D+N)-dimensional lattice.
struct RaySamples {
  std::vector<int> direction;  // length D+N, the ray increment
  std::vector<int> offsets;    // strictly increasing j values
  std::vector<double> values;  // |Delta| at ones + j * direction
};

struct FitOptions {
  double noise_floor = 1e-13;  // samples below this are cancellation noise
  int min_samples = 3;
};

/// Collects |Delta[F_{1 + j e_i, 1}]| for j = 1..j_max: spatial differences
/// at the midpoint parameter (the level-one quadrature is a single point).
RaySamples sample_spatial_ray(int direction, int j_max, const Evaluator& eval,
                              SurplusCache& cache, int D, int N);

/// Collects |Delta^stoc[Q^{m(1 + j e_n)}[F^{alpha_fine}]]| for j = 1..j_max.
/// The spatial difference factor is constant along the ray, so differencing
/// in beta alone leaves the fitted slope unchanged while keeping the samples
/// well above the cancellation floor.
RaySamples sample_stochastic_ray(int direction, int j_max,
                                 const std::vector<int>& alpha_fine,
                                 const Evaluator& eval, SurplusCache& cache, int N);

/// Least-squares slope of log |Delta| against alpha_i log 2 (one rate per
/// unit spatial direction). Recovers a planted 4^{-alpha} decay as exactly 2.
std::vector<double> fit_spatial_rates(const std::vector<RaySamples>& rays,
                                      const FitOptions& opts = {});

/// Least-squares slope of log |Delta| against the node count of the coarser
/// rule, m(beta_n - 1). This is the convention that reproduces the reference
/// g-rate table for the test problem; a decay planted as e^{-g m(beta-1)}
/// is recovered exactly.
std::vector<double> fit_stochastic_rates(const std::vector<RaySamples>& rays,
                                         const FitOptions& opts = {});

/// Compares measured |Delta| along mixed rays (alpha and beta varying
/// together) against the product model built from the given rates, anchored
/// at the first sample. The deviation is max |log(measured/predicted)|.
struct ProductStructureReport {
  std::vector<double> measured;
  std::vector<double> predicted;
  double max_log_deviation = 0.0;
};

ProductStructureReport verify_product_structure(const RaySamples& mixed_ray,
                                                const RateModel& rates, int D);

/// Analyticity-based rates from the polyellipse parameters:
/// tau_n = pi / (2 N lambda_n), rho_n = tau_n + sqrt(tau_n^2 + 1),
/// g*_n = log rho_n, and the halved g~_n = (g*_n / 2)(1 - eps_E).
struct AprioriG {
  std::vector<double> g_star;
  std::vector<double> g_tilde;
};

AprioriG apriori_g(int N, const std::vector<double>& lambdas, double eps_E = 0.0);

ComplexityParams complexity_params(const RateModel& rates);

/// L(W_max) = (1/chi)(log(W/C_W) - (zfrak-1) log((1/chi) log(W/C_W))).
/// Throws when the budget is below C_W exp(chi) or the formula leaves the
/// asymptotic regime (non-positive L).
double level_for_budget(double W_max, const ComplexityParams& params);

/// Shape of the predicted error, W^{-zeta} (log W)^{(zeta+1)(zfrak-1)}
/// (the unknown constant is not included).
double predicted_error(double W, const ComplexityParams& params);

}  // namespace misc::rates
