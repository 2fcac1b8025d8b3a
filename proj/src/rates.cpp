#include "misc/rates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace misc::rates {

namespace {

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  return sxy / sxx;
}

// Keeps samples above the noise floor; returns (x, log value) pairs.
void usable_samples(const RaySamples& ray, const FitOptions& opts,
                    const std::vector<double>& xs, std::vector<double>& x_out,
                    std::vector<double>& logy_out, const char* what) {
  x_out.clear();
  logy_out.clear();
  for (std::size_t k = 0; k < ray.values.size(); ++k) {
    const double v = ray.values[k];
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + ": non-positive sample");
    if (v < opts.noise_floor) continue;
    x_out.push_back(xs[k]);
    logy_out.push_back(std::log(v));
  }
  if (static_cast<int>(x_out.size()) < opts.min_samples) {
    std::ostringstream msg;
    msg << what << ": only " << x_out.size() << " usable samples above the noise floor "
        << opts.noise_floor << " (need " << opts.min_samples << ")";
    throw std::runtime_error(msg.str());
  }
}

int single_direction(const RaySamples& ray, const char* what) {
  int dir = -1;
  for (std::size_t k = 0; k < ray.direction.size(); ++k) {
    if (ray.direction[k] == 0) continue;
    if (ray.direction[k] != 1 || dir != -1)
      throw std::invalid_argument(std::string(what) + ": expected a unit direction");
    dir = static_cast<int>(k);
  }
  if (dir < 0) throw std::invalid_argument(std::string(what) + ": zero direction");
  return dir;
}

}  // namespace

RaySamples sample_spatial_ray(int direction, int j_max, const Evaluator& eval,
                              SurplusCache& cache, int D, int N) {
  if (direction < 0 || direction >= D)
    throw std::invalid_argument("sample_spatial_ray: direction out of range");
  RaySamples ray;
  ray.direction.assign(D + N, 0);
  ray.direction[direction] = 1;
  for (int j = 1; j <= j_max; ++j) {
    MultiIndex idx = MultiIndex::ones(D, N);
    idx.alpha[direction] += j;
    ray.offsets.push_back(j);
    ray.values.push_back(error_contribution(idx, eval, cache));
  }
  return ray;
}

RaySamples sample_stochastic_ray(int direction, int j_max,
                                 const std::vector<int>& alpha_fine,
                                 const Evaluator& eval, SurplusCache& cache, int N) {
  if (direction < 0 || direction >= N)
    throw std::invalid_argument("sample_stochastic_ray: direction out of range");
  // Pin the spatial level inside the evaluator and difference over beta only.
  Evaluator pinned = [&eval, alpha_fine](const std::vector<int>& /*alpha*/,
                                         const std::vector<double>& y) {
    return eval(alpha_fine, y);
  };
  RaySamples ray;
  const int D = static_cast<int>(alpha_fine.size());
  ray.direction.assign(D + N, 0);
  ray.direction[D + direction] = 1;
  for (int j = 1; j <= j_max; ++j) {
    MultiIndex idx = MultiIndex::ones(0, N);
    idx.beta[direction] += j;
    ray.offsets.push_back(j);
    ray.values.push_back(error_contribution(idx, pinned, cache));
  }
  return ray;
}

std::vector<double> fit_spatial_rates(const std::vector<RaySamples>& rays,
                                      const FitOptions& opts) {
  std::vector<double> r_tilde;
  r_tilde.reserve(rays.size());
  for (const RaySamples& ray : rays) {
    single_direction(ray, "fit_spatial_rates");
    std::vector<double> xs(ray.offsets.size());
    for (std::size_t k = 0; k < ray.offsets.size(); ++k)
      xs[k] = (1.0 + ray.offsets[k]) * std::numbers::ln2;  // alpha_i log 2
    std::vector<double> x, logy;
    usable_samples(ray, opts, xs, x, logy, "fit_spatial_rates");
    r_tilde.push_back(-ls_slope(x, logy));
  }
  return r_tilde;
}

std::vector<double> fit_stochastic_rates(const std::vector<RaySamples>& rays,
                                         const FitOptions& opts) {
  std::vector<double> g;
  g.reserve(rays.size());
  for (const RaySamples& ray : rays) {
    single_direction(ray, "fit_stochastic_rates");
    std::vector<double> xs(ray.offsets.size());
    for (std::size_t k = 0; k < ray.offsets.size(); ++k)
      xs[k] = static_cast<double>(colloc::level_to_nodes(ray.offsets[k]));  // m(beta_n - 1)
    std::vector<double> x, logy;
    usable_samples(ray, opts, xs, x, logy, "fit_stochastic_rates");
    g.push_back(-ls_slope(x, logy));
  }
  return g;
}

ProductStructureReport verify_product_structure(const RaySamples& mixed_ray,
                                                const RateModel& rates, int D) {
  ProductStructureReport report;
  report.measured = mixed_ray.values;
  if (mixed_ray.values.empty())
    throw std::invalid_argument("verify_product_structure: empty ray");
  const int dims = static_cast<int>(mixed_ray.direction.size());
  if (dims != rates.D() + rates.N())
    throw std::invalid_argument("verify_product_structure: dimension mismatch");

  auto model_log = [&](int j) {
    double e = 0.0;
    for (int i = 0; i < D; ++i)
      e -= rates.rs[i] * (1.0 + j * mixed_ray.direction[i]);
    for (int n = D; n < dims; ++n)
      e -= rates.gs[n - D] * std::exp(rates.delta * (1.0 + j * mixed_ray.direction[n]));
    return e;
  };

  // Anchor the unknown constant at the first sample.
  const double log_c = std::log(mixed_ray.values.front()) - model_log(mixed_ray.offsets.front());
  report.predicted.resize(mixed_ray.values.size());
  report.max_log_deviation = 0.0;
  for (std::size_t k = 0; k < mixed_ray.values.size(); ++k) {
    const double pred = std::exp(log_c + model_log(mixed_ray.offsets[k]));
    report.predicted[k] = pred;
    const double dev = std::abs(std::log(mixed_ray.values[k]) - std::log(pred));
    if (dev > report.max_log_deviation) report.max_log_deviation = dev;
  }
  return report;
}

AprioriG apriori_g(int N, const std::vector<double>& lambdas, double eps_E) {
  AprioriG out;
  out.g_star.reserve(lambdas.size());
  out.g_tilde.reserve(lambdas.size());
  for (double lambda : lambdas) {
    if (lambda <= 0.0) throw std::invalid_argument("apriori_g: lambdas must be positive");
    const double tau = std::numbers::pi / (2.0 * N * lambda);
    const double rho = tau + std::sqrt(tau * tau + 1.0);
    out.g_star.push_back(std::log(rho));
    out.g_tilde.push_back(0.5 * std::log(rho) * (1.0 - eps_E));
  }
  return out;
}

ComplexityParams complexity_params(const RateModel& rates) {
  rates.validate();
  ComplexityParams params;
  params.Xi.resize(rates.D());
  params.chi = 0.0;
  params.zeta = rates.rs[0] / rates.gammas[0];
  for (int i = 0; i < rates.D(); ++i) {
    params.Xi[i] = rates.gammas[i] / (rates.gammas[i] + rates.rs[i]);
    params.chi = std::max(params.chi, params.Xi[i]);
    params.zeta = std::min(params.zeta, rates.rs[i] / rates.gammas[i]);
  }
  params.zfrak = 0;
  for (int i = 0; i < rates.D(); ++i) {
    const double ratio = rates.rs[i] / rates.gammas[i];
    if (std::abs(ratio - params.zeta) <= 1e-12 * std::max(1.0, std::abs(params.zeta)))
      ++params.zfrak;
  }
  return params;
}

double level_for_budget(double W_max, const ComplexityParams& params) {
  const double bound = params.C_W * std::exp(params.chi);
  if (W_max < bound) {
    std::ostringstream msg;
    msg << "level_for_budget: W_max=" << W_max << " is below the admissible bound C_W exp(chi)="
        << bound;
    throw std::invalid_argument(msg.str());
  }
  const double base = std::log(W_max / params.C_W) / params.chi;
  double L = base;
  if (params.zfrak > 1) L -= (params.zfrak - 1) * std::log(base) / params.chi;
  if (!(L > 0.0)) {
    std::ostringstream msg;
    msg << "level_for_budget: budget W_max=" << W_max
        << " is outside the asymptotic regime (computed L=" << L << " <= 0)";
    throw std::invalid_argument(msg.str());
  }
  return L;
}

double predicted_error(double W, const ComplexityParams& params) {
  if (!(W > 1.0)) throw std::invalid_argument("predicted_error: W must exceed 1");
  return std::pow(W, -params.zeta) *
         std::pow(std::log(W), (params.zeta + 1.0) * (params.zfrak - 1));
}

}  // namespace misc::rates
