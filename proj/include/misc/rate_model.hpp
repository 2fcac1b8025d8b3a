#pragma once

#include <vector>

namespace misc {

/// Exponential work/error decay model for the contributions of one mixed
/// difference:
///   dW <= C_work  exp(sum_i gamma_i alpha_i) exp(delta |beta|)
///   dE <= C_error exp(-sum_i r_i alpha_i) exp(-sum_j g_j exp(delta beta_j))
/// with gamma_i = gamma~_i log 2, r_i = r~_i log 2 and delta = log 2.
struct RateModel {
  std::vector<double> gammas;  // length D
  std::vector<double> rs;      // length D
  std::vector<double> gs;      // length N
  double delta;                // log 2
  double C_work = 1.0;
  double C_error = 1.0;

  RateModel();
  RateModel(std::vector<double> gammas_, std::vector<double> rs_, std::vector<double> gs_);

  int D() const { return static_cast<int>(gammas.size()); }
  int N() const { return static_cast<int>(gs.size()); }

  /// Conversion from the base-2 exponents (gamma~, r~); g rates are used
  /// directly as coefficients of 2^beta in the error model.
  static RateModel from_tilde(const std::vector<double>& gamma_tilde,
                              const std::vector<double>& r_tilde,
                              const std::vector<double>& g);

  void validate() const;
};

/// Quantities of the complexity statement: Xi_i = gamma_i / (gamma_i + r_i),
/// chi = max(Xi), zeta = min r_i/gamma_i and zfrak its multiplicity.
struct ComplexityParams {
  std::vector<double> Xi;
  double chi = 0.0;
  double zeta = 0.0;
  int zfrak = 1;
  double C_W = 1.0;
};

}  // namespace misc
