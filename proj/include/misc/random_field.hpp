#pragma once

#include <array>
#include <vector>

namespace misc::field {

/// Log-uniform diffusion field a(x,y) = exp(sum_n lambda_n psi_n(x) y_n)
/// with lambda_n = sqrt(3) e^{-n} and trigonometric modes psi_n.
struct FieldSpec {
  int d = 1;  // spatial dimension (1 or 3)
  int N = 1;  // number of random variables
  std::vector<double> lambdas;
  // For d=3: per-variable triple of univariate mode numbers (i,j,k).
  std::vector<std::array<int, 3>> mode_table;

  static FieldSpec test_problem(int d, int N);

  double sum_lambda() const;
};

/// Default mode-number table for d=3 (defined for N <= 10).
const std::vector<std::array<int, 3>>& default_mode_table();

/// Univariate trig modes: sin(n pi x / 2) for even n, cos((n-1) pi x / 2)
/// for odd n. phi_1 is identically 1.
double phi(int n, double x);

/// psi_n(x): phi_n(x) for d=1, the tabulated product
/// phi_i(x1) phi_j(x2) phi_k(x3) for d=3. sup-norm 1 by construction.
double psi(const FieldSpec& spec, int n, const std::vector<double>& x);

/// a(x, y) = exp(sum_n lambda_n psi_n(x) y_n), bounded within
/// [exp(-sum lambda), exp(sum lambda)] for |y_n| <= 1.
double diffusion(const FieldSpec& spec, const std::vector<double>& x,
                 const std::vector<double>& y);

/// Gaussian weight of the quantity of interest F(y) = int u(x,y) Q(x) dx.
struct QoISpec {
  double sigma = 0.16;
  std::vector<double> x0;

  static QoISpec test_problem(int d);
};

double qoi_weight(const QoISpec& qoi, const std::vector<double>& x);

}  // namespace misc::field
