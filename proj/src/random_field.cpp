#include "misc/random_field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace misc::field {

const std::vector<std::array<int, 3>>& default_mode_table() {
  static const std::vector<std::array<int, 3>> table = {
      {1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2}, {3, 1, 1},
      {2, 2, 1}, {2, 1, 2}, {1, 3, 1}, {1, 2, 2}, {1, 1, 3},
  };
  return table;
}

FieldSpec FieldSpec::test_problem(int d, int N) {
  if (d != 1 && d != 3) throw std::invalid_argument("FieldSpec: d must be 1 or 3");
  if (N < 1) throw std::invalid_argument("FieldSpec: N must be >= 1");
  FieldSpec spec;
  spec.d = d;
  spec.N = N;
  spec.lambdas.resize(N);
  for (int n = 1; n <= N; ++n)
    spec.lambdas[n - 1] = std::sqrt(3.0) * std::exp(-static_cast<double>(n));
  if (d == 3) {
    if (N > static_cast<int>(default_mode_table().size()))
      throw std::invalid_argument("FieldSpec: mode table defines only N <= 10 for d=3");
    spec.mode_table.assign(default_mode_table().begin(), default_mode_table().begin() + N);
  }
  return spec;
}

double FieldSpec::sum_lambda() const {
  double s = 0.0;
  for (double l : lambdas) s += l;
  return s;
}

double phi(int n, double x) {
  if (n < 1) throw std::invalid_argument("phi: n must be >= 1");
  if (n % 2 == 0) return std::sin(0.5 * n * std::numbers::pi * x);
  return std::cos(0.5 * (n - 1) * std::numbers::pi * x);
}

double psi(const FieldSpec& spec, int n, const std::vector<double>& x) {
  if (n < 1 || n > spec.N) throw std::invalid_argument("psi: n out of range");
  if (static_cast<int>(x.size()) != spec.d)
    throw std::invalid_argument("psi: point dimension mismatch");
  if (spec.d == 1) return phi(n, x[0]);
  if (n > static_cast<int>(spec.mode_table.size()))
    throw std::invalid_argument("psi: mode table has no entry for n=" + std::to_string(n));
  const auto& modes = spec.mode_table[n - 1];
  return phi(modes[0], x[0]) * phi(modes[1], x[1]) * phi(modes[2], x[2]);
}

double diffusion(const FieldSpec& spec, const std::vector<double>& x,
                 const std::vector<double>& y) {
  if (static_cast<int>(y.size()) != spec.N)
    throw std::invalid_argument("diffusion: parameter dimension mismatch");
  double exponent = 0.0;
  for (int n = 1; n <= spec.N; ++n)
    exponent += spec.lambdas[n - 1] * psi(spec, n, x) * y[n - 1];
  return std::exp(exponent);
}

QoISpec QoISpec::test_problem(int d) {
  QoISpec qoi;
  qoi.sigma = 0.16;
  if (d == 1)
    qoi.x0 = {0.3};
  else if (d == 3)
    qoi.x0 = {0.3, 0.2, 0.6};
  else
    throw std::invalid_argument("QoISpec: d must be 1 or 3");
  return qoi;
}

double qoi_weight(const QoISpec& qoi, const std::vector<double>& x) {
  if (x.size() != qoi.x0.size())
    throw std::invalid_argument("qoi_weight: point dimension mismatch");
  if (qoi.sigma <= 0.0) throw std::invalid_argument("qoi_weight: sigma must be positive");
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - qoi.x0[i];
    r2 += dx * dx;
  }
  const int d = static_cast<int>(x.size());
  const double norm = std::pow(qoi.sigma * std::sqrt(2.0 * std::numbers::pi), -d);
  return norm * std::exp(-r2 / (2.0 * qoi.sigma * qoi.sigma));
}

}  // namespace misc::field
