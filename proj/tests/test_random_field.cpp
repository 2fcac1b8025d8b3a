#include <doctest.h>

#include <cmath>
#include <random>

#include "misc/random_field.hpp"

using namespace misc;

TEST_CASE("phi modes") {
  for (double x : {0.0, 0.25, 0.7, 1.0}) CHECK(field::phi(1, x) == doctest::Approx(1.0));
  CHECK(field::phi(2, 0.5) == doctest::Approx(1.0));        // sin(pi/2)
  CHECK(field::phi(3, 1.0) == doctest::Approx(-1.0));       // cos(pi)
  CHECK(field::phi(4, 0.25) == doctest::Approx(1.0));       // sin(pi/2)
  CHECK_THROWS(field::phi(0, 0.5));
}

TEST_CASE("psi for d=1 and d=3") {
  const auto f1 = field::FieldSpec::test_problem(1, 3);
  CHECK(field::psi(f1, 3, {1.0}) == doctest::Approx(-1.0));

  const auto f3 = field::FieldSpec::test_problem(3, 10);
  CHECK(field::psi(f3, 1, {0.1, 0.9, 0.4}) == doctest::Approx(1.0));
  CHECK(field::psi(f3, 2, {0.5, 0.77, 0.13}) == doctest::Approx(1.0));  // row (2,1,1)
  CHECK_THROWS((void)field::FieldSpec::test_problem(3, 11));
}

TEST_CASE("psi sup-norms are 1 on a dense grid") {
  // d=1: 10001 sample points.
  const auto f1 = field::FieldSpec::test_problem(1, 6);
  for (int n = 1; n <= 6; ++n) {
    double best = 0.0;
    for (int k = 0; k <= 10000; ++k)
      best = std::max(best, std::abs(field::psi(f1, n, {k / 10000.0})));
    CHECK(best >= 0.999);
    CHECK(best <= 1.0 + 1e-12);
  }
  // d=3: 21^3 grid with spacing 0.05 (hits the mode extrema exactly).
  const auto f3 = field::FieldSpec::test_problem(3, 10);
  for (int n = 1; n <= 10; ++n) {
    double best = 0.0;
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j)
        for (int k = 0; k <= 20; ++k)
          best = std::max(best,
                          std::abs(field::psi(f3, n, {i / 20.0, j / 20.0, k / 20.0})));
    CHECK(best >= 0.999);
    CHECK(best <= 1.0 + 1e-12);
  }
}

TEST_CASE("lambda sequence") {
  const auto spec = field::FieldSpec::test_problem(1, 6);
  CHECK(std::abs(spec.lambdas[0] - 0.63718588316898395) < 1e-15);
  for (int n = 0; n + 1 < 6; ++n) {
    CHECK(spec.lambdas[n] > spec.lambdas[n + 1]);
    CHECK(std::abs(spec.lambdas[n + 1] / spec.lambdas[n] - std::exp(-1.0)) < 1e-14);
  }
}

TEST_CASE("diffusion coefficient") {
  const auto spec = field::FieldSpec::test_problem(1, 4);
  CHECK(field::diffusion(spec, {0.37}, {0, 0, 0, 0}) == doctest::Approx(1.0));

  const auto one = field::FieldSpec::test_problem(1, 1);
  // psi_1 is identically 1, so a = exp(lambda_1 y).
  CHECK(std::abs(field::diffusion(one, {0.5}, {1.0}) - 1.8911514628601405) < 1e-13);

  // Bounds over random samples.
  const auto f3 = field::FieldSpec::test_problem(3, 5);
  const double cap = std::exp(f3.sum_lambda());
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> ux(0.0, 1.0), uy(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> x{ux(rng), ux(rng), ux(rng)};
    std::vector<double> y(5);
    for (double& v : y) v = uy(rng);
    const double a = field::diffusion(f3, x, y);
    CHECK(a >= 1.0 / cap - 1e-15);
    CHECK(a <= cap + 1e-15);
  }
}

TEST_CASE("qoi weight") {
  const auto q1 = field::QoISpec::test_problem(1);
  CHECK(std::abs(field::qoi_weight(q1, {0.3}) - 2.4933892525089547) < 1e-14);
  CHECK(field::qoi_weight(q1, {0.3 + 0.07}) ==
        doctest::Approx(field::qoi_weight(q1, {0.3 - 0.07})).epsilon(1e-14));

  const auto q3 = field::QoISpec::test_problem(3);
  CHECK(std::abs(field::qoi_weight(q3, {0.3, 0.2, 0.6}) - 15.501375960508058) < 1e-11);
  CHECK(field::qoi_weight(q3, {0.9, 0.9, 0.9}) > 0.0);
}
