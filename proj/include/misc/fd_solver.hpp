#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "misc/random_field.hpp"

namespace misc::fd {

/// Tensor grid on [0,1]^d with per-direction size h_i = h0 * 2^{-alpha_i}.
/// Only interior nodes carry unknowns (homogeneous Dirichlet data).
struct SpatialGrid {
  std::vector<int> alpha;
  int inv_h0 = 3;
  std::vector<int> n;      // interior points per direction, 1/h_i - 1
  std::vector<double> h;
  std::vector<std::size_t> stride;

  int dims() const { return static_cast<int>(alpha.size()); }
  std::size_t dof() const;
  /// Coordinate of interior node k (0-based) along direction i: (k+1) h_i.
  double coord(int dir, int k) const { return (k + 1) * h[dir]; }
};

SpatialGrid build_grid(const std::vector<int>& alpha, int inv_h0);

using ScalarField = std::function<double(const std::vector<double>& x)>;

/// Conservative second-order stencil for -div(a grad u) = f with the
/// coefficient sampled at cell faces (half points). Matrix-free: the
/// operator is applied through the per-direction face coefficient arrays,
/// which keeps it symmetric positive definite by construction.
struct EllipticSystem {
  SpatialGrid grid;
  std::vector<std::vector<double>> face_coeff;  // per direction, staggered layout
  std::vector<double> rhs;

  void apply(const std::vector<double>& u, std::vector<double>& out) const;
  std::vector<double> diagonal() const;
};

EllipticSystem assemble(const SpatialGrid& grid, const ScalarField& a, const ScalarField& f);

struct SolverOptions {
  double rel_tol = 1e-10;
  int max_iter_factor = 10;          // iteration cap = factor * dof
  std::size_t dof_cap = std::size_t{1} << 17;
};

struct SolveResult {
  std::vector<double> u;
  int iterations = 0;
  double rel_residual = 0.0;
};

/// Direct tridiagonal solve in 1d, Jacobi-preconditioned conjugate gradients
/// otherwise. Throws on dof-cap violation or non-convergence.
SolveResult solve(const EllipticSystem& sys, const SolverOptions& opts = {});

/// Tensor trapezoidal rule of u * Q over the grid; the boundary contributes
/// nothing (u vanishes there and Q is negligible at the boundary).
double evaluate_qoi(const SpatialGrid& grid, const std::vector<double>& u,
                    const field::QoISpec& qoi);

/// Work model prod_i (1/h_i)^theta for a single solve at level alpha.
double model_work(const std::vector<int>& alpha, int inv_h0, double theta);

}  // namespace misc::fd
