#include "misc/fd_solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace misc::fd {

std::size_t SpatialGrid::dof() const {
  std::size_t total = 1;
  for (int ni : n) total *= static_cast<std::size_t>(ni);
  return total;
}

SpatialGrid build_grid(const std::vector<int>& alpha, int inv_h0) {
  if (alpha.empty()) throw std::invalid_argument("build_grid: empty level vector");
  if (inv_h0 < 1) throw std::invalid_argument("build_grid: 1/h0 must be a positive integer");
  SpatialGrid grid;
  grid.alpha = alpha;
  grid.inv_h0 = inv_h0;
  const int d = grid.dims();
  grid.n.resize(d);
  grid.h.resize(d);
  for (int i = 0; i < d; ++i) {
    if (alpha[i] < 1) throw std::invalid_argument("build_grid: levels must be >= 1");
    const long inv_h = static_cast<long>(inv_h0) << alpha[i];
    grid.n[i] = static_cast<int>(inv_h - 1);
    grid.h[i] = 1.0 / static_cast<double>(inv_h);
  }
  grid.stride.assign(d, 1);
  for (int i = d - 2; i >= 0; --i)
    grid.stride[i] = grid.stride[i + 1] * static_cast<std::size_t>(grid.n[i + 1]);
  return grid;
}

namespace {

// Iterates a multi-index over mixed extents in row-major order.
bool advance(std::vector<int>& k, const std::vector<int>& extents) {
  for (int i = static_cast<int>(k.size()) - 1; i >= 0; --i) {
    if (++k[i] < extents[i]) return true;
    k[i] = 0;
  }
  return false;
}

}  // namespace

EllipticSystem assemble(const SpatialGrid& grid, const ScalarField& a, const ScalarField& f) {
  const int d = grid.dims();
  EllipticSystem sys;
  sys.grid = grid;
  sys.face_coeff.resize(d);

  std::vector<double> x(d);
  for (int dir = 0; dir < d; ++dir) {
    // Faces along dir: extent n_dir + 1, face s between nodes s-1 and s,
    // located at (s + 1/2) h.
    std::vector<int> extents = grid.n;
    extents[dir] += 1;
    std::size_t count = 1;
    for (int e : extents) count *= static_cast<std::size_t>(e);
    std::vector<double>& coeff = sys.face_coeff[dir];
    coeff.resize(count);
    std::vector<int> k(d, 0);
    std::size_t flat = 0;
    do {
      for (int i = 0; i < d; ++i)
        x[i] = (i == dir) ? (k[i] + 0.5) * grid.h[i] : grid.coord(i, k[i]);
      coeff[flat++] = a(x);
    } while (advance(k, extents));
  }

  sys.rhs.resize(grid.dof());
  std::vector<int> k(d, 0);
  std::size_t flat = 0;
  do {
    for (int i = 0; i < d; ++i) x[i] = grid.coord(i, k[i]);
    sys.rhs[flat++] = f(x);
  } while (advance(k, grid.n));
  return sys;
}

void EllipticSystem::apply(const std::vector<double>& u, std::vector<double>& out) const {
  const int d = grid.dims();
  out.assign(u.size(), 0.0);
  std::vector<std::size_t> face_stride(d);
  for (int dir = 0; dir < d; ++dir) {
    // Strides of the staggered array for this direction.
    std::vector<std::size_t> fs(d, 1);
    for (int i = d - 2; i >= 0; --i) {
      const std::size_t ext = static_cast<std::size_t>(grid.n[i + 1]) + (i + 1 == dir ? 1 : 0);
      fs[i] = fs[i + 1] * ext;
    }
    const double inv_h2 = 1.0 / (grid.h[dir] * grid.h[dir]);
    const std::vector<double>& coeff = face_coeff[dir];

    std::vector<int> k(d, 0);
    std::size_t flat = 0;
    do {
      std::size_t fbase = 0;
      for (int i = 0; i < d; ++i) fbase += static_cast<std::size_t>(k[i]) * fs[i];
      const double aL = coeff[fbase];
      const double aR = coeff[fbase + fs[dir]];
      double v = (aL + aR) * u[flat];
      if (k[dir] > 0) v -= aL * u[flat - grid.stride[dir]];
      if (k[dir] + 1 < grid.n[dir]) v -= aR * u[flat + grid.stride[dir]];
      out[flat] += v * inv_h2;
      ++flat;
    } while (advance(k, grid.n));
  }
}

std::vector<double> EllipticSystem::diagonal() const {
  const int d = grid.dims();
  std::vector<double> diag(grid.dof(), 0.0);
  for (int dir = 0; dir < d; ++dir) {
    std::vector<std::size_t> fs(d, 1);
    for (int i = d - 2; i >= 0; --i) {
      const std::size_t ext = static_cast<std::size_t>(grid.n[i + 1]) + (i + 1 == dir ? 1 : 0);
      fs[i] = fs[i + 1] * ext;
    }
    const double inv_h2 = 1.0 / (grid.h[dir] * grid.h[dir]);
    std::vector<int> k(d, 0);
    std::size_t flat = 0;
    do {
      std::size_t fbase = 0;
      for (int i = 0; i < d; ++i) fbase += static_cast<std::size_t>(k[i]) * fs[i];
      diag[flat] += (face_coeff[dir][fbase] + face_coeff[dir][fbase + fs[dir]]) * inv_h2;
      ++flat;
    } while (advance(k, grid.n));
  }
  return diag;
}

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

SolveResult solve_tridiagonal(const EllipticSystem& sys) {
  const int n = sys.grid.n[0];
  const double inv_h2 = 1.0 / (sys.grid.h[0] * sys.grid.h[0]);
  const std::vector<double>& a = sys.face_coeff[0];  // n+1 faces
  std::vector<double> diag(n), lower(n), upper(n);
  for (int k = 0; k < n; ++k) {
    diag[k] = (a[k] + a[k + 1]) * inv_h2;
    lower[k] = k > 0 ? -a[k] * inv_h2 : 0.0;
    upper[k] = k + 1 < n ? -a[k + 1] * inv_h2 : 0.0;
  }
  std::vector<double> c(n), dvec(n);
  c[0] = upper[0] / diag[0];
  dvec[0] = sys.rhs[0] / diag[0];
  for (int k = 1; k < n; ++k) {
    const double m = diag[k] - lower[k] * c[k - 1];
    c[k] = upper[k] / m;
    dvec[k] = (sys.rhs[k] - lower[k] * dvec[k - 1]) / m;
  }
  SolveResult result;
  result.u.resize(n);
  result.u[n - 1] = dvec[n - 1];
  for (int k = n - 2; k >= 0; --k) result.u[k] = dvec[k] - c[k] * result.u[k + 1];
  result.iterations = 0;

  std::vector<double> au;
  sys.apply(result.u, au);
  double rnorm = 0.0;
  for (int k = 0; k < n; ++k) {
    const double r = sys.rhs[k] - au[k];
    rnorm += r * r;
  }
  result.rel_residual = std::sqrt(rnorm) / norm2(sys.rhs);
  return result;
}

}  // namespace

SolveResult solve(const EllipticSystem& sys, const SolverOptions& opts) {
  const std::size_t dof = sys.grid.dof();
  if (dof > opts.dof_cap) {
    std::ostringstream msg;
    msg << "solve: system with " << dof << " dofs exceeds the cap of " << opts.dof_cap
        << "; use a coarser level or raise the cap";
    throw std::runtime_error(msg.str());
  }
  if (sys.grid.dims() == 1) return solve_tridiagonal(sys);

  // Jacobi-preconditioned conjugate gradients.
  const std::vector<double>& b = sys.rhs;
  const double bnorm = norm2(b);
  SolveResult result;
  result.u.assign(dof, 0.0);
  if (bnorm == 0.0) return result;

  std::vector<double> r = b;
  std::vector<double> diag = sys.diagonal();
  std::vector<double> z(dof), p(dof), v(dof);
  for (std::size_t k = 0; k < dof; ++k) z[k] = r[k] / diag[k];
  p = z;
  double rz = 0.0;
  for (std::size_t k = 0; k < dof; ++k) rz += r[k] * z[k];

  const long max_iter = static_cast<long>(opts.max_iter_factor) * static_cast<long>(dof);
  double rnorm = norm2(r);
  long iter = 0;
  while (rnorm > opts.rel_tol * bnorm) {
    if (iter >= max_iter) {
      std::ostringstream msg;
      msg << "solve: CG did not converge in " << max_iter
          << " iterations, relative residual " << rnorm / bnorm;
      throw std::runtime_error(msg.str());
    }
    sys.apply(p, v);
    double pv = 0.0;
    for (std::size_t k = 0; k < dof; ++k) pv += p[k] * v[k];
    const double step = rz / pv;
    for (std::size_t k = 0; k < dof; ++k) {
      result.u[k] += step * p[k];
      r[k] -= step * v[k];
    }
    rnorm = norm2(r);
    for (std::size_t k = 0; k < dof; ++k) z[k] = r[k] / diag[k];
    double rz_new = 0.0;
    for (std::size_t k = 0; k < dof; ++k) rz_new += r[k] * z[k];
    const double ratio = rz_new / rz;
    for (std::size_t k = 0; k < dof; ++k) p[k] = z[k] + ratio * p[k];
    rz = rz_new;
    ++iter;
  }
  result.iterations = static_cast<int>(iter);
  result.rel_residual = rnorm / bnorm;
  return result;
}

double evaluate_qoi(const SpatialGrid& grid, const std::vector<double>& u,
                    const field::QoISpec& qoi) {
  if (u.size() != grid.dof()) throw std::invalid_argument("evaluate_qoi: size mismatch");
  const int d = grid.dims();
  double cell = 1.0;
  for (int i = 0; i < d; ++i) cell *= grid.h[i];

  std::vector<double> x(d);
  std::vector<int> k(d, 0);
  std::size_t flat = 0;
  double sum = 0.0;
  do {
    for (int i = 0; i < d; ++i) x[i] = grid.coord(i, k[i]);
    sum += u[flat++] * field::qoi_weight(qoi, x);
  } while (advance(k, grid.n));
  return cell * sum;
}

double model_work(const std::vector<int>& alpha, int inv_h0, double theta) {
  if (theta <= 0.0) throw std::invalid_argument("model_work: theta must be positive");
  double w = 1.0;
  for (int a : alpha) w *= std::pow(static_cast<double>(static_cast<long>(inv_h0) << a), theta);
  return w;
}

}  // namespace misc::fd
