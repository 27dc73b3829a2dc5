#include "axdecomp/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace axdecomp {

namespace {

constexpr double kEpsSym = 1e-10;
constexpr double kEpsPd = 1e-14;

// Cholesky-style SPD check: all pivots must stay positive.
bool cholesky_ok(const Matrix& g) {
  const std::size_t n = g.dim();
  Matrix l(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = g(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= kEpsPd) return false;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return true;
}

}  // namespace

Space::Space(std::size_t dim, Matrix gram, Tolerance tol)
    : dim_(dim), gram_(std::move(gram)), tol_(tol) {
  if (dim_ == 0) throw precondition_error("space dimension must be positive");
  if (gram_.dim() != dim_) throw dimension_error("gram matrix does not match dimension");
  const double scale = std::max(1.0, max_abs(gram_));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if (std::fabs(gram_(i, j) - gram_(j, i)) > kEpsSym * scale)
        throw precondition_error("gram matrix is not symmetric");
  if (!cholesky_ok(gram_))
    throw precondition_error("gram matrix is not positive definite");
}

Space::Space(std::size_t dim, Tolerance tol)
    : Space(dim, Matrix::identity(dim), tol) {}

double Space::inner(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw dimension_error("vector does not match space dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    double gi = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) gi += gram_(i, j) * y[j];
    s += x[i] * gi;
  }
  return s;
}

double Space::norm(const Vector& x) const {
  return std::sqrt(std::max(0.0, inner(x, x)));
}

double Space::angle(const Vector& x, const Vector& y) const {
  const double nx = norm(x);
  const double ny = norm(y);
  if (nx <= tol_.abs || ny <= tol_.abs)
    throw precondition_error("angle of a zero vector is undefined");
  const double c = std::clamp(inner(x, y) / (nx * ny), -1.0, 1.0);
  return std::acos(c);
}

LuFactors lu_factor(const Matrix& a, double pivot_floor) {
  const std::size_t n = a.dim();
  LuFactors f{a, std::vector<std::size_t>(n), 1.0};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  Matrix& lu = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(lu(i, k)) > std::fabs(lu(p, k))) p = i;
    if (std::fabs(lu(p, k)) < pivot_floor)
      throw singular_error("singular matrix: pivot below threshold");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(p, j), lu(k, j));
      std::swap(f.perm[p], f.perm[k]);
      f.sign = -f.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      lu(i, k) /= lu(k, k);
      const double m = lu(i, k);
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= m * lu(k, j);
    }
  }
  return f;
}

Vector lu_solve(const LuFactors& f, const Vector& b) {
  const std::size_t n = f.lu.dim();
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
    x[ii] /= f.lu(ii, ii);
  }
  return x;
}

Vector solve(const Matrix& a, const Vector& b, const Tolerance& tol) {
  if (a.dim() != b.size()) throw dimension_error("solve: dimension mismatch");
  const double floor = tol.rank_tol * std::max(max_abs(a), tol.abs);
  return lu_solve(lu_factor(a, floor), b);
}

Matrix inverse(const Matrix& a, const Tolerance& tol) {
  const std::size_t n = a.dim();
  const double floor = tol.rank_tol * std::max(max_abs(a), tol.abs);
  const LuFactors f = lu_factor(a, floor);
  Matrix inv(n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    inv.set_column(j, lu_solve(f, e));
    e[j] = 0.0;
  }
  return inv;
}

double det(const Matrix& a) {
  try {
    const LuFactors f = lu_factor(a, 0.0);
    double d = f.sign;
    for (std::size_t i = 0; i < a.dim(); ++i) d *= f.lu(i, i);
    return d;
  } catch (const singular_error&) {
    return 0.0;  // exact zero pivot
  }
}

std::size_t rank_abs(const Matrix& a, double threshold) {
  const std::size_t n = a.dim();
  Matrix m = a;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < n; ++col) {
    std::size_t p = r;
    for (std::size_t i = r + 1; i < n; ++i)
      if (std::fabs(m(i, col)) > std::fabs(m(p, col))) p = i;
    if (std::fabs(m(p, col)) <= threshold) continue;
    if (p != r)
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(r, j));
    for (std::size_t i = r + 1; i < n; ++i) {
      const double f = m(i, col) / m(r, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

std::size_t rank(const Matrix& a, const Tolerance& tol) {
  const double scale = max_abs(a);
  if (scale <= tol.abs) return 0;
  return rank_abs(a, tol.rank_tol * scale);
}

Vector null_vector(const Matrix& a, const Tolerance& tol) {
  const std::size_t n = a.dim();
  const double threshold = tol.rank_tol * std::max(max_abs(a), tol.abs);
  Matrix m = a;
  // Row echelon with partial pivoting; remember pivot (row, col) pairs.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < n; ++col) {
    std::size_t p = r;
    for (std::size_t i = r + 1; i < n; ++i)
      if (std::fabs(m(i, col)) > std::fabs(m(p, col))) p = i;
    if (std::fabs(m(p, col)) <= threshold) continue;
    if (p != r)
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(r, j));
    for (std::size_t i = r + 1; i < n; ++i) {
      const double f = m(i, col) / m(r, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.emplace_back(r, col);
    ++r;
  }
  std::vector<bool> is_pivot_col(n, false);
  for (auto& [pr, pc] : pivots) is_pivot_col[pc] = true;
  std::size_t free_col = n;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot_col[j]) {
      free_col = j;
      break;
    }
  if (free_col == n) {
    // Numerically full rank: sacrifice the weakest pivot.
    std::size_t weakest = 0;
    for (std::size_t k = 1; k < pivots.size(); ++k)
      if (std::fabs(m(pivots[k].first, pivots[k].second)) <
          std::fabs(m(pivots[weakest].first, pivots[weakest].second)))
        weakest = k;
    free_col = pivots[weakest].second;
    pivots.erase(pivots.begin() + static_cast<std::ptrdiff_t>(weakest));
  }
  Vector x(n, 0.0);
  x[free_col] = 1.0;
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const auto [pr, pc] = pivots[k];
    double s = 0.0;
    for (std::size_t j = pc + 1; j < n; ++j) s += m(pr, j) * x[j];
    x[pc] = -s / m(pr, pc);
  }
  double nrm = 0.0;
  for (double v : x) nrm += v * v;
  nrm = std::sqrt(nrm);
  for (double& v : x) v /= nrm;
  return x;
}

std::vector<Vector> gram_schmidt(const Space& space,
                                 const std::vector<Vector>& candidates,
                                 double drop_tol) {
  std::vector<Vector> out;
  for (const Vector& c : candidates) {
    Vector v = c;
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : out) {
        const double proj = space.inner(q, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * q[i];
      }
    const double nv = space.norm(v);
    if (nv <= drop_tol * std::max(1.0, space.norm(c))) continue;
    for (double& vi : v) vi /= nv;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> orthonormal_basis(const Space& space) {
  const std::size_t n = space.dim();
  std::vector<Vector> candidates;
  candidates.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector e(n, 0.0);
    e[i] = 1.0;
    candidates.push_back(std::move(e));
  }
  std::vector<Vector> basis = gram_schmidt(space, candidates, 1e-14);
  if (basis.size() != n)
    throw internal_error("orthonormal_basis: Gram-Schmidt lost a direction");
  return basis;
}

}  // namespace axdecomp
