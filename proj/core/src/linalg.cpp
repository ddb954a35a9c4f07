#include "fdp/support/linalg.hpp"

#include "fdp/support/error.hpp"

namespace fdp::linalg {

using exactnum::Int;

namespace {

struct Echelon {
  std::vector<std::vector<Rational>> rows; // reduced row echelon form
  std::vector<long> pivot_col;             // per row
};

// Fraction-free (Bareiss-style) forward elimination on the cleared integer
// matrix, followed by back substitution over the rationals. Partial
// pivoting picks the largest-magnitude pivot in the column.
Echelon rref(Matrix a, size_t cols) {
  for (auto& row : a) row.resize(cols, Rational(0));

  // clear denominators per row
  std::vector<std::vector<Int>> m;
  m.reserve(a.size());
  for (const auto& row : a) {
    Int den = 1;
    for (const auto& x : row) den = exactnum::lcm_int(den, x.get_den());
    std::vector<Int> r;
    r.reserve(cols);
    for (const auto& x : row) r.push_back(x.get_num() * (den / x.get_den()));
    m.push_back(std::move(r));
  }

  size_t nrows = m.size();
  std::vector<long> pivots;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < nrows; ++c) {
    size_t best = r;
    for (size_t i = r; i < nrows; ++i)
      if (cmp(abs(m[i][c]), abs(m[best][c])) > 0) best = i;
    if (m[best][c] == 0) continue;
    std::swap(m[r], m[best]);
    for (size_t i = 0; i < nrows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      // integer cross-multiplication row update: row_i = p*row_i - f*row_r
      Int f = m[i][c];
      for (size_t j = 0; j < cols; ++j) m[i][j] = m[r][c] * m[i][j] - f * m[r][j];
    }
    pivots.push_back(static_cast<long>(c));
    ++r;
    // strip content per row to keep growth down
    for (size_t i = 0; i < nrows; ++i) {
      Int g = 0;
      for (const auto& x : m[i]) g = exactnum::gcd_int(g, x);
      if (g > 1)
        for (auto& x : m[i]) x /= g;
    }
  }


  Echelon e;
  e.pivot_col = pivots;
  e.rows.resize(pivots.size());
  for (size_t i = 0; i < pivots.size(); ++i) {
    e.rows[i].assign(cols, Rational(0));
    Rational lead(m[i][pivots[i]]);
    for (size_t j = 0; j < cols; ++j) e.rows[i][j] = Rational(m[i][j]) / lead;
  }
  // back-substitute to reduced form
  for (size_t i = pivots.size(); i-- > 0;) {
    for (size_t k = 0; k < i; ++k) {
      Rational f = e.rows[k][pivots[i]];
      if (f == 0) continue;
      for (size_t j = 0; j < cols; ++j) e.rows[k][j] -= f * e.rows[i][j];
    }
  }
  return e;
}

} // namespace

std::vector<std::vector<Rational>> null_space(const Matrix& a, size_t cols) {
  Echelon e = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (long c : e.pivot_col) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (size_t free_c = 0; free_c < cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free_c] = 1;
    for (size_t i = 0; i < e.rows.size(); ++i)
      v[e.pivot_col[i]] = -e.rows[i][free_c];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Rational> solve(const Matrix& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) raise(ErrorKind::domain, "solve: shape mismatch");
  size_t cols = 0;
  for (const auto& row : a) cols = std::max(cols, row.size());
  Matrix aug = a;
  for (size_t i = 0; i < aug.size(); ++i) {
    aug[i].resize(cols, Rational(0));
    aug[i].push_back(b[i]);
  }
  Echelon e = rref(aug, cols + 1);
  std::vector<Rational> x(cols, Rational(0));
  for (size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivot_col[i] == static_cast<long>(cols))
      raise(ErrorKind::check_failed, "solve: inconsistent system");
  }
  if (e.rows.size() < cols) {
    // underdetermined only if some variable column lacks a pivot
    std::vector<bool> is_pivot(cols, false);
    for (long c : e.pivot_col)
      if (c < static_cast<long>(cols)) is_pivot[c] = true;
    for (size_t c = 0; c < cols; ++c)
      if (!is_pivot[c]) raise(ErrorKind::domain, "solve: underdetermined system");
  }
  for (size_t i = 0; i < e.rows.size(); ++i) x[e.pivot_col[i]] = e.rows[i][cols];
  return x;
}

size_t rank(Matrix a) {
  size_t cols = 0;
  for (const auto& row : a) cols = std::max(cols, row.size());
  return rref(std::move(a), cols).rows.size();
}

Matrix inverse(const Matrix& a) {
  size_t n = a.size();
  Matrix aug = a;
  for (size_t i = 0; i < n; ++i) {
    if (aug[i].size() != n) raise(ErrorKind::domain, "inverse: matrix not square");
    for (size_t j = 0; j < n; ++j) aug[i].push_back(Rational(i == j ? 1 : 0));
  }
  Echelon e = rref(aug, 2 * n);
  if (e.rows.size() != n) raise(ErrorKind::check_failed, "inverse: singular matrix");
  for (size_t i = 0; i < n; ++i)
    if (e.pivot_col[i] != static_cast<long>(i))
      raise(ErrorKind::check_failed, "inverse: singular matrix");
  Matrix out(n, std::vector<Rational>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i][j] = e.rows[i][n + j];
  return out;
}

} // namespace fdp::linalg
