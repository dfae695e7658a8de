#pragma once

// Exact lattice linear algebra over arbitrary-precision integers and
// rationals. Everything here is deterministic and allocation-heavy rather
// than fast; inputs are desk-scale (dimension <= 6 or so).

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace toric {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// A lattice vector is a coordinate vector; its dimension is its length.
using Vec = std::vector<Int>;
// Rational points (polytope vertices, intermediate elimination results).
using QVec = std::vector<Rat>;

inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

inline Int dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec negated(const Vec& v) {
  Vec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
  return w;
}

// Division rounding toward -infinity; the reduction steps in the normal
// forms need true floor behavior, not C++ truncation.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

// v = g * w with w primitive (coordinate gcd 1) and g > 0.
inline std::pair<Vec, Int> primitive_part(const Vec& v) {
  if (is_zero(v)) throw std::domain_error("zero vector has no primitive part");
  Int g = 0;
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  Vec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
  return {std::move(w), std::move(g)};
}

class Mat {
 public:
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("Mat: empty shape");
  }

  Mat(std::initializer_list<std::initializer_list<Int>> init)
      : Mat(init.size(), init.size() ? init.begin()->size() : 0) {
    std::size_t i = 0;
    for (const auto& r : init) {
      if (r.size() != cols_) throw std::invalid_argument("Mat: ragged rows");
      std::size_t j = 0;
      for (const Int& x : r) (*this)(i, j++) = x;
      ++i;
    }
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Mat from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) throw std::invalid_argument("Mat: no rows");
    Mat m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("Mat: ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec row(std::size_t i) const {
    Vec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

  std::vector<Vec> row_list() const {
    std::vector<Vec> rs;
    rs.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) rs.push_back(row(i));
    return rs;
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Column-vector convention throughout: matrices act on the left.
  Vec apply(const Vec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Mat::apply: dimension mismatch");
    Vec w(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
      w[i] = std::move(s);
    }
    return w;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: product shape mismatch");
    Mat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Int> a_;
};

// Bareiss fraction-free elimination: every division below is exact, so the
// result is the true integer determinant with no rational intermediates.
inline Int determinant(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  Mat a = m;
  Int sign = 1;
  Int denom = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / denom;
    denom = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline bool is_unimodular(const Mat& m) {
  if (m.rows() != m.cols()) return false;
  Int d = determinant(m);
  return d == 1 || d == -1;
}

namespace detail {

using QMat = std::vector<QVec>;

// Reduced row echelon form in place; returns the pivot column of each
// nonzero row. Exact rational arithmetic, first-nonzero pivoting.
inline std::vector<std::size_t> rref(QMat& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rat inv = Rat(1) / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rat f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::optional<QMat> rat_inverse(const QMat& m) {
  const std::size_t n = m.size();
  QMat aug(n, QVec(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("rat_inverse: matrix not square");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
  QMat inv(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

// Basis of { x : row . x = 0 for all rows }. Rows may be empty, in which
// case the basis is the standard one.
inline std::vector<QVec> rat_nullspace(const std::vector<Vec>& rows, std::size_t dim) {
  QMat a;
  for (const Vec& r : rows) {
    if (r.size() != dim) throw std::invalid_argument("rat_nullspace: dimension mismatch");
    QVec q(dim);
    for (std::size_t j = 0; j < dim; ++j) q[j] = r[j];
    a.push_back(std::move(q));
  }
  std::vector<std::size_t> pivots;
  if (!a.empty()) pivots = rref(a);
  std::vector<bool> is_pivot(dim, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (std::size_t f = 0; f < dim; ++f) {
    if (is_pivot[f]) continue;
    QVec x(dim);
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -a[i][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

// One exact solution of A x = b (columns given as a QMat of rows), or
// nullopt if inconsistent. Free variables are set to zero; when A has full
// column rank the solution is the unique one.
inline std::optional<QVec> solve_rational(const QMat& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_rational: shape mismatch");
  if (a.empty()) return QVec{};
  const std::size_t rows = a.size(), cols = a[0].size();
  QMat aug(rows, QVec(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  QVec x(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

// Clear denominators and strip the content: the primitive integer vector
// spanning the same rational line, oriented like q.
inline Vec primitive_direction(const QVec& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::lcm;
  using boost::multiprecision::numerator;
  Int l = 1;
  for (const Rat& x : q) l = lcm(l, denominator(x));
  Vec v(q.size());
  bool zero = true;
  for (std::size_t i = 0; i < q.size(); ++i) {
    v[i] = numerator(q[i]) * (l / denominator(q[i]));
    if (v[i] != 0) zero = false;
  }
  if (zero) throw std::domain_error("zero vector has no primitive part");
  return primitive_part(v).first;
}

}  // namespace detail

// Inverse of a determinant +-1 integer matrix; integral by Cramer, computed
// by exact rational elimination and converted back.
inline Mat inverse_unimodular(const Mat& m) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (!is_unimodular(m)) throw std::domain_error("inverse_unimodular: matrix is not unimodular");
  const std::size_t n = m.rows();
  detail::QMat q(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = m(i, j);
  auto inv = detail::rat_inverse(q);
  if (!inv) throw std::logic_error("inverse_unimodular: singular despite unit determinant");
  Mat out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (denominator((*inv)[i][j]) != 1)
        throw std::logic_error("inverse_unimodular: non-integral inverse");
      out(i, j) = numerator((*inv)[i][j]);
    }
  return out;
}

struct HnfResult {
  Mat h;  // row-style Hermite form, U * input = h
  Mat u;  // unimodular row-operation record
};

// Row Hermite normal form with smallest-|pivot| selection. Invariants on
// return: h is upper echelon, pivots positive, entries above each pivot
// reduced into [0, pivot), u unimodular with u * m == h.
inline HnfResult hermite_normal_form(const Mat& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  Mat h = m;
  Mat u = Mat::identity(rows);
  using boost::multiprecision::abs;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols; ++k) std::swap(h(i, k), h(j, k));
    for (std::size_t k = 0; k < rows; ++k) std::swap(u(i, k), u(j, k));
  };
  auto subtract = [&](std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t k = 0; k < cols; ++k) h(i, k) -= q * h(j, k);
    for (std::size_t k = 0; k < rows; ++k) u(i, k) -= q * u(j, k);
  };
  auto negate_row = [&](std::size_t i) {
    for (std::size_t k = 0; k < cols; ++k) h(i, k) = -h(i, k);
    for (std::size_t k = 0; k < rows; ++k) u(i, k) = -u(i, k);
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on the column: keep moving the smallest nonzero entry into the
    // pivot slot and reducing the rest until only the pivot survives.
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (h(i, c) != 0 && (best == rows || abs(h(i, c)) < abs(h(best, c)))) best = i;
      if (best == rows) break;
      swap_rows(r, best);
      bool cleared = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        Int q = h(i, c) / h(r, c);
        if (q != 0) subtract(i, r, q);
        if (h(i, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(h(i, c), h(r, c));
      if (q != 0) subtract(i, r, q);
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

struct SnfResult {
  Mat d;  // diagonal, d1 | d2 | ... , nonnegative
  Mat u;  // unimodular, u * input * v == d
  Mat v;
};

// Smith normal form, smallest-|entry| pivoting. Row operations are mirrored
// into u, column operations into v, so u * m * v == d throughout.
inline SnfResult smith_normal_form(const Mat& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  Mat d = m;
  Mat u = Mat::identity(rows);
  Mat v = Mat::identity(cols);
  using boost::multiprecision::abs;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols; ++k) std::swap(d(i, k), d(j, k));
    for (std::size_t k = 0; k < rows; ++k) std::swap(u(i, k), u(j, k));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows; ++k) std::swap(d(k, i), d(k, j));
    for (std::size_t k = 0; k < cols; ++k) std::swap(v(k, i), v(k, j));
  };
  auto row_sub = [&](std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t k = 0; k < cols; ++k) d(i, k) -= q * d(j, k);
    for (std::size_t k = 0; k < rows; ++k) u(i, k) -= q * u(j, k);
  };
  auto col_sub = [&](std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t k = 0; k < rows; ++k) d(k, i) -= q * d(k, j);
    for (std::size_t k = 0; k < cols; ++k) v(k, i) -= q * v(k, j);
  };
  auto row_add = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < cols; ++k) d(i, k) += d(j, k);
    for (std::size_t k = 0; k < rows; ++k) u(i, k) += u(j, k);
  };

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t bi = rows, bj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (d(i, j) != 0 && (bi == rows || abs(d(i, j)) < abs(d(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi == rows) break;
    swap_rows(t, bi);
    swap_cols(t, bj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows && !dirty; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        if (q != 0) row_sub(i, t, q);
        if (d(i, t) != 0) {
          swap_rows(t, i);  // remainder is strictly smaller; restart
          dirty = true;
        }
      }
      if (dirty) continue;
      for (std::size_t j = t + 1; j < cols && !dirty; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        if (q != 0) col_sub(j, t, q);
        if (d(t, j) != 0) {
          swap_cols(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // Row and column are clear; enforce divisibility of the trailing block.
      std::size_t ai = rows;
      for (std::size_t i = t + 1; i < rows && ai == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            ai = i;
            break;
          }
      if (ai == rows) break;
      row_add(t, ai);  // drags a non-multiple into row t; loop shrinks the pivot
    }
    if (d(t, t) < 0) {
      for (std::size_t k = 0; k < cols; ++k) d(t, k) = -d(t, k);
      for (std::size_t k = 0; k < rows; ++k) u(t, k) = -u(t, k);
    }
  }
  return {std::move(d), std::move(u), std::move(v)};
}

inline std::size_t rank(const Mat& m) {
  Mat h = hermite_normal_form(m).h;
  std::size_t r = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool nonzero = false;
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0) {
        nonzero = true;
        break;
      }
    if (nonzero) ++r;
  }
  return r;
}

inline std::size_t rank(const std::vector<Vec>& vecs) {
  if (vecs.empty()) return 0;
  return rank(Mat::from_rows(vecs));
}

// Do the vectors span a rank-k direct summand of the ambient lattice, i.e.
// is the quotient by their span torsion-free of the right corank? True iff
// the Smith form has exactly k nonzero diagonal entries, all equal to 1.
inline bool is_primitive_summand(const std::vector<Vec>& vectors, std::size_t k) {
  if (vectors.empty()) throw std::invalid_argument("is_primitive_summand: empty vector list");
  const std::size_t dim = vectors[0].size();
  for (const Vec& v : vectors)
    if (v.size() != dim) throw std::invalid_argument("is_primitive_summand: dimension mismatch");
  if (k < 1 || k > dim) throw std::invalid_argument("is_primitive_summand: rank out of range");
  Mat d = smith_normal_form(Mat::from_rows(vectors)).d;
  const std::size_t steps = std::min(d.rows(), d.cols());
  std::size_t nonzero = 0;
  bool all_unit = true;
  for (std::size_t i = 0; i < steps; ++i) {
    if (d(i, i) == 0) continue;
    ++nonzero;
    if (d(i, i) != 1) all_unit = false;
  }
  return nonzero == k && all_unit;
}

// The unique linear map sending source i to target i, when the sources span.
// Returns nullopt if that map fails to be integral or fails |det| = 1.
inline std::optional<Mat> solve_unimodular_map(const std::vector<Vec>& sources,
                                               const std::vector<Vec>& targets) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (sources.size() != targets.size())
    throw std::invalid_argument("solve_unimodular_map: source/target count mismatch");
  if (sources.empty()) throw std::invalid_argument("solve_unimodular_map: no sources");
  const std::size_t n = sources[0].size();
  if (sources.size() != n)
    throw std::invalid_argument("solve_unimodular_map: need exactly dim sources");
  for (const Vec& v : sources)
    if (v.size() != n) throw std::invalid_argument("solve_unimodular_map: dimension mismatch");
  for (const Vec& v : targets)
    if (v.size() != n) throw std::invalid_argument("solve_unimodular_map: dimension mismatch");

  // Columns of S are the sources; T = R * S^-1 with R the target columns.
  detail::QMat s(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s[i][j] = sources[j][i];
  auto sinv = detail::rat_inverse(s);
  if (!sinv) throw std::domain_error("sources do not span");

  Mat t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat e = 0;
      for (std::size_t k = 0; k < n; ++k) e += Rat(targets[k][i]) * (*sinv)[k][j];
      if (denominator(e) != 1) return std::nullopt;
      t(i, j) = numerator(e);
    }
  if (!is_unimodular(t)) return std::nullopt;
  return t;
}

}  // namespace toric
