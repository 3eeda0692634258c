#pragma once

// Dense exact linear algebra over the Gaussian rationals.  Matrices are small
// (block sizes at desk scale) so plain Gauss-Jordan suffices; subspaces are
// kept in reduced row echelon form, which makes equality a literal comparison.

#include "gelfkit/numeric.hpp"
#include "gelfkit/poly.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace gelfkit {

struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<GQ> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {
    if (r < 0 || c < 0) throw structural_error("negative matrix dimension");
  }
  Mat(int r, int c, std::initializer_list<GQ> entries) : Mat(r, c) {
    if (static_cast<int>(entries.size()) != r * c)
      throw structural_error("matrix literal size mismatch");
    std::size_t k = 0;
    for (const auto& e : entries) a[k++] = e;
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = GQ(1);
    return m;
  }

  GQ& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const GQ& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  bool is_zero() const {
    for (const auto& x : a)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_square() const { return rows == cols; }

  Mat adjoint() const {
    Mat m(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j).conj();
    return m;
  }
  Mat transpose() const {
    Mat m(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
    return m;
  }
  Mat conjugate() const {
    Mat m = *this;
    for (auto& x : m.a) x = x.conj();
    return m;
  }
  GQ trace() const {
    if (!is_square()) throw structural_error("trace of non-square matrix");
    GQ t;
    for (int i = 0; i < rows; ++i) t += at(i, i);
    return t;
  }
  bool is_hermitian() const { return is_square() && *this == adjoint(); }

  friend Mat operator+(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw structural_error("matrix shape mismatch");
    Mat m = x;
    for (std::size_t k = 0; k < m.a.size(); ++k) m.a[k] += y.a[k];
    return m;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw structural_error("matrix shape mismatch");
    Mat m = x;
    for (std::size_t k = 0; k < m.a.size(); ++k) m.a[k] -= y.a[k];
    return m;
  }
  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw structural_error("matrix product shape mismatch");
    Mat m(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        const GQ& xik = x.at(i, k);
        if (xik.is_zero()) continue;
        for (int j = 0; j < y.cols; ++j) m.at(i, j) += xik * y.at(k, j);
      }
    return m;
  }
  friend Mat operator*(const GQ& s, const Mat& x) {
    Mat m = x;
    for (auto& v : m.a) v *= s;
    return m;
  }
  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
};

inline std::vector<GQ> mat_vec(const Mat& m, const std::vector<GQ>& v) {
  if (m.cols != static_cast<int>(v.size())) throw structural_error("matrix-vector shape mismatch");
  std::vector<GQ> out(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (!m.at(i, j).is_zero()) out[i] += m.at(i, j) * v[j];
  return out;
}

// in-place reduced row echelon form; returns pivot column per pivot row
inline std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int sel = -1;
    for (int i = row; i < m.rows; ++i)
      if (!m.at(i, col).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
    GQ inv = m.at(row, col).inv();
    for (int j = col; j < m.cols; ++j) m.at(row, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      GQ f = m.at(i, col);
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline int rank(Mat m) { return static_cast<int>(rref(m).size()); }

// rows of the result span {x : m x = 0}
inline Mat kernel_rows(Mat m) {
  int n = m.cols;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots) is_pivot[p] = true;
  Mat out(n - static_cast<int>(pivots.size()), n);
  int r = 0;
  for (int j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    out.at(r, j) = GQ(1);
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
      out.at(r, pivots[pr]) = -m.at(static_cast<int>(pr), j);
    ++r;
  }
  return out;
}

// one solution of m x = b if consistent
inline std::optional<std::vector<GQ>> solve(const Mat& m, const std::vector<GQ>& b) {
  if (m.rows != static_cast<int>(b.size())) throw structural_error("solve shape mismatch");
  Mat aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
  std::vector<GQ> x(m.cols);
  for (std::size_t pr = 0; pr < pivots.size(); ++pr) x[pivots[pr]] = aug.at(static_cast<int>(pr), m.cols);
  return x;
}

inline GQ det(Mat m) {
  if (!m.is_square()) throw structural_error("determinant of non-square matrix");
  GQ d(1);
  for (int col = 0; col < m.cols; ++col) {
    int sel = -1;
    for (int i = col; i < m.rows; ++i)
      if (!m.at(i, col).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) return GQ(0);
    if (sel != col) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(col, j));
      d = -d;
    }
    d *= m.at(col, col);
    GQ inv = m.at(col, col).inv();
    for (int i = col + 1; i < m.rows; ++i) {
      if (m.at(i, col).is_zero()) continue;
      GQ f = m.at(i, col) * inv;
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(col, j);
    }
  }
  return d;
}

// Faddeev-LeVerrier; coefficients of det(xI - m), degree = dim
inline std::vector<GQ> charpoly_gq(const Mat& m) {
  if (!m.is_square()) throw structural_error("charpoly of non-square matrix");
  int n = m.rows;
  std::vector<GQ> c(n + 1);
  c[n] = GQ(1);
  Mat mk = Mat::identity(n);
  for (int k = 1; k <= n; ++k) {
    mk = m * mk;
    GQ ck = GQ(Rat(-1, k)) * mk.trace();
    c[n - k] = ck;
    for (int i = 0; i < n; ++i) mk.at(i, i) += ck;
  }
  return c;
}

// characteristic polynomial of a Hermitian matrix as a real polynomial
inline Poly charpoly_hermitian(const Mat& m) {
  if (!m.is_hermitian()) throw value_domain_error("charpoly_hermitian: matrix is not Hermitian");
  auto c = charpoly_gq(m);
  std::vector<Rat> r(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].im != 0) throw value_domain_error("Hermitian charpoly has nonreal coefficient");
    r[k] = c[k].re;
  }
  return Poly{std::move(r)};
}

// Subspace of column space C^n, stored as canonical RREF rows of coordinate
// vectors; two subspaces are equal iff their stored bases are equal.
struct Subspace {
  int ambient = 0;
  Mat basis;  // dim() rows, ambient cols, RREF

  Subspace() = default;
  explicit Subspace(int n) : ambient(n), basis(0, n) {}

  static Subspace zero(int n) { return Subspace(n); }
  static Subspace full(int n) {
    Subspace s(n);
    s.basis = Mat::identity(n);
    return s;
  }
  static Subspace span_rows(Mat vectors) {
    Subspace s(vectors.cols);
    auto pivots = rref(vectors);
    Mat b(static_cast<int>(pivots.size()), vectors.cols);
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < vectors.cols; ++j) b.at(i, j) = vectors.at(i, j);
    s.basis = std::move(b);
    return s;
  }
  static Subspace span_of(int n, const std::vector<std::vector<GQ>>& vecs) {
    Mat m(static_cast<int>(vecs.size()), n);
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      if (static_cast<int>(vecs[i].size()) != n) throw structural_error("subspace vector length mismatch");
      for (int j = 0; j < n; ++j) m.at(static_cast<int>(i), j) = vecs[i][j];
    }
    return span_rows(std::move(m));
  }
  static Subspace line(const std::vector<GQ>& v) {
    return span_of(static_cast<int>(v.size()), {v});
  }

  int dim() const { return basis.rows; }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient; }

  bool contains(const std::vector<GQ>& v) const {
    if (static_cast<int>(v.size()) != ambient) throw structural_error("vector length mismatch");
    Mat m(basis.rows + 1, ambient);
    for (int i = 0; i < basis.rows; ++i)
      for (int j = 0; j < ambient; ++j) m.at(i, j) = basis.at(i, j);
    for (int j = 0; j < ambient; ++j) m.at(basis.rows, j) = v[j];
    return rank(std::move(m)) == dim();
  }
  bool contains(const Subspace& other) const {
    if (other.ambient != ambient) throw structural_error("ambient mismatch");
    Mat m(basis.rows + other.basis.rows, ambient);
    for (int i = 0; i < basis.rows; ++i)
      for (int j = 0; j < ambient; ++j) m.at(i, j) = basis.at(i, j);
    for (int i = 0; i < other.basis.rows; ++i)
      for (int j = 0; j < ambient; ++j) m.at(basis.rows + i, j) = other.basis.at(i, j);
    return rank(std::move(m)) == dim();
  }

  friend Subspace operator+(const Subspace& x, const Subspace& y) {
    if (x.ambient != y.ambient) throw structural_error("ambient mismatch");
    Mat m(x.basis.rows + y.basis.rows, x.ambient);
    for (int i = 0; i < x.basis.rows; ++i)
      for (int j = 0; j < x.ambient; ++j) m.at(i, j) = x.basis.at(i, j);
    for (int i = 0; i < y.basis.rows; ++i)
      for (int j = 0; j < x.ambient; ++j) m.at(x.basis.rows + i, j) = y.basis.at(i, j);
    return span_rows(std::move(m));
  }
  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.ambient == y.ambient && x.basis == y.basis;
  }
  friend bool operator!=(const Subspace& x, const Subspace& y) { return !(x == y); }

  std::vector<GQ> basis_vector(int i) const {
    std::vector<GQ> v(ambient);
    for (int j = 0; j < ambient; ++j) v[j] = basis.at(i, j);
    return v;
  }
};

inline Subspace meet(const Subspace& x, const Subspace& y) {
  if (x.ambient != y.ambient) throw structural_error("ambient mismatch");
  // columns: basis vectors of x then of y negated; kernel rows give the
  // coefficient pairs of common vectors
  int k1 = x.dim(), k2 = y.dim();
  Mat m(x.ambient, k1 + k2);
  for (int i = 0; i < k1; ++i)
    for (int j = 0; j < x.ambient; ++j) m.at(j, i) = x.basis.at(i, j);
  for (int i = 0; i < k2; ++i)
    for (int j = 0; j < x.ambient; ++j) m.at(j, k1 + i) = -y.basis.at(i, j);
  Mat ker = kernel_rows(std::move(m));
  Mat vecs(ker.rows, x.ambient);
  for (int r = 0; r < ker.rows; ++r)
    for (int i = 0; i < k1; ++i)
      for (int j = 0; j < x.ambient; ++j) vecs.at(r, j) += ker.at(r, i) * x.basis.at(i, j);
  return Subspace::span_rows(std::move(vecs));
}

// orthogonal complement for the standard Hermitian form sum conj(x_i) y_i
inline Subspace ortho_complement(const Subspace& s) {
  return Subspace::span_rows(kernel_rows(s.basis.conjugate()));
}

// orthogonal projection onto the subspace
inline Mat projector(const Subspace& s) {
  int n = s.ambient;
  if (s.is_zero()) return Mat(n, n);
  Mat cols = s.basis.transpose();        // n x k, columns are basis vectors
  Mat gram = cols.adjoint() * cols;      // k x k, invertible
  // invert the Gram matrix by solving against the identity
  int k = gram.rows;
  Mat aug(k, 2 * k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) aug.at(i, j) = gram.at(i, j);
    aug.at(i, k + i) = GQ(1);
  }
  rref(aug);
  Mat inv(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) inv.at(i, j) = aug.at(i, k + j);
  return cols * inv * cols.adjoint();
}

}  // namespace gelfkit
