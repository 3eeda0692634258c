#pragma once

// Integer matrices with Smith normal form, integer kernels and integer linear
// solves.  This is the engine behind finitely generated abelian groups, Cech
// cohomology and fundamental group abelianizations.  Transform matrices are
// carried along so cohomology classes can be expressed in canonical
// coordinates afterwards.

#include "gelfkit/numeric.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace gelfkit {

struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {
    if (r < 0 || c < 0) throw structural_error("negative matrix dimension");
  }
  IntMat(int r, int c, std::initializer_list<long> entries) : IntMat(r, c) {
    if (static_cast<int>(entries.size()) != r * c)
      throw structural_error("matrix literal size mismatch");
    std::size_t k = 0;
    for (long e : entries) a[k++] = e;
  }

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  Int& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  bool is_zero() const {
    for (const auto& x : a)
      if (x != 0) return false;
    return true;
  }

  IntMat transpose() const {
    IntMat m(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  friend IntMat operator*(const IntMat& x, const IntMat& y) {
    if (x.cols != y.rows) throw structural_error("matrix product shape mismatch");
    IntMat m(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        if (x.at(i, k) == 0) continue;
        for (int j = 0; j < y.cols; ++j) m.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    return m;
  }
  friend IntMat operator+(const IntMat& x, const IntMat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw structural_error("matrix shape mismatch");
    IntMat m = x;
    for (std::size_t k = 0; k < m.a.size(); ++k) m.a[k] += y.a[k];
    return m;
  }
  friend IntMat operator-(const IntMat& x, const IntMat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw structural_error("matrix shape mismatch");
    IntMat m = x;
    for (std::size_t k = 0; k < m.a.size(); ++k) m.a[k] -= y.a[k];
    return m;
  }
  friend bool operator==(const IntMat& x, const IntMat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
  friend bool operator!=(const IntMat& x, const IntMat& y) { return !(x == y); }
};

inline std::vector<Int> mat_vec(const IntMat& m, const std::vector<Int>& v) {
  if (m.cols != static_cast<int>(v.size())) throw structural_error("matrix-vector shape mismatch");
  std::vector<Int> out(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0) out[i] += m.at(i, j) * v[j];
  return out;
}

// U * m * V = S with U, V unimodular; S diagonal, nonnegative, with the
// divisibility chain S[0][0] | S[1][1] | ...
struct Snf {
  IntMat s;
  IntMat u;       // rows x rows
  IntMat v;       // cols x cols
  int rank = 0;
  std::vector<Int> diag() const {
    std::vector<Int> d;
    for (int i = 0; i < rank; ++i) d.push_back(s.at(i, i));
    return d;
  }
};

inline Snf smith_normal_form(IntMat m) {
  Snf out;
  out.u = IntMat::identity(m.rows);
  out.v = IntMat::identity(m.cols);
  IntMat& s = m;
  IntMat& u = out.u;
  IntMat& v = out.v;

  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < s.cols; ++c) std::swap(s.at(i, c), s.at(j, c));
    for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int r = 0; r < s.rows; ++r) std::swap(s.at(r, i), s.at(r, j));
    for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
  };
  auto add_row = [&](int dst, int src, const Int& f) {  // row dst += f * row src
    for (int c = 0; c < s.cols; ++c) s.at(dst, c) += f * s.at(src, c);
    for (int c = 0; c < u.cols; ++c) u.at(dst, c) += f * u.at(src, c);
  };
  auto add_col = [&](int dst, int src, const Int& f) {
    for (int r = 0; r < s.rows; ++r) s.at(r, dst) += f * s.at(r, src);
    for (int r = 0; r < v.rows; ++r) v.at(r, dst) += f * v.at(r, src);
  };
  auto negate_row = [&](int i) {
    for (int c = 0; c < s.cols; ++c) s.at(i, c) = -s.at(i, c);
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
  };

  int t = 0;
  int lim = std::min(s.rows, s.cols);
  while (t < lim) {
    // locate a nonzero entry of least magnitude in the trailing submatrix
    int pi = -1, pj = -1;
    for (int i = t; i < s.rows; ++i)
      for (int j = t; j < s.cols; ++j) {
        if (s.at(i, j) == 0) continue;
        if (pi < 0 || abs(s.at(i, j)) < abs(s.at(pi, pj))) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int i = t + 1; i < s.rows; ++i) {
        if (s.at(i, t) == 0) continue;
        Int q = s.at(i, t) / s.at(t, t);
        if (q != 0) add_row(i, t, -q);
        if (s.at(i, t) != 0) {  // remainder became the smaller pivot
          swap_rows(t, i);
          dirty = true;
        }
      }
      for (int j = t + 1; j < s.cols; ++j) {
        if (s.at(t, j) == 0) continue;
        Int q = s.at(t, j) / s.at(t, t);
        if (q != 0) add_col(j, t, -q);
        if (s.at(t, j) != 0) {
          swap_cols(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // enforce divisibility of the trailing block by the pivot
      for (int i = t + 1; i < s.rows && !dirty; ++i)
        for (int j = t + 1; j < s.cols && !dirty; ++j)
          if (s.at(i, j) % s.at(t, t) != 0) {
            add_row(t, i, 1);
            dirty = true;
          }
    }
    if (s.at(t, t) < 0) negate_row(t);
    ++t;
  }
  out.rank = t;
  out.s = std::move(m);
  return out;
}

// columns span the lattice {x in Z^cols : m x = 0}
inline IntMat int_kernel(const IntMat& m) {
  Snf f = smith_normal_form(m);
  int free = m.cols - f.rank;
  IntMat k(m.cols, free);
  for (int j = 0; j < free; ++j)
    for (int i = 0; i < m.cols; ++i) k.at(i, j) = f.v.at(i, f.rank + j);
  return k;
}

// one integer solution of m x = b if any exists
inline std::optional<std::vector<Int>> int_solve(const IntMat& m, const std::vector<Int>& b) {
  if (static_cast<int>(b.size()) != m.rows) throw structural_error("solve shape mismatch");
  Snf f = smith_normal_form(m);
  std::vector<Int> ub = mat_vec(f.u, b);
  std::vector<Int> z(m.cols);
  for (int i = 0; i < m.rows; ++i) {
    if (i < f.rank) {
      const Int& d = f.s.at(i, i);
      if (ub[i] % d != 0) return std::nullopt;
      if (i < m.cols) z[i] = ub[i] / d;
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return mat_vec(f.v, z);
}

inline Int int_det(IntMat m) {
  if (m.rows != m.cols) throw structural_error("determinant of non-square matrix");
  // Bareiss fraction-free elimination
  int n = m.rows;
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int sel = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          sel = i;
          break;
        }
      if (sel < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(sel, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

inline int int_rank(const IntMat& m) { return smith_normal_form(m).rank; }

}  // namespace gelfkit
