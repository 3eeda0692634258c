#pragma once

// Finite-dimensional C*-algebra models: direct sums of full matrix algebras
// over the Gaussian rationals.  Left ideals are stored blockwise as the
// column-support subspaces V with L = { a : a = a P_V }, i.e. every row of a
// member lies in the conjugate of V.  All lattice operations on ideals are
// exact; no floating point enters here.

#include "gelfkit/mat.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace gelfkit {

struct BlockAlgebra {
  std::vector<int> dims;

  int nblocks() const { return static_cast<int>(dims.size()); }
  int total_dim() const {
    int t = 0;
    for (int n : dims) t += n * n;
    return t;
  }
  int vec_offset(int b) const {
    int t = 0;
    for (int i = 0; i < b; ++i) t += dims[i] * dims[i];
    return t;
  }
  friend bool operator==(const BlockAlgebra& x, const BlockAlgebra& y) {
    return x.dims == y.dims;
  }
};

inline BlockAlgebra make_block_algebra(std::vector<int> dims) {
  if (dims.empty()) throw structural_error("algebra needs at least one block");
  for (int n : dims)
    if (n < 1) throw structural_error("block dimension must be positive");
  return BlockAlgebra{std::move(dims)};
}

struct AlgebraElement {
  std::vector<Mat> blocks;

  friend bool operator==(const AlgebraElement& x, const AlgebraElement& y) {
    return x.blocks == y.blocks;
  }
  AlgebraElement operator+(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    for (size_t b = 0; b < blocks.size(); ++b) r.blocks[b] = r.blocks[b] + o.blocks[b];
    return r;
  }
  AlgebraElement operator-(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    for (size_t b = 0; b < blocks.size(); ++b) r.blocks[b] = r.blocks[b] - o.blocks[b];
    return r;
  }
  AlgebraElement operator*(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    for (size_t b = 0; b < blocks.size(); ++b) r.blocks[b] = r.blocks[b] * o.blocks[b];
    return r;
  }
  friend AlgebraElement operator*(const GQ& c, const AlgebraElement& x) {
    AlgebraElement r = x;
    for (auto& m : r.blocks) m = c * m;
    return r;
  }
  AlgebraElement adjoint() const {
    AlgebraElement r = *this;
    for (auto& m : r.blocks) m = m.adjoint();
    return r;
  }
  bool is_zero() const {
    for (auto& m : blocks)
      if (!m.is_zero()) return false;
    return true;
  }
  bool is_hermitian() const {
    for (auto& m : blocks)
      if (!m.is_hermitian()) return false;
    return true;
  }
};

inline AlgebraElement zero_element(const BlockAlgebra& alg) {
  AlgebraElement a;
  for (int n : alg.dims) a.blocks.emplace_back(n, n);
  return a;
}

inline AlgebraElement one_element(const BlockAlgebra& alg) {
  AlgebraElement a;
  for (int n : alg.dims) a.blocks.push_back(Mat::identity(n));
  return a;
}

inline AlgebraElement matrix_unit(const BlockAlgebra& alg, int b, int i, int j) {
  if (b < 0 || b >= alg.nblocks()) throw structural_error("block index out of range");
  AlgebraElement a = zero_element(alg);
  a.blocks[b].at(i, j) = GQ(1);
  return a;
}

// block-diagonal scalar supported on one block
inline AlgebraElement block_indicator(const BlockAlgebra& alg, int b) {
  if (b < 0 || b >= alg.nblocks()) throw structural_error("block index out of range");
  AlgebraElement a = zero_element(alg);
  a.blocks[b] = Mat::identity(alg.dims[b]);
  return a;
}

inline void check_element(const BlockAlgebra& alg, const AlgebraElement& a) {
  if (static_cast<int>(a.blocks.size()) != alg.nblocks())
    throw structural_error("element has wrong number of blocks");
  for (int b = 0; b < alg.nblocks(); ++b)
    if (a.blocks[b].rows != alg.dims[b] || a.blocks[b].cols != alg.dims[b])
      throw structural_error("element block has wrong shape");
}

inline std::vector<GQ> vectorize(const BlockAlgebra& alg, const AlgebraElement& a) {
  std::vector<GQ> v;
  v.reserve(alg.total_dim());
  for (int b = 0; b < alg.nblocks(); ++b)
    v.insert(v.end(), a.blocks[b].a.begin(), a.blocks[b].a.end());
  return v;
}

inline AlgebraElement element_from_vector(const BlockAlgebra& alg, const std::vector<GQ>& v) {
  if (static_cast<int>(v.size()) != alg.total_dim())
    throw structural_error("vector length does not match algebra");
  AlgebraElement a = zero_element(alg);
  int off = 0;
  for (int b = 0; b < alg.nblocks(); ++b) {
    int nn = alg.dims[b] * alg.dims[b];
    std::copy(v.begin() + off, v.begin() + off + nn, a.blocks[b].a.begin());
    off += nn;
  }
  return a;
}

// ---------------------------------------------------------------------------
// left ideals

struct LeftIdealRep {
  std::vector<Subspace> v;  // per block, ambient dims[b]

  int total_rank(const BlockAlgebra& alg) const {
    int t = 0;
    for (int b = 0; b < alg.nblocks(); ++b) t += alg.dims[b] * v[b].dim();
    return t;
  }
  bool is_zero() const {
    for (auto& s : v)
      if (!s.is_zero()) return false;
    return true;
  }
  bool is_full() const {
    for (auto& s : v)
      if (!s.is_full()) return false;
    return true;
  }
  friend bool operator==(const LeftIdealRep& x, const LeftIdealRep& y) { return x.v == y.v; }
};

inline LeftIdealRep zero_ideal(const BlockAlgebra& alg) {
  LeftIdealRep l;
  for (int n : alg.dims) l.v.push_back(Subspace::zero(n));
  return l;
}

inline LeftIdealRep full_ideal(const BlockAlgebra& alg) {
  LeftIdealRep l;
  for (int n : alg.dims) l.v.push_back(Subspace::full(n));
  return l;
}

inline LeftIdealRep line_ideal(const BlockAlgebra& alg, int b, const std::vector<GQ>& vec) {
  if (b < 0 || b >= alg.nblocks()) throw structural_error("block index out of range");
  if (static_cast<int>(vec.size()) != alg.dims[b])
    throw structural_error("line vector has wrong length");
  LeftIdealRep l = zero_ideal(alg);
  l.v[b] = Subspace::line(vec);
  if (l.v[b].is_zero()) throw value_domain_error("line ideal needs a nonzero vector");
  return l;
}

inline void check_ideal(const BlockAlgebra& alg, const LeftIdealRep& l) {
  if (static_cast<int>(l.v.size()) != alg.nblocks())
    throw structural_error("ideal has wrong number of blocks");
  for (int b = 0; b < alg.nblocks(); ++b)
    if (l.v[b].ambient != alg.dims[b]) throw structural_error("ideal block ambient mismatch");
}

inline bool ideal_leq(const LeftIdealRep& x, const LeftIdealRep& y) {
  for (size_t b = 0; b < x.v.size(); ++b)
    if (!y.v[b].contains(x.v[b])) return false;
  return true;
}

inline LeftIdealRep ideal_meet(const LeftIdealRep& x, const LeftIdealRep& y) {
  LeftIdealRep r;
  for (size_t b = 0; b < x.v.size(); ++b) r.v.push_back(meet(x.v[b], y.v[b]));
  return r;
}

inline LeftIdealRep ideal_join(const LeftIdealRep& x, const LeftIdealRep& y) {
  LeftIdealRep r;
  for (size_t b = 0; b < x.v.size(); ++b) r.v.push_back(x.v[b] + y.v[b]);
  return r;
}

inline bool element_in_ideal(const BlockAlgebra& alg, const LeftIdealRep& l,
                             const AlgebraElement& a) {
  // a = a P_V per block: every conjugated row must lie in V
  for (int b = 0; b < alg.nblocks(); ++b) {
    int n = alg.dims[b];
    for (int i = 0; i < n; ++i) {
      std::vector<GQ> row(n);
      for (int j = 0; j < n; ++j) row[j] = a.blocks[b].at(i, j).conj();
      bool zero = std::all_of(row.begin(), row.end(), [](const GQ& z) { return z.is_zero(); });
      if (!zero && !l.v[b].contains(row)) return false;
    }
  }
  return true;
}

// spanning matrices: one per (row index, basis vector of V)
inline std::vector<AlgebraElement> ideal_spanning_set(const BlockAlgebra& alg,
                                                      const LeftIdealRep& l) {
  std::vector<AlgebraElement> out;
  for (int b = 0; b < alg.nblocks(); ++b) {
    int n = alg.dims[b];
    for (int k = 0; k < l.v[b].dim(); ++k) {
      std::vector<GQ> w = l.v[b].basis_vector(k);
      for (int i = 0; i < n; ++i) {
        AlgebraElement a = zero_element(alg);
        for (int j = 0; j < n; ++j) a.blocks[b].at(i, j) = w[j].conj();
        out.push_back(std::move(a));
      }
    }
  }
  return out;
}

// Recover the blockwise representation from matrices spanning a left ideal.
// The span of the conjugated rows of the given elements yields each V; the
// result is validated against the linear dimension of the span.
inline LeftIdealRep ideal_of_span(const BlockAlgebra& alg,
                                  const std::vector<AlgebraElement>& gens) {
  LeftIdealRep l = zero_ideal(alg);
  for (int b = 0; b < alg.nblocks(); ++b) {
    int n = alg.dims[b];
    std::vector<std::vector<GQ>> rows;
    for (const auto& g : gens)
      for (int i = 0; i < n; ++i) {
        std::vector<GQ> row(n);
        for (int j = 0; j < n; ++j) row[j] = g.blocks[b].at(i, j).conj();
        rows.push_back(std::move(row));
      }
    l.v[b] = Subspace::span_of(n, rows);
  }
  // dimension check: the span really was a left ideal
  Mat vecs(static_cast<int>(gens.size()), alg.total_dim());
  for (size_t i = 0; i < gens.size(); ++i) {
    std::vector<GQ> v = vectorize(alg, gens[i]);
    for (int j = 0; j < alg.total_dim(); ++j) vecs.at(static_cast<int>(i), j) = v[j];
  }
  if (rank(vecs) != l.total_rank(alg))
    throw value_domain_error("spanning set does not span a left ideal");
  return l;
}

// annihilator-style commutant { a : l a* = 0 for all l in L }; blockwise the
// orthogonal complement of V
inline LeftIdealRep ideal_commutant(const BlockAlgebra& alg, const LeftIdealRep& l) {
  check_ideal(alg, l);
  LeftIdealRep r;
  for (int b = 0; b < alg.nblocks(); ++b) r.v.push_back(ortho_complement(l.v[b]));
  return r;
}

// hereditary subalgebra attached to a left ideal: the corner P_V A P_V,
// carried by the same blockwise subspaces
struct HereditaryRep {
  std::vector<Subspace> v;

  friend bool operator==(const HereditaryRep& x, const HereditaryRep& y) { return x.v == y.v; }
  bool is_connected() const {
    int nonzero = 0;
    for (auto& s : v)
      if (!s.is_zero()) ++nonzero;
    return nonzero == 1;
  }
};

inline HereditaryRep hereditary_of_ideal(const LeftIdealRep& l) { return HereditaryRep{l.v}; }
inline LeftIdealRep ideal_of_hereditary(const HereditaryRep& h) { return LeftIdealRep{h.v}; }

inline bool element_in_hereditary(const BlockAlgebra& alg, const HereditaryRep& h,
                                  const AlgebraElement& a) {
  for (int b = 0; b < alg.nblocks(); ++b) {
    Mat p = projector(h.v[b]);
    if (!(p * a.blocks[b] * p == a.blocks[b])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// spectrum-side helpers

inline int spectrum_size(const BlockAlgebra& alg) { return alg.nblocks(); }

inline Mat rep_block(const BlockAlgebra& alg, const AlgebraElement& a, int x) {
  check_element(alg, a);
  if (x < 0 || x >= alg.nblocks()) throw structural_error("spectrum point out of range");
  return a.blocks[x];
}

// blocks on which the ideal represents nonzero
inline std::vector<int> ideal_support(const BlockAlgebra& alg, const LeftIdealRep& l) {
  std::vector<int> out;
  for (int b = 0; b < alg.nblocks(); ++b)
    if (!l.v[b].is_zero()) out.push_back(b);
  return out;
}

inline bool is_connected_algebra(const BlockAlgebra& alg) { return alg.nblocks() == 1; }

// center basis: the block indicators; the commutation solve that certifies
// this lives in the tests as an independent oracle
inline std::vector<AlgebraElement> center_basis(const BlockAlgebra& alg) {
  std::vector<AlgebraElement> out;
  out.reserve(alg.nblocks());
  for (int b = 0; b < alg.nblocks(); ++b) out.push_back(block_indicator(alg, b));
  return out;
}

inline bool is_central(const BlockAlgebra& alg, const AlgebraElement& a) {
  check_element(alg, a);
  for (int b = 0; b < alg.nblocks(); ++b)
    for (int i = 0; i < alg.dims[b]; ++i)
      for (int j = 0; j < alg.dims[b]; ++j) {
        AlgebraElement u = matrix_unit(alg, b, i, j);
        if (!(a * u == u * a)) return false;
      }
  return true;
}

inline bool is_abelian_algebra(const BlockAlgebra& alg) {
  for (int n : alg.dims)
    if (n > 1) return false;
  return true;
}

// a A a is commutative iff every block of a has rank at most one
inline bool is_abelian_element(const BlockAlgebra& alg, const AlgebraElement& a) {
  check_element(alg, a);
  for (int b = 0; b < alg.nblocks(); ++b)
    if (rank(a.blocks[b]) > 1) return false;
  return true;
}

// the commutative model C(X) for a discrete X with n points
inline BlockAlgebra functions_algebra(int npoints) {
  return make_block_algebra(std::vector<int>(npoints, 1));
}

}  // namespace gelfkit
