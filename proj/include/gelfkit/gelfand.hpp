#pragma once

// Gelfand-type spectrum machinery for block algebras.  Points are principal
// ultrafilters of minimal left ideals and are recorded as (block, line); the
// full space is a disjoint union of projective spaces, one per block, and is
// described symbolically with finite witness samples.  Presented finite
// sublattices of left ideals reuse the order core; bicommutants of point
// filters are computed blockwise.

#include "gelfkit/algebra.hpp"
#include "gelfkit/order.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gelfkit {

struct UltrafilterPoint {
  int block;
  std::vector<GQ> line;  // canonical: reduced-echelon basis vector of the line

  friend bool operator==(const UltrafilterPoint& x, const UltrafilterPoint& y) {
    return x.block == y.block && x.line == y.line;
  }
};

inline UltrafilterPoint make_point(const BlockAlgebra& alg, int block,
                                   const std::vector<GQ>& vec) {
  LeftIdealRep l = line_ideal(alg, block, vec);  // validates
  return UltrafilterPoint{block, l.v[block].basis_vector(0)};
}

inline LeftIdealRep point_ideal(const BlockAlgebra& alg, const UltrafilterPoint& pt) {
  return line_ideal(alg, pt.block, pt.line);
}

// bicommutant of the principal point filter: the ideal carried by the
// orthogonal complement at the point's block and everything elsewhere
inline LeftIdealRep point_bicommutant(const BlockAlgebra& alg, const UltrafilterPoint& pt) {
  LeftIdealRep out = full_ideal(alg);
  out.v[pt.block] = ortho_complement(Subspace::line(pt.line));
  return out;
}

// the unique spectrum point where the bicommutant represents a proper ideal
inline int belongs_to(const BlockAlgebra& alg, const UltrafilterPoint& pt) {
  LeftIdealRep bc = point_bicommutant(alg, pt);
  int where = -1;
  for (int b = 0; b < alg.nblocks(); ++b)
    if (!bc.v[b].is_full()) {
      if (where >= 0) throw value_domain_error("point belongs to more than one block");
      where = b;
    }
  if (where < 0) throw value_domain_error("point belongs to no block");
  return where;
}

// ---------------------------------------------------------------------------
// presented ideal sublattices

struct IdealLattice {
  std::vector<LeftIdealRep> ideals;  // position matches lat element index
  SemiLattice lat;

  int index_of(const LeftIdealRep& l) const {
    for (size_t i = 0; i < ideals.size(); ++i)
      if (ideals[i] == l) return static_cast<int>(i);
    return -1;
  }
};

namespace detail {

inline std::string ideal_key(const BlockAlgebra& alg, const LeftIdealRep& l) {
  std::string s;
  for (int b = 0; b < alg.nblocks(); ++b) {
    s += "[";
    for (int i = 0; i < l.v[b].dim(); ++i) {
      auto vec = l.v[b].basis_vector(i);
      for (const GQ& z : vec) s += gq_str(z) + ",";
      s += ";";
    }
    s += "]";
  }
  return s;
}

}  // namespace detail

// meet-closure of the generators plus the zero ideal; canonical order by
// total rank then by serialized basis
inline IdealLattice build_ideal_lattice(const BlockAlgebra& alg,
                                        std::vector<LeftIdealRep> gens, long cap = 4096) {
  for (auto& g : gens) check_ideal(alg, g);
  gens.push_back(zero_ideal(alg));
  std::vector<LeftIdealRep> items;
  for (auto& g : gens)
    if (std::find(items.begin(), items.end(), g) == items.end()) items.push_back(g);
  bool grew = true;
  while (grew) {
    grew = false;
    size_t k = items.size();
    for (size_t i = 0; i < k; ++i)
      for (size_t j = i + 1; j < k; ++j) {
        LeftIdealRep m = ideal_meet(items[i], items[j]);
        if (std::find(items.begin(), items.end(), m) == items.end()) {
          items.push_back(m);
          grew = true;
          if (static_cast<long>(items.size()) > cap)
            throw resource_error("ideal lattice closure cap exceeded");
        }
      }
  }
  std::sort(items.begin(), items.end(), [&](const LeftIdealRep& a, const LeftIdealRep& b) {
    int ra = a.total_rank(alg), rb = b.total_rank(alg);
    if (ra != rb) return ra < rb;
    return detail::ideal_key(alg, a) < detail::ideal_key(alg, b);
  });

  IdealLattice out;
  out.ideals = std::move(items);
  int n = static_cast<int>(out.ideals.size());
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    names.push_back("L" + std::to_string(i));
    for (int j = 0; j < n; ++j)
      if (ideal_leq(out.ideals[i], out.ideals[j])) pairs.emplace_back(i, j);
  }
  out.lat = make_semilattice(std::move(names), pairs, 0);
  return out;
}

struct BicommutantResult {
  LeftIdealRep span;
  bool proper;  // false: the commutant span is everything
};

// span of the commutants of the filter members; blockwise the join of the
// orthogonal complements
inline BicommutantResult filter_bicommutant(const BlockAlgebra& alg, const IdealLattice& il,
                                            const FilterRep& f) {
  if (!is_filter(il.lat, f)) throw value_domain_error("bicommutant of a non-filter");
  LeftIdealRep acc = zero_ideal(alg);
  for (int e : f.members) acc = ideal_join(acc, ideal_commutant(alg, il.ideals[e]));
  return BicommutantResult{acc, !acc.is_full()};
}

// ---------------------------------------------------------------------------
// basic opens and the symbolic space description

struct BasicOpen {
  LeftIdealRep ideal;
  bool whole_space;  // zero ideal: the complement is empty

  bool contains(const UltrafilterPoint& pt) const {
    return !ideal.v[pt.block].contains(pt.line);
  }
};

inline BasicOpen basic_open(const BlockAlgebra& alg, const LeftIdealRep& l) {
  check_ideal(alg, l);
  return BasicOpen{l, l.is_zero()};
}

// complement of a basic open: one projective subspace per block
inline std::vector<Subspace> closed_complement(const BasicOpen& u) { return u.ideal.v; }

inline bool spectrally_equivalent(const BlockAlgebra& alg, const LeftIdealRep& x,
                                  const LeftIdealRep& y) {
  return ideal_support(alg, x) == ideal_support(alg, y);
}

struct GelfandComponent {
  int block;
  int dim;  // the component is P(C^dim): a single point when dim == 1
};

struct GelfandDescription {
  std::vector<GelfandComponent> components;
  bool commutative;  // every component is a point
};

inline GelfandDescription describe_gelfand(const BlockAlgebra& alg) {
  GelfandDescription g;
  g.commutative = true;
  for (int b = 0; b < alg.nblocks(); ++b) {
    g.components.push_back({b, alg.dims[b]});
    if (alg.dims[b] > 1) g.commutative = false;
  }
  return g;
}

// deterministic witness points: standard lines, the all-ones line, and one
// non-axis rational line per block of dimension at least two
inline std::vector<UltrafilterPoint> sample_points(const BlockAlgebra& alg) {
  std::vector<UltrafilterPoint> out;
  for (int b = 0; b < alg.nblocks(); ++b) {
    int n = alg.dims[b];
    for (int i = 0; i < n; ++i) {
      std::vector<GQ> e(n);
      e[i] = GQ(1);
      out.push_back(make_point(alg, b, e));
    }
    if (n >= 2) {
      std::vector<GQ> ones(n, GQ(1));
      out.push_back(make_point(alg, b, ones));
      std::vector<GQ> pyth(n);
      pyth[0] = GQ(Rat(3, 5));
      pyth[1] = GQ(Rat(4, 5));
      out.push_back(make_point(alg, b, pyth));
      std::vector<GQ> cx(n);
      cx[0] = GQ(1);
      cx[1] = GQ::i();
      out.push_back(make_point(alg, b, cx));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// unital injective morphisms presented on matrix units

struct MorphismData {
  BlockAlgebra src;
  BlockAlgebra dst;
  std::vector<AlgebraElement> unit_images;  // block-major, then row-major (i, j)

  int unit_index(int b, int i, int j) const {
    int off = 0;
    for (int c = 0; c < b; ++c) off += src.dims[c] * src.dims[c];
    return off + i * src.dims[b] + j;
  }
  AlgebraElement apply(const AlgebraElement& a) const {
    check_element(src, a);
    AlgebraElement out = zero_element(dst);
    for (int b = 0; b < src.nblocks(); ++b)
      for (int i = 0; i < src.dims[b]; ++i)
        for (int j = 0; j < src.dims[b]; ++j) {
          GQ c = a.blocks[b].at(i, j);
          if (!c.is_zero()) out = out + c * unit_images[unit_index(b, i, j)];
        }
    return out;
  }
};

inline MorphismData make_morphism(BlockAlgebra src, BlockAlgebra dst,
                                  std::vector<AlgebraElement> unit_images,
                                  bool require_unital = true) {
  MorphismData m{std::move(src), std::move(dst), std::move(unit_images)};
  int total = m.src.total_dim();
  if (static_cast<int>(m.unit_images.size()) != total)
    throw structural_error("morphism needs one image per matrix unit");
  for (const auto& im : m.unit_images) check_element(m.dst, im);

  // *-algebra relations on the generating units
  for (int b = 0; b < m.src.nblocks(); ++b)
    for (int i = 0; i < m.src.dims[b]; ++i)
      for (int j = 0; j < m.src.dims[b]; ++j) {
        const AlgebraElement& im = m.unit_images[m.unit_index(b, i, j)];
        if (!(im.adjoint() == m.unit_images[m.unit_index(b, j, i)]))
          throw structural_error("morphism does not respect adjoints");
        for (int c = 0; c < m.src.nblocks(); ++c)
          for (int k = 0; k < m.src.dims[c]; ++k)
            for (int l = 0; l < m.src.dims[c]; ++l) {
              AlgebraElement prod = im * m.unit_images[m.unit_index(c, k, l)];
              AlgebraElement expect = zero_element(m.dst);
              if (b == c && j == k) expect = m.unit_images[m.unit_index(b, i, l)];
              if (!(prod == expect))
                throw structural_error("morphism does not respect unit products");
            }
      }
  AlgebraElement unit_sum = zero_element(m.dst);
  for (int b = 0; b < m.src.nblocks(); ++b)
    for (int i = 0; i < m.src.dims[b]; ++i)
      unit_sum = unit_sum + m.unit_images[m.unit_index(b, i, i)];
  if (require_unital && !(unit_sum == one_element(m.dst)))
    throw structural_error("morphism is not unital");

  Mat vecs(total, m.dst.total_dim());
  for (int r = 0; r < total; ++r) {
    std::vector<GQ> v = vectorize(m.dst, m.unit_images[r]);
    for (int c = 0; c < m.dst.total_dim(); ++c) vecs.at(r, c) = v[c];
  }
  if (rank(vecs) != total) throw structural_error("morphism is not injective");
  return m;
}

// left ideal of the target generated by the image of a left ideal
inline LeftIdealRep induced_lattice_map(const MorphismData& m, const LeftIdealRep& l) {
  check_ideal(m.src, l);
  std::vector<AlgebraElement> span;
  for (const AlgebraElement& s : ideal_spanning_set(m.src, l)) {
    AlgebraElement fs = m.apply(s);
    span.push_back(fs);
    for (int b = 0; b < m.dst.nblocks(); ++b)
      for (int i = 0; i < m.dst.dims[b]; ++i)
        for (int j = 0; j < m.dst.dims[b]; ++j)
          span.push_back(matrix_unit(m.dst, b, i, j) * fs);
  }
  if (span.empty()) return zero_ideal(m.dst);
  return ideal_of_span(m.dst, span);
}

struct InducedPoint {
  bool ok;
  UltrafilterPoint point;  // valid when ok
  std::string reason;      // set when not ok
};

namespace detail {

// basis of the space of maps T with rep(f(a), block bt) T = T a for all a in
// source block x
inline std::vector<Mat> intertwiner_basis(const MorphismData& m, int x, int bt) {
  int nt = m.dst.dims[bt], nx = m.src.dims[x];
  int vars = nt * nx;
  std::vector<std::vector<GQ>> rows;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j) {
      Mat r = m.unit_images[m.unit_index(x, i, j)].blocks[bt];
      // (R T - T E_ij)_{p q} = sum_r R_{p r} T_{r q} - delta_{j q} T_{p i}
      for (int p = 0; p < nt; ++p)
        for (int q = 0; q < nx; ++q) {
          std::vector<GQ> eq(vars);
          for (int t = 0; t < nt; ++t) eq[t * nx + q] = eq[t * nx + q] + r.at(p, t);
          if (q == j) eq[p * nx + i] = eq[p * nx + i] - GQ(1);
          bool all_zero = std::all_of(eq.begin(), eq.end(),
                                      [](const GQ& z) { return z.is_zero(); });
          if (!all_zero) rows.push_back(std::move(eq));
        }
    }
  std::vector<Mat> basis;
  Mat sys(static_cast<int>(rows.size()), vars);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < vars; ++j) sys.at(static_cast<int>(i), j) = rows[i][j];
  Mat ker = kernel_rows(sys);
  for (int k = 0; k < ker.rows; ++k) {
    Mat t(nt, nx);
    for (int p = 0; p < nt; ++p)
      for (int q = 0; q < nx; ++q) t.at(p, q) = ker.at(k, p * nx + q);
    basis.push_back(std::move(t));
  }
  return basis;
}

}  // namespace detail

// contravariantly induced map on points: decompose the target line over the
// isotypic pieces of the source action; a unique source block and a unique
// source line must carry it, and the answer is certified by the exact
// containment of the point ideal in the induced ideal
inline InducedPoint induced_point_map(const MorphismData& m, const UltrafilterPoint& pt) {
  int bt = pt.block;
  int nt = m.dst.dims[bt];
  std::vector<std::pair<int, Mat>> columns;  // (source block, T basis column bundle)
  std::vector<int> col_block, col_basis, col_coord;
  std::vector<std::vector<Mat>> tbases(m.src.nblocks());
  int ncols = 0;
  for (int x = 0; x < m.src.nblocks(); ++x) {
    tbases[x] = detail::intertwiner_basis(m, x, bt);
    for (size_t k = 0; k < tbases[x].size(); ++k)
      for (int q = 0; q < m.src.dims[x]; ++q) {
        col_block.push_back(x);
        col_basis.push_back(static_cast<int>(k));
        col_coord.push_back(q);
        ++ncols;
      }
  }
  Mat sys(nt, ncols);
  for (int c = 0; c < ncols; ++c) {
    const Mat& t = tbases[col_block[c]][col_basis[c]];
    for (int p = 0; p < nt; ++p) sys.at(p, c) = t.at(p, col_coord[c]);
  }
  std::vector<GQ> target = pt.line;
  auto sol = solve(sys, target);
  if (!sol) return InducedPoint{false, {}, "target line is outside the image isotypics"};

  int src_block = -1;
  std::vector<std::vector<GQ>> vecs;
  for (int x = 0; x < m.src.nblocks(); ++x) {
    for (size_t k = 0; k < tbases[x].size(); ++k) {
      std::vector<GQ> v(m.src.dims[x]);
      bool nonzero = false;
      for (int c = 0; c < ncols; ++c)
        if (col_block[c] == x && col_basis[c] == static_cast<int>(k)) {
          v[col_coord[c]] = (*sol)[c];
          if (!(*sol)[c].is_zero()) nonzero = true;
        }
      if (nonzero) {
        if (src_block >= 0 && src_block != x)
          return InducedPoint{false, {}, "line is carried by more than one source block"};
        src_block = x;
        vecs.push_back(std::move(v));
      }
    }
  }
  if (src_block < 0) return InducedPoint{false, {}, "line decomposes to zero"};
  Subspace v = Subspace::span_of(m.src.dims[src_block], vecs);
  if (v.dim() != 1)
    return InducedPoint{false, {}, "line is not carried by a single source line"};
  UltrafilterPoint out{src_block, v.basis_vector(0)};
  if (!ideal_leq(point_ideal(m.dst, pt), induced_lattice_map(m, point_ideal(m.src, out))))
    return InducedPoint{false, {}, "containment certificate failed"};
  return InducedPoint{true, out, ""};
}

struct MorphismGoodness {
  bool total = true;          // every sampled target point has a source point
  bool opens_match = true;    // preimages of sampled basic opens are basic opens
  std::vector<std::pair<UltrafilterPoint, InducedPoint>> samples;

  bool good() const { return total && opens_match; }
};

inline MorphismGoodness check_morphism_goodness(const MorphismData& m) {
  MorphismGoodness rep;
  std::vector<std::pair<UltrafilterPoint, InducedPoint>> samples;
  for (const UltrafilterPoint& pt : sample_points(m.dst)) {
    InducedPoint ip = induced_point_map(m, pt);
    if (!ip.ok) rep.total = false;
    rep.samples.emplace_back(pt, ip);
  }
  // basic-open compatibility on the sampled points: membership in U_L after
  // mapping agrees with membership in U_{induced L} upstairs
  std::vector<LeftIdealRep> test_ideals;
  for (const UltrafilterPoint& pt : sample_points(m.src))
    test_ideals.push_back(point_ideal(m.src, pt));
  test_ideals.push_back(zero_ideal(m.src));
  for (const LeftIdealRep& l : test_ideals) {
    BasicOpen down = basic_open(m.src, l);
    BasicOpen up = basic_open(m.dst, induced_lattice_map(m, l));
    for (const auto& [pt, ip] : rep.samples) {
      if (!ip.ok) continue;
      if (up.contains(pt) != down.contains(ip.point)) rep.opens_match = false;
    }
  }
  return rep;
}

}  // namespace gelfkit
