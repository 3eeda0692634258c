#pragma once

// Blowing-up data: a block algebra fibered over a finite discrete space by
// assigning each block to a point.  Functions on the space embed into the
// center as blockwise scalars; open sets cut out block-set subalgebras; the
// support of an element is the closed (= arbitrary, the space is discrete)
// set of points its nonzero blocks sit over.

#include "gelfkit/gelfand.hpp"
#include "gelfkit/space.hpp"

#include <vector>

namespace gelfkit {

struct BlowingUp {
  BlockAlgebra alg;
  FiniteSpace space;                // discrete
  std::vector<int> block_to_point;  // total assignment

  std::vector<int> blocks_at(int p) const {
    std::vector<int> out;
    for (int b = 0; b < alg.nblocks(); ++b)
      if (block_to_point[b] == p) out.push_back(b);
    return out;
  }
  std::vector<int> unassigned_points() const {
    std::vector<int> out;
    for (int p = 0; p < space.npoints(); ++p)
      if (blocks_at(p).empty()) out.push_back(p);
    return out;
  }
};

// scalars per point, embedded as a central element
inline AlgebraElement embed_function(const BlowingUp& bu, const std::vector<GQ>& values) {
  if (static_cast<int>(values.size()) != bu.space.npoints())
    throw structural_error("function needs one value per point");
  AlgebraElement a = zero_element(bu.alg);
  for (int b = 0; b < bu.alg.nblocks(); ++b)
    a.blocks[b] = values[bu.block_to_point[b]] * Mat::identity(bu.alg.dims[b]);
  return a;
}

inline BlowingUp make_blowing_up(BlockAlgebra alg, FiniteSpace space,
                                 std::vector<int> block_to_point) {
  if (space.npoints() > 20 || !space.is_discrete())
    throw structural_error("blowing-up needs a small discrete space");
  if (static_cast<int>(block_to_point.size()) != alg.nblocks())
    throw structural_error("assignment needs one point per block");
  for (int p : block_to_point)
    if (p < 0 || p >= space.npoints()) throw structural_error("assignment point out of range");
  BlowingUp bu{std::move(alg), std::move(space), std::move(block_to_point)};
  // the embedding is central and the function algebra acts densely: every
  // matrix unit is recovered as (indicator of its point) * unit
  for (int p = 0; p < bu.space.npoints(); ++p) {
    std::vector<GQ> ind(bu.space.npoints());
    ind[p] = GQ(1);
    AlgebraElement e = embed_function(bu, ind);
    if (!is_central(bu.alg, e)) throw structural_error("embedding is not central");
    for (int b : bu.blocks_at(p)) {
      AlgebraElement u = matrix_unit(bu.alg, b, 0, 0);
      if (!(e * u == u)) throw structural_error("indicator does not act as identity");
    }
  }
  return bu;
}

struct USubalgebra {
  std::vector<int> blocks;  // blocks over the open set
  LeftIdealRep ideal;       // full on those blocks; two-sided here
  HereditaryRep corner;
};

inline USubalgebra u_subalgebra(const BlowingUp& bu, Mask u) {
  if (!bu.space.is_open(u)) throw value_domain_error("u_subalgebra needs an open set");
  USubalgebra out;
  out.ideal = zero_ideal(bu.alg);
  for (int b = 0; b < bu.alg.nblocks(); ++b)
    if (u & (Mask{1} << bu.block_to_point[b])) {
      out.blocks.push_back(b);
      out.ideal.v[b] = Subspace::full(bu.alg.dims[b]);
    }
  out.corner = hereditary_of_ideal(out.ideal);
  return out;
}

inline bool element_supported_on(const BlowingUp& bu, const AlgebraElement& a, Mask u) {
  check_element(bu.alg, a);
  for (int b = 0; b < bu.alg.nblocks(); ++b)
    if (!a.blocks[b].is_zero() && !(u & (Mask{1} << bu.block_to_point[b]))) return false;
  return true;
}

inline Mask support(const BlowingUp& bu, const AlgebraElement& a) {
  check_element(bu.alg, a);
  Mask m = 0;
  for (int b = 0; b < bu.alg.nblocks(); ++b)
    if (!a.blocks[b].is_zero()) m |= Mask{1} << bu.block_to_point[b];
  return m;
}

struct ApproxCompact {
  std::vector<GQ> f;  // indicator of the support, a norm-at-most-one positive function
  Rat left_defect, right_defect, corner_defect;  // all exactly zero here
};

inline ApproxCompact approx_compact(const BlowingUp& bu, const AlgebraElement& a) {
  Mask supp = support(bu, a);
  ApproxCompact out;
  out.f.assign(bu.space.npoints(), GQ(0));
  for (int p = 0; p < bu.space.npoints(); ++p)
    if (supp & (Mask{1} << p)) out.f[p] = GQ(1);
  AlgebraElement fe = embed_function(bu, out.f);
  if (!((a - a * fe).is_zero() && (a - fe * a).is_zero() && (a - fe * a * fe).is_zero()))
    throw value_domain_error("support indicator failed to reproduce the element");
  out.left_defect = out.right_defect = out.corner_defect = Rat(0);
  return out;
}

struct FactorizationSample {
  UltrafilterPoint xi;
  int spectrum_block;
  int space_point;
  bool commutes;  // the point maps back to the same spectrum element
};

struct BlowupFactorization {
  bool commutes = true;
  bool spectrum_map_defined = true;  // every used point carries exactly one block
  std::vector<FactorizationSample> samples;
  std::vector<int> unassigned;
};

// Gelfand(A) -> X -> spectrum against the direct belongs-to map on samples
inline BlowupFactorization blowup_factorization(const BlowingUp& bu) {
  BlowupFactorization rep;
  rep.unassigned = bu.unassigned_points();
  for (const UltrafilterPoint& xi : sample_points(bu.alg)) {
    FactorizationSample s;
    s.xi = xi;
    s.spectrum_block = belongs_to(bu.alg, xi);
    s.space_point = bu.block_to_point[s.spectrum_block];
    auto back = bu.blocks_at(s.space_point);
    s.commutes = back.size() == 1 && back[0] == s.spectrum_block;
    if (back.size() != 1) rep.spectrum_map_defined = false;
    if (!s.commutes) rep.commutes = false;
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

}  // namespace gelfkit
