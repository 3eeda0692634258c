#pragma once

// Nerves of covers and Cech cohomology.  A cover is an index set plus a
// nonemptiness oracle for finite intersections, so finite-space covers and
// symbolic projective covers share one nerve builder.  Cochain groups are
// products of the coefficient group (or of presheaf sections) over ordered
// simplices, differentials carry the alternating sign, and cohomology comes
// out of the Smith-normal-form subquotient machinery.

#include "gelfkit/abelian.hpp"
#include "gelfkit/mat.hpp"
#include "gelfkit/sheaf.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace gelfkit {

struct Cover {
  int nmembers = 0;
  // sorted index subsets; must be monotone (subsets of nonempty meets nonempty)
  std::function<bool(const std::vector<int>&)> nonempty_meet;
};

inline Cover space_cover(const FiniteSpace& x, std::vector<Mask> members) {
  Mask un = 0;
  for (Mask m : members) {
    if (!x.is_open(m)) throw structural_error("cover member is not open");
    un |= m;
  }
  if (un != x.full_mask()) throw structural_error("cover does not cover the space");
  Cover c;
  c.nmembers = static_cast<int>(members.size());
  c.nonempty_meet = [members = std::move(members), full = x.full_mask()](
                        const std::vector<int>& idx) {
    Mask acc = full;
    for (int i : idx) acc &= members[i];
    return acc != 0;
  };
  return c;
}

// members are complements of exact linear subspaces of an ambient coordinate
// space; over an infinite field a finite union of proper subspaces never
// exhausts the ambient space, so a finite intersection of members is nonempty
// exactly when every excluded subspace involved is proper
inline Cover subspace_complement_cover(int ambient_dim, const std::vector<Subspace>& excluded) {
  std::vector<bool> proper;
  for (const auto& s : excluded) {
    if (s.ambient != ambient_dim) throw structural_error("excluded subspace dimension mismatch");
    proper.push_back(s.dim() < ambient_dim);
  }
  Cover c;
  c.nmembers = static_cast<int>(excluded.size());
  c.nonempty_meet = [proper = std::move(proper)](const std::vector<int>& idx) {
    for (int i : idx)
      if (!proper[i]) return false;
    return true;
  };
  return c;
}

// the projective-space cover by complements of n+1 coordinate hyperplanes
inline Cover projective_cover(int n) {
  if (n < 0) throw structural_error("projective dimension must be nonnegative");
  std::vector<Subspace> hyperplanes;
  for (int j = 0; j <= n; ++j) {
    std::vector<std::vector<GQ>> rows;
    for (int i = 0; i <= n; ++i) {
      if (i == j) continue;
      std::vector<GQ> row(n + 1);
      row[i] = GQ(1);
      rows.push_back(std::move(row));
    }
    hyperplanes.push_back(Subspace::span_of(n + 1, rows));
  }
  return subspace_complement_cover(n + 1, hyperplanes);
}

// componentwise intersection oracle for {U_i x W_j}
inline Cover product_cover(const Cover& a, const Cover& b) {
  Cover c;
  c.nmembers = a.nmembers * b.nmembers;
  int nb = b.nmembers;
  c.nonempty_meet = [a, b, nb](const std::vector<int>& idx) {
    std::vector<int> ia, ib;
    for (int k : idx) {
      ia.push_back(k / nb);
      ib.push_back(k % nb);
    }
    for (auto* v : {&ia, &ib}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    return a.nonempty_meet(ia) && b.nonempty_meet(ib);
  };
  return c;
}

struct Nerve {
  int nmembers = 0;
  bool truncated = false;  // some simplex above the cap was cut off
  // simplices[p] = sorted index tuples of dimension p, in lexicographic order
  std::vector<std::vector<std::vector<int>>> simplices;

  int dim() const { return static_cast<int>(simplices.size()) - 1; }
  int count(int p) const {
    return p >= 0 && p <= dim() ? static_cast<int>(simplices[p].size()) : 0;
  }
  int index_of(int p, const std::vector<int>& s) const {
    const auto& level = simplices[p];
    auto it = std::lower_bound(level.begin(), level.end(), s);
    if (it == level.end() || *it != s) return -1;
    return static_cast<int>(it - level.begin());
  }
};

// all nonempty index subsets with nonempty intersection, up to the dimension
// cap (GELFKIT_CAP_DIM overrides the default); strict mode refuses truncation
inline Nerve build_nerve(const Cover& c, int cap = -1, bool strict = false) {
  if (cap < 0) cap = static_cast<int>(env_cap("GELFKIT_CAP_DIM", 12));
  Nerve nv;
  nv.nmembers = c.nmembers;
  std::vector<std::vector<int>> level;
  for (int i = 0; i < c.nmembers; ++i)
    if (c.nonempty_meet({i})) level.push_back({i});
  while (!level.empty()) {
    nv.simplices.push_back(level);
    int p = nv.dim();
    std::vector<std::vector<int>> next;
    for (const auto& s : level)
      for (int j = s.back() + 1; j < c.nmembers; ++j) {
        auto t = s;
        t.push_back(j);
        if (c.nonempty_meet(t)) next.push_back(std::move(t));
      }
    if (!next.empty() && p + 1 > cap) {
      nv.truncated = true;
      if (strict) throw resource_error("nerve exceeds the dimension cap");
      break;
    }
    level = std::move(next);
  }
  return nv;
}

struct CechComplex {
  std::vector<AbGroup> c;  // C^p for p = 0..dim
  std::vector<AbHom> d;    // d[p]: C^p -> C^{p+1}; the top one lands in 0
};

namespace detail {

inline void check_exact_complex(const CechComplex& cx) {
  for (std::size_t p = 0; p + 1 < cx.d.size(); ++p)
    if (!hom_is_zero(compose(cx.d[p + 1], cx.d[p])))
      throw structural_error("differential does not square to zero");
}

}  // namespace detail

// constant coefficients: C^p = A^{#p-simplices}, alternating face signs
inline CechComplex cech_complex(const Nerve& nv, const AbGroup& coeff) {
  CechComplex cx;
  int g = coeff.ngens();
  for (int p = 0; p <= nv.dim(); ++p) {
    std::vector<Int> ord;
    for (int s = 0; s < nv.count(p); ++s)
      ord.insert(ord.end(), coeff.orders.begin(), coeff.orders.end());
    cx.c.push_back(AbGroup(std::move(ord)));
  }
  for (int p = 0; p <= nv.dim(); ++p) {
    AbGroup next = p + 1 <= nv.dim() ? cx.c[p + 1] : AbGroup::trivial();
    IntMat m(next.ngens(), cx.c[p].ngens());
    for (int t = 0; t < nv.count(p + 1); ++t) {
      const auto& tau = nv.simplices[p + 1][t];
      for (std::size_t k = 0; k < tau.size(); ++k) {
        std::vector<int> face;
        for (std::size_t i = 0; i < tau.size(); ++i)
          if (i != k) face.push_back(tau[i]);
        int s = nv.index_of(p, face);
        int sign = k % 2 == 0 ? 1 : -1;
        for (int r = 0; r < g; ++r) m.at(t * g + r, s * g + r) += sign;
      }
    }
    cx.d.push_back(ab_hom(cx.c[p], next, std::move(m)));
  }
  detail::check_exact_complex(cx);
  return cx;
}

struct CechCohomology {
  Nerve nerve;
  CechComplex complex;
  std::vector<Subquotient> h;  // H^p for p = 0..dim

  std::vector<AbGroup> groups() const {
    std::vector<AbGroup> out;
    for (const auto& q : h) out.push_back(q.group);
    return out;
  }
};

inline CechCohomology cohomology_of(Nerve nv, CechComplex cx) {
  CechCohomology out;
  out.nerve = std::move(nv);
  out.complex = std::move(cx);
  for (int p = 0; p <= out.nerve.dim(); ++p) {
    AbHom in = p == 0 ? ab_zero(AbGroup::trivial(), out.complex.c[0]) : out.complex.d[p - 1];
    out.h.push_back(homology(out.complex.d[p], in));
  }
  return out;
}

inline CechCohomology cech_cohomology(const Cover& c, const AbGroup& coeff, int cap = -1,
                                      bool strict = false) {
  Nerve nv = build_nerve(c, cap, strict);
  CechComplex cx = cech_complex(nv, coeff);
  return cohomology_of(std::move(nv), std::move(cx));
}

// presheaf coefficients over a finite-space cover: C^p = product of sections
// over the member intersections
inline CechCohomology cech_presheaf_cohomology(const FiniteSpace& x,
                                               const std::vector<Mask>& members,
                                               const FinitePresheaf& f, int cap = -1) {
  if (!(f.space.points == x.points && f.space.opens == x.opens))
    throw structural_error("presheaf does not live on the covered space");
  Nerve nv = build_nerve(space_cover(x, members), cap);

  auto open_of = [&](const std::vector<int>& s) {
    Mask acc = x.full_mask();
    for (int i : s) acc &= members[i];
    return x.open_index(acc);
  };

  CechComplex cx;
  std::vector<std::vector<int>> offsets(nv.dim() + 1);
  for (int p = 0; p <= nv.dim(); ++p) {
    std::vector<AbGroup> parts;
    for (const auto& s : nv.simplices[p]) parts.push_back(f.at(open_of(s)));
    detail::GroupProduct prod = detail::product_of(parts);
    offsets[p] = prod.offset;
    cx.c.push_back(prod.group);
  }
  for (int p = 0; p <= nv.dim(); ++p) {
    AbGroup next = p + 1 <= nv.dim() ? cx.c[p + 1] : AbGroup::trivial();
    IntMat m(next.ngens(), cx.c[p].ngens());
    for (int t = 0; t < nv.count(p + 1); ++t) {
      const auto& tau = nv.simplices[p + 1][t];
      int ut = open_of(tau);
      for (std::size_t k = 0; k < tau.size(); ++k) {
        std::vector<int> face;
        for (std::size_t i = 0; i < tau.size(); ++i)
          if (i != k) face.push_back(tau[i]);
        int s = nv.index_of(p, face);
        detail::place_block(m, offsets[p + 1][t], offsets[p][s], f.res(open_of(face), ut).m,
                            k % 2 == 0 ? 1 : -1);
      }
    }
    cx.d.push_back(ab_hom(cx.c[p], next, std::move(m)));
  }
  detail::check_exact_complex(cx);
  return cohomology_of(std::move(nv), std::move(cx));
}

// refinement data: source member i sits inside target member to[i]
struct CoverRefinement {
  std::vector<int> to;
};

// cochain-level pullback C^p(target) -> C^p(source) with constant
// coefficients: reindex along the refinement, sort, alternate by parity,
// vanish on repeated indices
inline std::vector<AbHom> pullback_cochain(const Nerve& src, const Nerve& dst,
                                           const CoverRefinement& r, const AbGroup& coeff) {
  if (static_cast<int>(r.to.size()) != src.nmembers)
    throw structural_error("refinement data size mismatch");
  for (int i : r.to)
    if (i < 0 || i >= dst.nmembers) throw structural_error("refinement index out of range");
  int g = coeff.ngens();
  std::vector<AbHom> out;
  for (int p = 0; p <= src.dim(); ++p) {
    AbGroup src_c, dst_c;
    {
      std::vector<Int> ord;
      for (int s = 0; s < src.count(p); ++s)
        ord.insert(ord.end(), coeff.orders.begin(), coeff.orders.end());
      src_c = AbGroup(ord);
      ord.clear();
      for (int s = 0; s < dst.count(p); ++s)
        ord.insert(ord.end(), coeff.orders.begin(), coeff.orders.end());
      dst_c = AbGroup(ord);
    }
    IntMat m(src_c.ngens(), dst_c.ngens());
    for (int s = 0; s < src.count(p); ++s) {
      std::vector<int> img;
      for (int i : src.simplices[p][s]) img.push_back(r.to[i]);
      int sign = 1;
      bool repeated = false;
      for (std::size_t i = 0; i + 1 < img.size() && !repeated; ++i)
        for (std::size_t j = i + 1; j < img.size(); ++j) {
          if (img[i] == img[j]) {
            repeated = true;
            break;
          }
          if (img[i] > img[j]) sign = -sign;
        }
      if (repeated) continue;
      std::sort(img.begin(), img.end());
      int t = dst.index_of(p, img);
      if (t < 0) throw structural_error("refinement sends a simplex outside the target nerve");
      for (int q = 0; q < g; ++q) m.at(s * g + q, t * g + q) += sign;
    }
    out.push_back(ab_hom(dst_c, src_c, std::move(m)));
  }
  return out;
}

// induced maps H^p(target) -> H^p(source); degrees above the source nerve
// dimension are dropped
inline std::vector<AbHom> pullback_on_cohomology(const CechCohomology& src,
                                                 const CechCohomology& dst,
                                                 const CoverRefinement& r, const AbGroup& coeff) {
  std::vector<AbHom> cochain = pullback_cochain(src.nerve, dst.nerve, r, coeff);
  std::vector<AbHom> out;
  for (int p = 0; p <= src.nerve.dim() && p <= dst.nerve.dim(); ++p) {
    IntMat m(src.h[p].group.ngens(), dst.h[p].group.ngens());
    for (int j = 0; j < dst.h[p].group.ngens(); ++j) {
      std::vector<Int> cocycle(dst.complex.c[p].ngens());
      for (int i = 0; i < dst.complex.c[p].ngens(); ++i) cocycle[i] = dst.h[p].gen_lifts.at(i, j);
      auto pulled = gelfkit::apply(cochain[p], cocycle);
      auto coords = src.h[p].express(pulled);
      for (int i = 0; i < src.h[p].group.ngens(); ++i) m.at(i, j) = coords[i];
    }
    out.push_back(ab_hom(dst.h[p].group, src.h[p].group, std::move(m)));
  }
  return out;
}

// classical total cohomology of complex projective n-space, degrees 0..2n
inline std::vector<AbGroup> reference_cp_cohomology(int n) {
  std::vector<AbGroup> out;
  for (int p = 0; p <= 2 * n; ++p)
    out.push_back(p % 2 == 0 ? AbGroup::free_group(1) : AbGroup::trivial());
  return out;
}

// both sides of the compact-space comparison: the hyperplane-complement cover
// has a full-simplex nerve, so its positive-degree cohomology vanishes, while
// the classical answer does not for n >= 1
struct ProjectiveComparison {
  std::vector<AbGroup> cover_side;  // padded with zeros up to degree 2n
  std::vector<AbGroup> reference;
  bool agree = false;
};

inline ProjectiveComparison projective_cover_comparison(int n, int cap = -1) {
  ProjectiveComparison pc;
  CechCohomology ch = cech_cohomology(projective_cover(n), AbGroup::free_group(1), cap);
  pc.cover_side = ch.groups();
  pc.cover_side.resize(2 * n + 1, AbGroup::trivial());
  pc.reference = reference_cp_cohomology(n);
  pc.agree = true;
  for (int p = 0; p <= 2 * n; ++p)
    if (!isomorphic(pc.cover_side[p], pc.reference[p])) pc.agree = false;
  return pc;
}

}  // namespace gelfkit
