#pragma once

// Noncommutative pre-coverings and coverings of block algebras, evenly
// covered corners, deck groups of graph coverings, and fundamental group
// presentations of finite 2-complexes.  At finite dimension the multiplier
// algebra is the algebra itself and all strict-topology sums are finite, so
// every covering axiom reduces to an exact linear computation.

#include "gelfkit/abelian.hpp"
#include "gelfkit/automorphism.hpp"
#include "gelfkit/gelfand.hpp"
#include "gelfkit/intmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gelfkit {

struct FiniteAutGroup {
  std::vector<Automorphism> elements;  // element 0 is the identity map

  int order() const { return static_cast<int>(elements.size()); }
};

// closure of the generators under composition, deduplicated as maps
inline FiniteAutGroup make_aut_group(const BlockAlgebra& alg,
                                     const std::vector<Automorphism>& gens,
                                     int cap = 720) {
  FiniteAutGroup g;
  g.elements.push_back(identity_automorphism(alg));
  auto known = [&](const Automorphism& f) {
    for (const auto& e : g.elements)
      if (equal_as_maps(alg, e, f)) return true;
    return false;
  };
  for (const auto& f : gens)
    if (!known(f)) g.elements.push_back(f);
  bool grew = true;
  while (grew) {
    grew = false;
    std::size_t n = g.elements.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Automorphism c = compose(alg, g.elements[i], g.elements[j]);
        if (!known(c)) {
          if (static_cast<int>(g.elements.size()) >= cap)
            throw resource_error("automorphism group closure exceeds cap");
          g.elements.push_back(std::move(c));
          grew = true;
        }
      }
  }
  return g;
}

struct CoveringQuadruple {
  BlockAlgebra base;                   // A, unital
  BlockAlgebra cover;                  // the covering algebra
  MorphismData lift;                   // A into the cover (its own multiplier algebra here)
  FiniteAutGroup group;                // claimed covering group G
  std::vector<Automorphism> ambient;   // automorphism family searched for the stabilizer
};

namespace detail {

// matrix of the linear action of g on vectorized elements
inline Mat action_matrix(const BlockAlgebra& alg, const Automorphism& g) {
  int d = alg.total_dim();
  Mat m(d, d);
  int col = 0;
  for (int b = 0; b < alg.nblocks(); ++b)
    for (int i = 0; i < alg.dims[b]; ++i)
      for (int j = 0; j < alg.dims[b]; ++j) {
        auto v = vectorize(alg, apply_automorphism(alg, g, matrix_unit(alg, b, i, j)));
        for (int r = 0; r < d; ++r) m.at(r, col) = v[r];
        ++col;
      }
  return m;
}

inline bool fixes_elements(const BlockAlgebra& alg, const Automorphism& g,
                           const std::vector<AlgebraElement>& es) {
  for (const auto& e : es)
    if (!(apply_automorphism(alg, g, e) == e)) return false;
  return true;
}

}  // namespace detail

struct PrecoveringVerdict {
  bool unital = false;          // lift carries the unit to the unit
  bool stabilizer = false;      // G is the full pointwise stabilizer of the lifted copy
  bool fixed_points = false;    // the fixed algebra of G equals the lifted copy
  bool group_finite = true;     // discreteness at finite scale, reported
  bool base_connected = false;  // reported, not enforced: covers with |G| > 1
  bool cover_connected = false; // split into blocks at finite dimension
  std::vector<std::string> failures;

  bool ok() const { return unital && stabilizer && fixed_points; }
};

inline PrecoveringVerdict check_precovering(const CoveringQuadruple& q) {
  PrecoveringVerdict v;
  v.base_connected = is_connected_algebra(q.base);
  v.cover_connected = is_connected_algebra(q.cover);

  AlgebraElement one_img = q.lift.apply(one_element(q.base));
  v.unital = one_img == one_element(q.cover);
  if (!v.unital) v.failures.push_back("lift does not carry the unit to the unit");

  std::vector<AlgebraElement> lifted;
  for (int b = 0; b < q.base.nblocks(); ++b)
    for (int i = 0; i < q.base.dims[b]; ++i)
      for (int j = 0; j < q.base.dims[b]; ++j)
        lifted.push_back(q.lift.unit_images[q.lift.unit_index(b, i, j)]);

  v.stabilizer = true;
  for (const auto& g : q.group.elements)
    if (!detail::fixes_elements(q.cover, g, lifted)) {
      v.stabilizer = false;
      v.failures.push_back("a group element moves the lifted copy");
      break;
    }
  if (v.stabilizer)
    for (const auto& h : q.ambient)
      if (detail::fixes_elements(q.cover, h, lifted)) {
        bool present = false;
        for (const auto& g : q.group.elements)
          if (equal_as_maps(q.cover, g, h)) {
            present = true;
            break;
          }
        if (!present) {
          v.stabilizer = false;
          v.failures.push_back("the supplied family contains a stabilizing map outside G");
          break;
        }
      }

  // fixed-point algebra: kernel of the stacked (action - identity) system
  int d = q.cover.total_dim();
  std::vector<Mat> actions;
  for (std::size_t k = 1; k < q.group.elements.size(); ++k)
    actions.push_back(detail::action_matrix(q.cover, q.group.elements[k]));
  Mat sys(static_cast<int>(actions.size()) * d, d);
  for (std::size_t k = 0; k < actions.size(); ++k)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        sys.at(static_cast<int>(k) * d + r, c) =
            actions[k].at(r, c) - (r == c ? GQ(1) : GQ(0));
  Mat fixed = kernel_rows(sys);
  std::vector<std::vector<GQ>> fixed_rows;
  for (int r = 0; r < fixed.rows; ++r) {
    std::vector<GQ> row(d);
    for (int c = 0; c < d; ++c) row[c] = fixed.at(r, c);
    fixed_rows.push_back(std::move(row));
  }
  std::vector<std::vector<GQ>> image_rows;
  for (const auto& e : lifted) image_rows.push_back(vectorize(q.cover, e));
  v.fixed_points =
      Subspace::span_of(d, fixed_rows) == Subspace::span_of(d, image_rows);
  if (!v.fixed_points)
    v.failures.push_back("the fixed-point algebra differs from the lifted copy");
  return v;
}

struct EvenWitness {
  int block = -1;    // block of the covering algebra carrying the corner
  Subspace space;    // the corner's column space there
  Mat transport;     // T realizing b -> T b T* / lambda
  Rat lambda;
  bool orthogonal = false;  // group translates have exactly vanishing products
};

struct EvenlyCoveredVerdict {
  bool covered = false;
  std::vector<EvenWitness> witnesses;
};

// searches block-subspace corners reachable by intertwiners of the lift and
// their group translates; reports every witness where the finite group sum
// reproduces the lift on a generating family of the corner
inline EvenlyCoveredVerdict check_evenly_covered(const CoveringQuadruple& q,
                                                 const HereditaryRep& b) {
  if (!b.is_connected())
    throw value_domain_error("evenly covered corners must be connected");
  int s = -1;
  for (int i = 0; i < q.base.nblocks(); ++i)
    if (!b.v[i].is_zero()) s = i;
  if (q.base.nblocks() == 1 && b.v[s].is_full())
    throw value_domain_error("evenly covered corners must be proper");

  const Subspace& vsp = b.v[s];
  int dim = vsp.dim();
  std::vector<AlgebraElement> gens;
  for (int k = 0; k < dim; ++k)
    for (int l = 0; l < dim; ++l) {
      auto vk = vsp.basis_vector(k);
      auto vl = vsp.basis_vector(l);
      AlgebraElement e = zero_element(q.base);
      for (int i = 0; i < q.base.dims[s]; ++i)
        for (int j = 0; j < q.base.dims[s]; ++j) e.blocks[s].at(i, j) = vk[i] * vl[j].conj();
      gens.push_back(std::move(e));
    }

  std::vector<std::pair<int, Mat>> candidates;
  for (int t = 0; t < q.cover.nblocks(); ++t)
    for (const Mat& m : detail::intertwiner_basis(q.lift, s, t)) candidates.push_back({t, m});
  std::size_t seeds = candidates.size();
  for (std::size_t c = 0; c < seeds; ++c)
    for (const auto& g : q.group.elements) {
      auto [t, m] = candidates[c];
      int tt = g.perm[t];
      candidates.push_back({tt, g.conj[tt] * m});
    }

  EvenlyCoveredVerdict out;
  Mat pv = projector(vsp);
  for (const auto& [t, tm] : candidates) {
    Mat restricted = pv * (tm.adjoint() * tm) * pv;
    GQ lam(0);
    for (int i = 0; i < restricted.rows && lam.is_zero(); ++i)
      if (!pv.at(i, i).is_zero()) lam = restricted.at(i, i) / pv.at(i, i);
    if (lam.is_zero() || !lam.is_real() || lam.re <= 0) continue;
    if (!(restricted == lam * pv)) continue;
    Rat lambda = lam.re;

    std::vector<std::vector<GQ>> wrows;
    for (int k = 0; k < dim; ++k) {
      auto vk = vsp.basis_vector(k);
      std::vector<GQ> w(q.cover.dims[t]);
      for (int i = 0; i < q.cover.dims[t]; ++i)
        for (int j = 0; j < static_cast<int>(vk.size()); ++j) w[i] = w[i] + tm.at(i, j) * vk[j];
      wrows.push_back(std::move(w));
    }
    Subspace wsp = Subspace::span_of(q.cover.dims[t], wrows);
    if (wsp.dim() != dim) continue;

    GQ inv(Rat(Rat(1) / lambda), Rat(0));
    auto iso = [&](const AlgebraElement& x) {
      AlgebraElement y = zero_element(q.cover);
      y.blocks[t] = inv * (tm * x.blocks[s] * tm.adjoint());
      return y;
    };

    bool match = true;
    std::vector<AlgebraElement> images;
    for (const auto& e : gens) images.push_back(iso(e));
    for (std::size_t k = 0; k < gens.size() && match; ++k) {
      AlgebraElement sum = zero_element(q.cover);
      for (const auto& g : q.group.elements)
        sum = sum + apply_automorphism(q.cover, g, images[k]);
      match = q.lift.apply(gens[k]) == sum;
    }
    if (!match) continue;

    bool orthogonal = true;
    for (std::size_t gi = 0; gi < q.group.elements.size() && orthogonal; ++gi)
      for (std::size_t hi = 0; hi < q.group.elements.size() && orthogonal; ++hi) {
        if (gi == hi) continue;
        for (std::size_t k = 0; k < images.size() && orthogonal; ++k)
          for (std::size_t l = 0; l < images.size(); ++l) {
            AlgebraElement p =
                apply_automorphism(q.cover, q.group.elements[gi], images[k]) *
                apply_automorphism(q.cover, q.group.elements[hi], images[l]);
            if (!p.is_zero()) {
              orthogonal = false;
              break;
            }
          }
      }

    bool duplicate = false;
    for (const auto& w : out.witnesses)
      if (w.block == t && w.space == wsp) duplicate = true;
    if (!duplicate) out.witnesses.push_back({t, wsp, tm, lambda, orthogonal});
  }
  out.covered = !out.witnesses.empty();
  return out;
}

struct UnitalCoveringVerdict {
  bool ok = true;
  std::vector<int> unsatisfied;  // indices of sample points with no covered corner
};

// each sampled spectrum point must admit an evenly covered connected corner
// belonging to it; the line corner is tried first, then its whole block
inline UnitalCoveringVerdict check_unital_covering(const CoveringQuadruple& q,
                                                   const std::vector<UltrafilterPoint>& sample) {
  UnitalCoveringVerdict v;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto& pt = sample[i];
    HereditaryRep line = hereditary_of_ideal(point_ideal(q.base, pt));
    bool found = false;
    auto try_corner = [&](const HereditaryRep& h) {
      if (found) return;
      bool proper = !(q.base.nblocks() == 1 && h.v[pt.block].is_full());
      if (!proper) return;
      if (check_evenly_covered(q, h).covered) found = true;
    };
    try_corner(line);
    if (!found && q.base.dims[pt.block] > 1) {
      HereditaryRep block{std::vector<Subspace>(q.base.nblocks(),
                                                Subspace::zero(0))};
      for (int b = 0; b < q.base.nblocks(); ++b)
        block.v[b] = b == pt.block ? Subspace::full(q.base.dims[b])
                                   : Subspace::zero(q.base.dims[b]);
      try_corner(block);
    }
    if (!found) {
      v.ok = false;
      v.unsatisfied.push_back(static_cast<int>(i));
    }
  }
  return v;
}

// non-unital data: A and its cover sit as block-supported ideals inside an
// ambient unital covering
struct NonUnitalCovering {
  CoveringQuadruple ambient;     // (B, B-tilde, G, ambient lift)
  std::vector<int> base_blocks;  // blocks of B forming A
  std::vector<int> cover_blocks; // blocks of B-tilde forming the cover of A
};

struct NonUnitalVerdict {
  bool base_essential = false;
  bool cover_essential = false;
  bool restriction = false;        // ambient lift maps A into the cover ideal
  bool action_restricts = false;   // G preserves the cover ideal
  bool action_determined = false;  // restriction to the cover ideal determines g
  std::vector<std::string> notes;

  bool ok() const {
    return base_essential && cover_essential && restriction && action_restricts;
  }
};

// at finite dimension the annihilator of a block-supported ideal is the
// complementary block set, so an essential ideal is the whole algebra
inline NonUnitalVerdict check_covering_nonunital(const NonUnitalCovering& nc) {
  NonUnitalVerdict v;
  const CoveringQuadruple& q = nc.ambient;
  auto sorted_all = [](int n) {
    std::vector<int> w(n);
    for (int i = 0; i < n; ++i) w[i] = i;
    return w;
  };
  std::vector<int> bb = nc.base_blocks, cb = nc.cover_blocks;
  std::sort(bb.begin(), bb.end());
  std::sort(cb.begin(), cb.end());
  v.base_essential = bb == sorted_all(q.base.nblocks());
  v.cover_essential = cb == sorted_all(q.cover.nblocks());
  if (!v.base_essential)
    v.notes.push_back("the base ideal has a nonzero annihilator (missing blocks act)");
  if (!v.cover_essential)
    v.notes.push_back("the cover ideal has a nonzero annihilator");

  v.restriction = true;
  for (int b : nc.base_blocks)
    for (int i = 0; i < q.base.dims[b] && v.restriction; ++i)
      for (int j = 0; j < q.base.dims[b]; ++j) {
        const AlgebraElement& im = q.lift.unit_images[q.lift.unit_index(b, i, j)];
        for (int t = 0; t < q.cover.nblocks(); ++t) {
          if (std::find(cb.begin(), cb.end(), t) != cb.end()) continue;
          if (!im.blocks[t].is_zero()) {
            v.restriction = false;
            v.notes.push_back("the lift leaks outside the cover ideal");
            break;
          }
        }
      }

  v.action_restricts = true;
  for (const auto& g : q.group.elements)
    for (int t : cb)
      if (std::find(cb.begin(), cb.end(), g.perm[t]) == cb.end()) {
        v.action_restricts = false;
        v.notes.push_back("a group element moves the cover ideal");
        break;
      }

  // uniqueness of the extension: distinct group elements must differ already
  // on the cover ideal
  v.action_determined = true;
  std::vector<AlgebraElement> ideal_units;
  for (int t : cb)
    for (int i = 0; i < q.cover.dims[t]; ++i)
      for (int j = 0; j < q.cover.dims[t]; ++j)
        ideal_units.push_back(matrix_unit(q.cover, t, i, j));
  for (std::size_t a = 0; a < q.group.elements.size() && v.action_determined; ++a)
    for (std::size_t b2 = a + 1; b2 < q.group.elements.size(); ++b2) {
      bool same = true;
      for (const auto& u : ideal_units)
        if (!(apply_automorphism(q.cover, q.group.elements[a], u) ==
              apply_automorphism(q.cover, q.group.elements[b2], u))) {
          same = false;
          break;
        }
      if (same) {
        v.action_determined = false;
        v.notes.push_back("two group elements agree on the cover ideal");
        break;
      }
    }
  return v;
}

// ---------------------------------------------------------------------------
// finite 2-complexes and fundamental groups

struct TwoComplex {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;  // directed
  std::vector<std::vector<int>> cells;     // signed 1-based edge letters, cyclically reduced
};

namespace detail {

inline std::vector<int> cyclic_reduce(std::vector<int> w) {
  bool changed = true;
  while (changed && w.size() >= 2) {
    changed = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::size_t j = (i + 1) % w.size();
      if (w[i] == -w[j]) {
        if (j > i)
          w.erase(w.begin() + j), w.erase(w.begin() + i);
        else
          w.erase(w.begin() + i), w.erase(w.begin() + j);
        changed = true;
        break;
      }
    }
  }
  return w;
}

}  // namespace detail

inline TwoComplex make_two_complex(std::vector<std::string> vertices,
                                   std::vector<std::pair<int, int>> edges,
                                   std::vector<std::vector<int>> cells) {
  TwoComplex x;
  x.vertices = std::move(vertices);
  if (x.vertices.empty()) throw structural_error("complex needs at least one vertex");
  int nv = static_cast<int>(x.vertices.size());
  for (auto [u, v] : edges)
    if (u < 0 || u >= nv || v < 0 || v >= nv)
      throw structural_error("edge endpoint out of range");
  x.edges = std::move(edges);
  int ne = static_cast<int>(x.edges.size());
  for (auto& w : cells) {
    if (w.empty()) throw structural_error("empty cell word");
    int at = -1, start = -1;
    for (int letter : w) {
      int e = std::abs(letter) - 1;
      if (letter == 0 || e >= ne) throw structural_error("cell letter out of range");
      int from = letter > 0 ? x.edges[e].first : x.edges[e].second;
      int to = letter > 0 ? x.edges[e].second : x.edges[e].first;
      if (at == -1) start = from;
      else if (at != from) throw structural_error("cell word is not an edge path");
      at = to;
    }
    if (at != start) throw structural_error("cell word is not a closed path");
    x.cells.push_back(detail::cyclic_reduce(std::move(w)));
  }
  return x;
}

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<int> generator_edges;        // complex edge index behind each generator
  std::vector<std::vector<int>> relators;  // signed 1-based generator letters
  AbGroup abelianization;
};

namespace detail {

inline std::string gen_name(int k) {
  if (k < 26) return std::string(1, static_cast<char>('a' + k));
  return "g" + std::to_string(k + 1);
}

}  // namespace detail

// spanning-tree edge-path presentation: generators are the non-tree edges,
// relators are the cell boundaries with tree edges deleted
inline GroupPresentation pi1_presentation(const TwoComplex& x, int base = 0) {
  int nv = static_cast<int>(x.vertices.size());
  int ne = static_cast<int>(x.edges.size());
  if (base < 0 || base >= nv) throw structural_error("base vertex out of range");

  std::vector<bool> seen(nv, false);
  std::vector<bool> tree(ne, false);
  std::vector<int> frontier = {base};
  seen[base] = true;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int v : frontier)
      for (int e = 0; e < ne; ++e) {
        auto [a, b] = x.edges[e];
        int other = a == v ? b : b == v ? a : -1;
        if (other < 0 || seen[other]) continue;
        seen[other] = true;
        tree[e] = true;
        next.push_back(other);
      }
    frontier = std::move(next);
  }
  for (bool s : seen)
    if (!s) throw value_domain_error("complex is not connected");

  GroupPresentation p;
  std::vector<int> gen_of(ne, 0);  // 1-based generator index, 0 for tree edges
  for (int e = 0; e < ne; ++e)
    if (!tree[e]) {
      gen_of[e] = static_cast<int>(p.generators.size()) + 1;
      p.generators.push_back(detail::gen_name(static_cast<int>(p.generators.size())));
      p.generator_edges.push_back(e);
    }
  for (const auto& cell : x.cells) {
    std::vector<int> rel;
    for (int letter : cell) {
      int e = std::abs(letter) - 1;
      if (gen_of[e] == 0) continue;
      rel.push_back(letter > 0 ? gen_of[e] : -gen_of[e]);
    }
    p.relators.push_back(detail::cyclic_reduce(std::move(rel)));
  }

  int ng = static_cast<int>(p.generators.size());
  IntMat rm(ng, static_cast<int>(p.relators.size()));
  for (std::size_t c = 0; c < p.relators.size(); ++c)
    for (int letter : p.relators[c])
      rm.at(std::abs(letter) - 1, static_cast<int>(c)) += letter > 0 ? 1 : -1;
  p.abelianization =
      cokernel_of(ab_hom(AbGroup::free_group(rm.cols), AbGroup::free_group(ng), rm));
  return p;
}

// cochain cohomology of the complex itself, degrees 0..2
inline std::vector<AbGroup> two_complex_cohomology(const TwoComplex& x) {
  int nv = static_cast<int>(x.vertices.size());
  int ne = static_cast<int>(x.edges.size());
  int nc = static_cast<int>(x.cells.size());
  IntMat d0(ne, nv);
  for (int e = 0; e < ne; ++e) {
    d0.at(e, x.edges[e].second) += 1;
    d0.at(e, x.edges[e].first) -= 1;
  }
  IntMat d1(nc, ne);
  for (int c = 0; c < nc; ++c)
    for (int letter : x.cells[c]) d1.at(c, std::abs(letter) - 1) += letter > 0 ? 1 : -1;
  AbGroup c0 = AbGroup::free_group(nv), c1 = AbGroup::free_group(ne),
          c2 = AbGroup::free_group(nc);
  AbHom h0 = ab_hom(c0, c1, d0), h1 = ab_hom(c1, c2, d1);
  if (!hom_is_zero(compose(h1, h0)))
    throw structural_error("cell boundaries are not cycles");
  std::vector<AbGroup> out;
  out.push_back(homology(h0, ab_zero(AbGroup::trivial(), c0)).group);
  out.push_back(homology(h1, h0).group);
  out.push_back(homology(ab_zero(c2, AbGroup::trivial()), h1).group);
  return out;
}

// simplicial 1-homology, degrees 0 and 1; H_1 of a connected complex is the
// abelianized fundamental group
inline std::vector<AbGroup> two_complex_homology(const TwoComplex& x) {
  int nv = static_cast<int>(x.vertices.size());
  int ne = static_cast<int>(x.edges.size());
  int nc = static_cast<int>(x.cells.size());
  IntMat b1(nv, ne);
  for (int e = 0; e < ne; ++e) {
    b1.at(x.edges[e].second, e) += 1;
    b1.at(x.edges[e].first, e) -= 1;
  }
  IntMat b2(ne, nc);
  for (int c = 0; c < nc; ++c)
    for (int letter : x.cells[c]) b2.at(std::abs(letter) - 1, c) += letter > 0 ? 1 : -1;
  AbGroup c0 = AbGroup::free_group(nv), c1 = AbGroup::free_group(ne),
          c2 = AbGroup::free_group(nc);
  AbHom h1 = ab_hom(c1, c0, b1), h2 = ab_hom(c2, c1, b2);
  std::vector<AbGroup> out;
  out.push_back(homology(ab_zero(c0, AbGroup::trivial()), h1).group);
  out.push_back(homology(h1, h2).group);
  return out;
}

// ---------------------------------------------------------------------------
// graph coverings

struct Graph {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;  // undirected, stored with an orientation

  int nvertices() const { return static_cast<int>(vertices.size()); }
  int nedges() const { return static_cast<int>(edges.size()); }
  // darts 2e and 2e+1 are the two orientations of edge e
  int dart_tail(int d) const { return d % 2 == 0 ? edges[d / 2].first : edges[d / 2].second; }
  int dart_head(int d) const { return d % 2 == 0 ? edges[d / 2].second : edges[d / 2].first; }
  std::vector<int> star(int v) const {
    std::vector<int> out;
    for (int d = 0; d < 2 * nedges(); ++d)
      if (dart_tail(d) == v) out.push_back(d);
    return out;
  }
};

inline Graph make_graph(std::vector<std::string> vertices,
                        std::vector<std::pair<int, int>> edges) {
  Graph g{std::move(vertices), std::move(edges)};
  if (g.vertices.empty()) throw structural_error("graph needs at least one vertex");
  for (auto [u, v] : g.edges)
    if (u < 0 || u >= g.nvertices() || v < 0 || v >= g.nvertices())
      throw structural_error("edge endpoint out of range");
  return g;
}

struct GraphMap {
  Graph src;
  Graph dst;
  std::vector<int> vmap;
  std::vector<int> emap;
  std::vector<int> flip;  // 1 when the edge reverses orientation

  int dart_image(int d) const { return 2 * emap[d / 2] + ((d % 2) ^ flip[d / 2]); }
};

inline GraphMap make_graph_map(Graph src, Graph dst, std::vector<int> vmap,
                               std::vector<int> emap, std::vector<int> flip) {
  GraphMap f{std::move(src), std::move(dst), std::move(vmap), std::move(emap),
             std::move(flip)};
  if (static_cast<int>(f.vmap.size()) != f.src.nvertices() ||
      static_cast<int>(f.emap.size()) != f.src.nedges() ||
      static_cast<int>(f.flip.size()) != f.src.nedges())
    throw structural_error("graph map data sizes mismatch");
  for (int v : f.vmap)
    if (v < 0 || v >= f.dst.nvertices()) throw structural_error("vertex image out of range");
  for (int e = 0; e < f.src.nedges(); ++e) {
    if (f.emap[e] < 0 || f.emap[e] >= f.dst.nedges())
      throw structural_error("edge image out of range");
    if (f.flip[e] != 0 && f.flip[e] != 1) throw structural_error("flip must be 0 or 1");
    auto [u, v] = f.src.edges[e];
    auto [a, b] = f.dst.edges[f.emap[e]];
    int ia = f.flip[e] == 0 ? a : b, ib = f.flip[e] == 0 ? b : a;
    if (f.vmap[u] != ia || f.vmap[v] != ib)
      throw structural_error("edge image does not match vertex images");
  }
  return f;
}

struct GraphCoveringVerdict {
  bool covering = false;
  int witness_vertex = -1;  // a vertex whose star fails to biject
};

inline GraphCoveringVerdict is_graph_covering(const GraphMap& p) {
  for (int v = 0; v < p.src.nvertices(); ++v) {
    std::vector<int> up = p.src.star(v);
    std::vector<int> down = p.dst.star(p.vmap[v]);
    std::vector<int> images;
    for (int d : up) images.push_back(p.dart_image(d));
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end())
      return {false, v};
    std::sort(down.begin(), down.end());
    if (images != down) return {false, v};
  }
  return {true, -1};
}

namespace detail {

// all simplicial maps f: src -> dst with proj_dst . f = proj_src; when
// `bijective` is set the search is restricted to isomorphisms
inline void lift_search(const GraphMap& psrc, const GraphMap& pdst, bool bijective,
                        bool first_only, std::vector<GraphMap>& out) {
  const Graph& sg = psrc.src;
  const Graph& dg = pdst.src;
  int nv = sg.nvertices(), ne = sg.nedges();
  if (nv > 16 || ne > 32) throw resource_error("graph search too large");
  std::vector<int> vmap(nv, -1), emap(ne, -1), flip(ne, 0);
  std::vector<bool> vused(dg.nvertices(), false), eused(dg.nedges(), false);

  auto emit = [&]() {
    out.push_back(make_graph_map(sg, dg, vmap, emap, flip));
  };

  std::function<bool(int)> edges_from = [&](int e) -> bool {
    if (e == ne) {
      emit();
      return first_only;
    }
    auto [u, v] = sg.edges[e];
    for (int f = 0; f < dg.nedges(); ++f) {
      if (bijective && eused[f]) continue;
      if (pdst.emap[f] != psrc.emap[e]) continue;
      for (int fl = 0; fl < 2; ++fl) {
        if ((pdst.flip[f] ^ fl) != psrc.flip[e]) continue;
        auto [a, b] = dg.edges[f];
        int ia = fl == 0 ? a : b, ib = fl == 0 ? b : a;
        if (vmap[u] != ia || vmap[v] != ib) continue;
        emap[e] = f;
        flip[e] = fl;
        eused[f] = true;
        if (edges_from(e + 1)) return true;
        eused[f] = false;
        emap[e] = -1;
      }
    }
    return false;
  };

  std::function<bool(int)> vertices_from = [&](int v) -> bool {
    if (v == nv) return edges_from(0);
    for (int w = 0; w < dg.nvertices(); ++w) {
      if (bijective && vused[w]) continue;
      if (pdst.vmap[w] != psrc.vmap[v]) continue;
      vmap[v] = w;
      vused[w] = true;
      if (vertices_from(v + 1)) return true;
      vused[w] = false;
      vmap[v] = -1;
    }
    return false;
  };

  vertices_from(0);
}

}  // namespace detail

// all deck transformations: automorphisms of the covering space commuting
// with the projection
inline std::vector<GraphMap> deck_transformations(const GraphMap& p) {
  std::vector<GraphMap> out;
  detail::lift_search(p, p, true, false, out);
  return out;
}

// a simplicial map between two coverings of the same base commuting with the
// projections, if one exists
inline std::optional<GraphMap> covering_factorization(const GraphMap& p1, const GraphMap& p2) {
  if (!(p1.dst.vertices == p2.dst.vertices && p1.dst.edges == p2.dst.edges))
    throw structural_error("coverings must share the base graph");
  std::vector<GraphMap> out;
  detail::lift_search(p1, p2, false, true, out);
  if (out.empty()) return std::nullopt;
  return out.front();
}

}  // namespace gelfkit
