#pragma once

// Finite meet-semilattices with bottom, filters and ultrafilters.  The order
// convention is inclusion-like throughout: leq(a, b) reads "a below b", the
// meet is the greatest lower bound, the designated zero is the bottom
// element, and filters are nonempty, zero-free, meet-closed, upward-closed
// subsets.  In a finite semilattice every filter is principal (generated by
// the meet of its members), so ultrafilters are exactly the principal filters
// of the minimal nonzero elements; the enumerator still walks descending
// chains explicitly and the tests keep an independent brute-force oracle.

#include "gelfkit/numeric.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace gelfkit {

struct SemiLattice {
  std::vector<std::string> elements;
  std::vector<std::vector<bool>> le;      // le[a][b]: a below b
  std::vector<std::vector<int>> meet_of;  // index of glb
  int zero = -1;

  int size() const { return static_cast<int>(elements.size()); }
  bool leq(int a, int b) const { return le[a][b]; }
  int meet(int a, int b) const { return meet_of[a][b]; }
};

// Build from an explicit relation.  The pairs are closed reflexively and
// transitively; antisymmetry, existence of all binary meets and bottomness of
// zero are validated.
inline SemiLattice make_semilattice(std::vector<std::string> names,
                                    const std::vector<std::pair<int, int>>& leq_pairs, int zero) {
  SemiLattice lat;
  lat.elements = std::move(names);
  int n = lat.size();
  if (n == 0) throw structural_error("empty semilattice");
  if (zero < 0 || zero >= n) throw structural_error("zero index out of range");
  lat.zero = zero;
  lat.le.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) lat.le[i][i] = true;
  for (auto [a, b] : leq_pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw structural_error("leq index out of range");
    lat.le[a][b] = true;
  }
  for (int k = 0; k < n; ++k)  // transitive closure
    for (int i = 0; i < n; ++i)
      if (lat.le[i][k])
        for (int j = 0; j < n; ++j)
          if (lat.le[k][j]) lat.le[i][j] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && lat.le[i][j] && lat.le[j][i])
        throw structural_error("relation is not antisymmetric");
  for (int i = 0; i < n; ++i)
    if (!lat.le[zero][i]) throw structural_error("zero is not a bottom element");

  lat.meet_of.assign(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int glb = -1;
      for (int c = 0; c < n; ++c) {
        if (!lat.le[c][a] || !lat.le[c][b]) continue;
        if (glb < 0 || lat.le[glb][c]) glb = c;
      }
      // glb is the largest lower bound only if it dominates every other one
      for (int c = 0; c < n; ++c)
        if (lat.le[c][a] && lat.le[c][b] && !lat.le[c][glb])
          throw structural_error("meet of " + lat.elements[a] + ", " + lat.elements[b] +
                                 " does not exist");
      lat.meet_of[a][b] = glb;
    }
  return lat;
}

struct FilterRep {
  std::vector<int> members;  // strictly increasing element indices

  bool contains(int e) const {
    return std::binary_search(members.begin(), members.end(), e);
  }
  friend bool operator==(const FilterRep& a, const FilterRep& b) {
    return a.members == b.members;
  }
  friend bool operator<(const FilterRep& a, const FilterRep& b) {
    return a.members < b.members;
  }
};

inline FilterRep upset(const SemiLattice& lat, int e) {
  FilterRep f;
  for (int i = 0; i < lat.size(); ++i)
    if (lat.leq(e, i)) f.members.push_back(i);
  return f;
}

inline bool is_filter(const SemiLattice& lat, const FilterRep& f) {
  if (f.members.empty()) return false;
  for (int e : f.members) {
    if (e < 0 || e >= lat.size()) throw structural_error("filter member out of range");
    if (e == lat.zero) return false;
  }
  for (int a : f.members)
    for (int b : f.members)
      if (!f.contains(lat.meet(a, b))) return false;
  for (int a : f.members)
    for (int c = 0; c < lat.size(); ++c)
      if (lat.leq(a, c) && !f.contains(c)) return false;
  return true;
}

// meet of all members; for a valid filter this is its principal generator
inline int filter_base(const SemiLattice& lat, const FilterRep& f) {
  if (f.members.empty()) throw structural_error("empty filter");
  int b = f.members[0];
  for (int e : f.members) b = lat.meet(b, e);
  return b;
}

inline bool is_principal(const SemiLattice& lat, const FilterRep& f, int* generator = nullptr) {
  if (!is_filter(lat, f)) return false;
  int b = filter_base(lat, f);
  if (generator != nullptr) *generator = b;
  return upset(lat, b) == f;
}

// minimal filter containing the generators; nullopt when the meet degenerates
// to zero and no proper filter exists
inline std::optional<FilterRep> generate_filter(const SemiLattice& lat,
                                                const std::vector<int>& gens) {
  if (gens.empty()) throw structural_error("generate_filter: no generators");
  int b = gens[0];
  for (int g : gens) {
    if (g < 0 || g >= lat.size()) throw structural_error("generator out of range");
    b = lat.meet(b, g);
  }
  if (b == lat.zero) return std::nullopt;
  return upset(lat, b);
}

inline bool is_ultrafilter(const SemiLattice& lat, const FilterRep& f) {
  if (!is_filter(lat, f)) return false;
  int b = filter_base(lat, f);
  // maximal iff no element meets the base strictly below it without hitting zero
  for (int c = 0; c < lat.size(); ++c) {
    int m = lat.meet(b, c);
    if (m != lat.zero && m != b) return false;
  }
  return upset(lat, b) == f;
}

// descending-chain search with memoization; deterministic by element index
inline std::vector<FilterRep> enumerate_ultrafilters(const SemiLattice& lat,
                                                     long cap = 1 << 20) {
  std::vector<bool> seen(lat.size(), false);
  std::vector<int> leaves;
  long explored = 0;
  std::function<void(int)> descend = [&](int b) {
    if (seen[b]) return;
    seen[b] = true;
    if (++explored > cap) throw resource_error("ultrafilter search cap exceeded");
    bool leaf = true;
    for (int c = 0; c < lat.size(); ++c) {
      int m = lat.meet(b, c);
      if (m != lat.zero && m != b) {
        leaf = false;
        descend(m);
      }
    }
    if (leaf) leaves.push_back(b);
  };
  for (int e = 0; e < lat.size(); ++e)
    if (e != lat.zero) descend(e);
  std::sort(leaves.begin(), leaves.end());
  std::vector<FilterRep> out;
  out.reserve(leaves.size());
  for (int b : leaves) out.push_back(upset(lat, b));
  return out;
}

// lexicographically least maximal extension: repeatedly meet the base with
// the least-index element that strictly refines it
inline FilterRep extend_to_ultrafilter(const SemiLattice& lat, const FilterRep& f) {
  if (!is_filter(lat, f)) throw value_domain_error("extend_to_ultrafilter: not a filter");
  int b = filter_base(lat, f);
  bool progress = true;
  while (progress) {
    progress = false;
    for (int c = 0; c < lat.size(); ++c) {
      int m = lat.meet(b, c);
      if (m != lat.zero && m != b) {
        b = m;
        progress = true;
        break;
      }
    }
  }
  return upset(lat, b);
}

struct LatticeHom {
  SemiLattice src;
  SemiLattice dst;
  std::vector<int> map;
};

// validated: monotone and meet-preserving
inline LatticeHom make_lattice_hom(SemiLattice src, SemiLattice dst, std::vector<int> map) {
  if (static_cast<int>(map.size()) != src.size()) throw structural_error("hom map size mismatch");
  for (int v : map)
    if (v < 0 || v >= dst.size()) throw structural_error("hom image out of range");
  for (int a = 0; a < src.size(); ++a)
    for (int b = 0; b < src.size(); ++b) {
      if (src.leq(a, b) && !dst.leq(map[a], map[b]))
        throw structural_error("lattice hom is not monotone");
      if (map[src.meet(a, b)] != dst.meet(map[a], map[b]))
        throw structural_error("lattice hom does not preserve meets");
    }
  LatticeHom h;
  h.src = std::move(src);
  h.dst = std::move(dst);
  h.map = std::move(map);
  return h;
}

// minimal filter containing the image; Degenerate (nullopt) when the image
// meets down to zero
inline std::optional<FilterRep> pushforward_filter(const LatticeHom& h, const FilterRep& f) {
  if (!is_filter(h.src, f)) throw value_domain_error("pushforward of a non-filter");
  std::vector<int> images;
  images.reserve(f.members.size());
  for (int e : f.members) images.push_back(h.map[e]);
  return generate_filter(h.dst, images);
}

inline std::vector<int> lattice_atoms(const SemiLattice& lat) {
  std::vector<int> atoms;
  for (int e = 0; e < lat.size(); ++e) {
    if (e == lat.zero) continue;
    bool atom = true;
    for (int c = 0; c < lat.size() && atom; ++c) {
      int m = lat.meet(e, c);
      if (m != lat.zero && m != e) atom = false;
    }
    if (atom) atoms.push_back(e);
  }
  return atoms;
}

}  // namespace gelfkit
