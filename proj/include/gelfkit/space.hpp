#pragma once

// Finite topological spaces on at most 64 points.  Opens are stored as
// bitmasks in ascending numeric order, which fixes a canonical indexing used
// everywhere (open lattices, sheaf section tables, serialized output).

#include "gelfkit/order.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace gelfkit {

using Mask = std::uint64_t;

struct FiniteSpace {
  std::vector<std::string> points;
  std::vector<Mask> opens;  // strictly increasing, contains 0 and full

  int npoints() const { return static_cast<int>(points.size()); }
  int nopens() const { return static_cast<int>(opens.size()); }
  Mask full_mask() const {
    return npoints() == 64 ? ~Mask{0} : (Mask{1} << npoints()) - 1;
  }
  int open_index(Mask m) const {
    auto it = std::lower_bound(opens.begin(), opens.end(), m);
    if (it == opens.end() || *it != m) return -1;
    return static_cast<int>(it - opens.begin());
  }
  bool is_open(Mask m) const { return open_index(m) >= 0; }

  // minimal open neighbourhood; total by finiteness
  Mask min_open(int p) const {
    Mask acc = full_mask();
    for (Mask u : opens)
      if (u & (Mask{1} << p)) acc &= u;
    return acc;
  }
  bool is_discrete() const { return nopens() == (npoints() >= 63 ? -1 : (1 << npoints())); }

  std::string mask_name(Mask m) const {
    std::string s = "{";
    bool first = true;
    for (int p = 0; p < npoints(); ++p)
      if (m & (Mask{1} << p)) {
        if (!first) s += ",";
        s += points[p];
        first = false;
      }
    return s + "}";
  }
};

inline std::vector<int> mask_points(Mask m, int n) {
  std::vector<int> out;
  for (int p = 0; p < n; ++p)
    if (m & (Mask{1} << p)) out.push_back(p);
  return out;
}

inline FiniteSpace make_space(std::vector<std::string> points, std::vector<Mask> opens) {
  FiniteSpace x;
  if (points.size() > 64) throw resource_error("spaces are limited to 64 points");
  if (points.empty()) throw structural_error("space needs at least one point");
  {
    auto sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw structural_error("duplicate point names");
  }
  x.points = std::move(points);
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  x.opens = std::move(opens);
  Mask full = x.full_mask();
  for (Mask u : x.opens)
    if (u & ~full) throw structural_error("open set mentions a point outside the space");
  if (!x.is_open(0) || !x.is_open(full))
    throw structural_error("topology must contain the empty set and the whole space");
  for (Mask u : x.opens)
    for (Mask v : x.opens) {
      if (!x.is_open(u | v)) throw structural_error("opens not closed under union");
      if (!x.is_open(u & v)) throw structural_error("opens not closed under intersection");
    }
  return x;
}

inline FiniteSpace discrete_space(std::vector<std::string> points) {
  if (points.size() > 20) throw resource_error("discrete space too large to enumerate");
  int n = static_cast<int>(points.size());
  std::vector<Mask> opens;
  for (Mask m = 0; m < (Mask{1} << n); ++m) opens.push_back(m);
  return make_space(std::move(points), std::move(opens));
}

inline FiniteSpace indiscrete_space(std::vector<std::string> points) {
  int n = static_cast<int>(points.size());
  Mask full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  return make_space(std::move(points), {0, full});
}

// an open set as a space in its own right; point p of the result is
// mask_points(u)[p] in the parent
inline FiniteSpace open_subspace(const FiniteSpace& x, Mask u) {
  if (!x.is_open(u)) throw structural_error("subspace mask is not open");
  if (u == 0) throw structural_error("empty subspace");
  auto pts = mask_points(u, x.npoints());
  std::vector<std::string> names;
  for (int p : pts) names.push_back(x.points[p]);
  std::vector<Mask> opens;
  for (Mask v : x.opens) {
    if (v & ~u) continue;
    Mask m = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (v & (Mask{1} << pts[i])) m |= Mask{1} << i;
    opens.push_back(m);
  }
  return make_space(std::move(names), std::move(opens));
}

// smallest topology containing the given sets
inline FiniteSpace generate_space(std::vector<std::string> points, std::vector<Mask> subbasis) {
  int n = static_cast<int>(points.size());
  Mask full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  std::vector<Mask> opens = {0, full};
  opens.insert(opens.end(), subbasis.begin(), subbasis.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    size_t k = opens.size();
    for (size_t i = 0; i < k; ++i)
      for (size_t j = i + 1; j < k; ++j)
        for (Mask c : {opens[i] | opens[j], opens[i] & opens[j]})
          if (!std::binary_search(opens.begin(), opens.begin() + k, c)) {
            opens.push_back(c);
            grew = true;
          }
  }
  return make_space(std::move(points), std::move(opens));
}

inline SemiLattice open_lattice(const FiniteSpace& x) {
  std::vector<std::string> names;
  names.reserve(x.nopens());
  for (Mask u : x.opens) names.push_back(x.mask_name(u));
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < x.nopens(); ++i)
    for (int j = 0; j < x.nopens(); ++j)
      if ((x.opens[i] & x.opens[j]) == x.opens[i]) pairs.emplace_back(i, j);
  return make_semilattice(std::move(names), pairs, x.open_index(0));
}

struct ContinuousMap {
  FiniteSpace src;
  FiniteSpace dst;
  std::vector<int> map;

  Mask preimage(Mask v) const {
    Mask out = 0;
    for (int p = 0; p < src.npoints(); ++p)
      if (v & (Mask{1} << map[p])) out |= Mask{1} << p;
    return out;
  }
  Mask image(Mask u) const {
    Mask out = 0;
    for (int p = 0; p < src.npoints(); ++p)
      if (u & (Mask{1} << p)) out |= Mask{1} << map[p];
    return out;
  }
};

inline ContinuousMap make_continuous_map(FiniteSpace src, FiniteSpace dst,
                                         std::vector<int> map) {
  if (static_cast<int>(map.size()) != src.npoints())
    throw structural_error("map size does not match source");
  for (int v : map)
    if (v < 0 || v >= dst.npoints()) throw structural_error("map image out of range");
  ContinuousMap f{std::move(src), std::move(dst), std::move(map)};
  for (Mask v : f.dst.opens)
    if (!f.src.is_open(f.preimage(v)))
      throw structural_error("map is not continuous: preimage of " + f.dst.mask_name(v) +
                             " is not open");
  return f;
}

// coarsest topology on the given points making every map continuous
inline FiniteSpace initial_topology(std::vector<std::string> points,
                                    const std::vector<FiniteSpace>& targets,
                                    const std::vector<std::vector<int>>& maps) {
  if (targets.size() != maps.size()) throw structural_error("targets/maps size mismatch");
  int n = static_cast<int>(points.size());
  std::vector<Mask> subbasis;
  for (size_t k = 0; k < maps.size(); ++k) {
    if (static_cast<int>(maps[k].size()) != n) throw structural_error("map size mismatch");
    for (Mask v : targets[k].opens) {
      Mask pre = 0;
      for (int p = 0; p < n; ++p) {
        int q = maps[k][p];
        if (q < 0 || q >= targets[k].npoints()) throw structural_error("map image out of range");
        if (v & (Mask{1} << q)) pre |= Mask{1} << p;
      }
      subbasis.push_back(pre);
    }
  }
  return generate_space(std::move(points), std::move(subbasis));
}

// finest topology on the given points making every map continuous
inline FiniteSpace final_topology(std::vector<std::string> points,
                                  const std::vector<FiniteSpace>& sources,
                                  const std::vector<std::vector<int>>& maps) {
  if (sources.size() != maps.size()) throw structural_error("sources/maps size mismatch");
  int n = static_cast<int>(points.size());
  if (n > 20) throw resource_error("final topology enumeration limited to 20 points");
  std::vector<Mask> opens;
  for (Mask u = 0; u < (Mask{1} << n); ++u) {
    bool good = true;
    for (size_t k = 0; k < maps.size() && good; ++k) {
      Mask pre = 0;
      for (int p = 0; p < sources[k].npoints(); ++p)
        if (u & (Mask{1} << maps[k][p])) pre |= Mask{1} << p;
      good = sources[k].is_open(pre);
    }
    if (good) opens.push_back(u);
  }
  return make_space(std::move(points), std::move(opens));
}

// limit points of an ultrafilter on the open lattice: p is a limit iff every
// open neighbourhood of p belongs to the filter
inline std::vector<int> ultrafilter_limits(const FiniteSpace& x, const SemiLattice& lat,
                                           const FilterRep& f) {
  if (lat.size() != x.nopens()) throw structural_error("lattice does not match space");
  std::vector<int> limits;
  for (int p = 0; p < x.npoints(); ++p) {
    bool ok = true;
    for (int i = 0; i < x.nopens() && ok; ++i)
      if ((x.opens[i] & (Mask{1} << p)) && !f.contains(i)) ok = false;
    if (ok) limits.push_back(p);
  }
  return limits;
}

inline LatticeHom preimage_hom(const ContinuousMap& f) {
  SemiLattice src = open_lattice(f.dst);
  SemiLattice dst = open_lattice(f.src);
  std::vector<int> map;
  map.reserve(f.dst.nopens());
  for (Mask v : f.dst.opens) map.push_back(f.src.open_index(f.preimage(v)));
  return make_lattice_hom(std::move(src), std::move(dst), std::move(map));
}

}  // namespace gelfkit
