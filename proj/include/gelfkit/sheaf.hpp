#pragma once

// Presheaves of finitely generated abelian groups on finite spaces.  On an
// Alexandrov space the stalk at x is F(U_x) for U_x the minimal open
// neighbourhood, so sheafification, images and the etale space all reduce to
// finite kernel computations over products of stalks.

#include "gelfkit/abelian.hpp"
#include "gelfkit/space.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace gelfkit {

struct FinitePresheaf {
  FiniteSpace space;
  std::vector<AbGroup> sections;                        // indexed by open index
  std::map<std::pair<int, int>, AbHom> restrictions;    // key (U, V) with V strictly inside U

  const AbGroup& at(int u) const { return sections.at(u); }

  AbHom res(int u, int v) const {
    if (u == v) return ab_identity(sections.at(u));
    auto it = restrictions.find({u, v});
    if (it == restrictions.end()) throw structural_error("missing restriction map");
    return it->second;
  }

  // open index of the minimal neighbourhood of point p
  int stalk_open(int p) const { return space.open_index(space.min_open(p)); }
};

inline FinitePresheaf make_presheaf(FiniteSpace space, std::vector<AbGroup> sections,
                                    std::map<std::pair<int, int>, AbHom> restrictions) {
  FinitePresheaf f;
  f.space = std::move(space);
  if (static_cast<int>(sections.size()) != f.space.nopens())
    throw structural_error("one section group per open set required");
  f.sections = std::move(sections);
  if (!f.sections[0].is_trivial())
    throw structural_error("sections over the empty set must form the trivial group");
  f.restrictions = std::move(restrictions);
  for (const auto& [key, hom] : f.restrictions) {
    auto [u, v] = key;
    if (u < 0 || u >= f.space.nopens() || v < 0 || v >= f.space.nopens())
      throw structural_error("restriction key out of range");
    if (u == v) throw structural_error("identity restrictions are implicit");
    if (f.space.opens[v] & ~f.space.opens[u])
      throw structural_error("restriction key is not a nested pair");
    if (hom.src != f.sections[u] || hom.dst != f.sections[v])
      throw structural_error("restriction endpoints do not match section groups");
  }
  for (int u = 0; u < f.space.nopens(); ++u)
    for (int v = 0; v < f.space.nopens(); ++v) {
      if (u == v || (f.space.opens[v] & ~f.space.opens[u])) continue;
      if (!f.restrictions.count({u, v})) throw structural_error("missing restriction map");
    }
  for (int u = 0; u < f.space.nopens(); ++u)
    for (int v = 0; v < f.space.nopens(); ++v) {
      if (v == u || (f.space.opens[v] & ~f.space.opens[u])) continue;
      for (int w = 0; w < f.space.nopens(); ++w) {
        if (w == v || (f.space.opens[w] & ~f.space.opens[v])) continue;
        if (!hom_equal(f.res(u, w), compose(f.res(v, w), f.res(u, v))))
          throw structural_error("restrictions are not transitive");
      }
    }
  return f;
}

// constant presheaf: g over every nonempty open, identity restrictions
inline FinitePresheaf constant_presheaf(const FiniteSpace& space, const AbGroup& g) {
  std::vector<AbGroup> sections(space.nopens(), g);
  sections[0] = AbGroup::trivial();
  std::map<std::pair<int, int>, AbHom> res;
  for (int u = 0; u < space.nopens(); ++u)
    for (int v = 0; v < space.nopens(); ++v) {
      if (u == v || (space.opens[v] & ~space.opens[u])) continue;
      res[{u, v}] = v == 0 ? ab_zero(sections[u], sections[0]) : ab_identity(g);
    }
  return make_presheaf(space, std::move(sections), std::move(res));
}

struct PresheafMorphism {
  std::vector<AbHom> comp;  // indexed by open index
};

inline PresheafMorphism make_presheaf_morphism(const FinitePresheaf& f, const FinitePresheaf& g,
                                               std::vector<AbHom> comp) {
  if (!(f.space.points == g.space.points && f.space.opens == g.space.opens))
    throw structural_error("presheaf morphism needs a common base space");
  if (static_cast<int>(comp.size()) != f.space.nopens())
    throw structural_error("one component per open set required");
  for (int u = 0; u < f.space.nopens(); ++u)
    if (comp[u].src != f.sections[u] || comp[u].dst != g.sections[u])
      throw structural_error("morphism component endpoints mismatch");
  for (int u = 0; u < f.space.nopens(); ++u)
    for (int v = 0; v < f.space.nopens(); ++v) {
      if (u == v || (f.space.opens[v] & ~f.space.opens[u])) continue;
      if (!hom_equal(compose(comp[v], f.res(u, v)), compose(g.res(u, v), comp[u])))
        throw structural_error("morphism does not commute with restrictions");
    }
  return PresheafMorphism{std::move(comp)};
}

namespace detail {

// direct product of section groups with generator offsets
struct GroupProduct {
  AbGroup group;
  std::vector<int> offset;  // per factor, plus one past the end
};

inline GroupProduct product_of(const std::vector<AbGroup>& factors) {
  GroupProduct p;
  p.offset.push_back(0);
  std::vector<Int> ord;
  for (const auto& g : factors) {
    ord.insert(ord.end(), g.orders.begin(), g.orders.end());
    p.offset.push_back(static_cast<int>(ord.size()));
  }
  p.group = AbGroup(std::move(ord));
  return p;
}

inline void place_block(IntMat& m, int r0, int c0, const IntMat& b, int sign) {
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) m.at(r0 + i, c0 + j) += sign * b.at(i, j);
}

}  // namespace detail

struct CoverWitness {
  int open = -1;              // open index in the base space
  std::vector<Mask> cover;
  std::string detail;
};

struct SheafVerdict {
  bool separated = true;
  bool gluing = true;
  std::optional<CoverWitness> separation_witness;
  std::optional<CoverWitness> gluing_witness;

  bool is_sheaf() const { return separated && gluing; }
  std::string verdict() const {
    if (separated && gluing) return "sheaf";
    if (separated) return "separated";
    if (gluing) return "conjunctive";
    return "neither";
  }
};

// separation and gluing over every cover of every open by strictly smaller
// opens; covers containing the open itself hold trivially and are skipped
inline SheafVerdict check_sheaf(const FinitePresheaf& f, std::size_t cover_cap = 1u << 14) {
  SheafVerdict out;
  const FiniteSpace& x = f.space;
  for (int ui = 0; ui < x.nopens(); ++ui) {
    Mask u = x.opens[ui];
    if (u == 0) continue;
    std::vector<int> parts;
    for (int vi = 0; vi < x.nopens(); ++vi)
      if (x.opens[vi] != 0 && x.opens[vi] != u && !(x.opens[vi] & ~u)) parts.push_back(vi);
    int k = static_cast<int>(parts.size());
    if (k > 0 && (static_cast<std::size_t>(1) << k) > cover_cap)
      throw resource_error("too many candidate covers of " + x.mask_name(u));
    for (std::uint64_t sel = 1; k > 0 && sel < (std::uint64_t{1} << k); ++sel) {
      Mask un = 0;
      std::vector<int> cov;
      for (int i = 0; i < k; ++i)
        if (sel & (std::uint64_t{1} << i)) {
          cov.push_back(parts[i]);
          un |= x.opens[parts[i]];
        }
      if (un != u) continue;

      std::vector<AbGroup> piece;
      for (int vi : cov) piece.push_back(f.at(vi));
      detail::GroupProduct prod = detail::product_of(piece);
      IntMat tm(prod.group.ngens(), f.at(ui).ngens());
      for (std::size_t i = 0; i < cov.size(); ++i)
        detail::place_block(tm, prod.offset[i], 0, f.res(ui, cov[i]).m, 1);
      AbHom theta = ab_hom(f.at(ui), prod.group, std::move(tm));

      std::vector<AbGroup> over;
      std::vector<std::pair<std::size_t, std::size_t>> pair_idx;
      std::vector<int> pair_open;
      for (std::size_t i = 0; i < cov.size(); ++i)
        for (std::size_t j = i + 1; j < cov.size(); ++j) {
          int wi = x.open_index(x.opens[cov[i]] & x.opens[cov[j]]);
          over.push_back(f.at(wi));
          pair_idx.push_back({i, j});
          pair_open.push_back(wi);
        }
      detail::GroupProduct oprod = detail::product_of(over);
      IntMat dm(oprod.group.ngens(), prod.group.ngens());
      for (std::size_t t = 0; t < pair_idx.size(); ++t) {
        auto [i, j] = pair_idx[t];
        detail::place_block(dm, oprod.offset[t], prod.offset[i], f.res(cov[i], pair_open[t]).m, 1);
        detail::place_block(dm, oprod.offset[t], prod.offset[j], f.res(cov[j], pair_open[t]).m, -1);
      }
      AbHom diff = ab_hom(prod.group, oprod.group, std::move(dm));

      if (out.separated && !is_injective(theta)) {
        out.separated = false;
        std::vector<Mask> cm;
        for (int vi : cov) cm.push_back(x.opens[vi]);
        out.separation_witness =
            CoverWitness{ui, cm, "distinct sections agree on every cover member"};
      }
      if (out.gluing) {
        SubgroupResult compat = kernel_of(diff);
        for (int j = 0; j < compat.group.ngens() && out.gluing; ++j) {
          std::vector<Int> fam(prod.group.ngens());
          for (int i = 0; i < prod.group.ngens(); ++i) fam[i] = compat.inclusion.m.at(i, j);
          if (!element_in_image(theta, prod.group.normalize(fam))) {
            out.gluing = false;
            std::vector<Mask> cm;
            for (int vi : cov) cm.push_back(x.opens[vi]);
            out.gluing_witness =
                CoverWitness{ui, cm, "compatible family with no global section"};
          }
        }
      }
      if (!out.separated && !out.gluing) return out;
    }
  }
  return out;
}

struct Stalk {
  int point;
  int open;       // index of the minimal open neighbourhood
  AbGroup group;  // F evaluated there
};

inline Stalk stalk(const FinitePresheaf& f, int p) {
  if (p < 0 || p >= f.space.npoints()) throw structural_error("stalk point out of range");
  int u = f.stalk_open(p);
  return Stalk{p, u, f.at(u)};
}

// canonical map F(U) -> stalk at p, for p in U
inline AbHom germ_map(const FinitePresheaf& f, int u, int p) {
  if (!(f.space.opens[u] & (Mask{1} << p)))
    throw structural_error("point is not in the given open");
  return f.res(u, f.stalk_open(p));
}

struct Sheafification {
  FinitePresheaf plus;
  std::vector<AbHom> theta;                      // per open: F(U) -> F+(U)
  std::vector<std::vector<int>> family_points;   // per open: points carrying the germ family
  std::vector<SubgroupResult> families;          // per open: compatible families in the stalk product
  std::vector<detail::GroupProduct> products;    // per open: that stalk product
};

// compatible germ families; over a finite space "locally induced by sections"
// is exactly the compatibility equations on minimal opens
inline Sheafification sheafify(const FinitePresheaf& f) {
  const FiniteSpace& x = f.space;
  Sheafification sf;
  sf.theta.resize(x.nopens());
  sf.family_points.resize(x.nopens());
  sf.families.resize(x.nopens());
  sf.products.resize(x.nopens());
  std::vector<AbGroup> plus_sections(x.nopens());

  for (int ui = 0; ui < x.nopens(); ++ui) {
    Mask u = x.opens[ui];
    sf.family_points[ui] = mask_points(u, x.npoints());
    const auto& pts = sf.family_points[ui];
    std::vector<AbGroup> stalks;
    for (int p : pts) stalks.push_back(f.at(f.stalk_open(p)));
    sf.products[ui] = detail::product_of(stalks);
    const detail::GroupProduct& prod = sf.products[ui];

    std::vector<AbGroup> over;
    std::vector<std::tuple<std::size_t, std::size_t, int, int>> eqs;  // (i, j, from, to)
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (i == j) continue;
        if (!(x.min_open(pts[i]) & (Mask{1} << pts[j]))) continue;
        over.push_back(f.at(f.stalk_open(pts[j])));
        eqs.push_back({i, j, f.stalk_open(pts[i]), f.stalk_open(pts[j])});
      }
    detail::GroupProduct oprod = detail::product_of(over);
    IntMat dm(oprod.group.ngens(), prod.group.ngens());
    for (std::size_t t = 0; t < eqs.size(); ++t) {
      auto [i, j, from, to] = eqs[t];
      detail::place_block(dm, oprod.offset[t], prod.offset[i], f.res(from, to).m, 1);
      detail::place_block(dm, oprod.offset[t], prod.offset[j],
                          IntMat::identity(f.at(to).ngens()), -1);
    }
    sf.families[ui] = kernel_of(ab_hom(prod.group, oprod.group, std::move(dm)));
    plus_sections[ui] = sf.families[ui].group;

    IntMat tm(plus_sections[ui].ngens(), f.at(ui).ngens());
    for (int j = 0; j < f.at(ui).ngens(); ++j) {
      std::vector<Int> fam(prod.group.ngens());
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const IntMat& rm = f.res(ui, f.stalk_open(pts[i])).m;
        for (int r = 0; r < rm.rows; ++r) fam[prod.offset[i] + r] = rm.at(r, j);
      }
      auto coords = sf.families[ui].data.express(prod.group.normalize(fam));
      for (int r = 0; r < plus_sections[ui].ngens(); ++r) tm.at(r, j) = coords[r];
    }
    sf.theta[ui] = ab_hom(f.at(ui), plus_sections[ui], std::move(tm));
  }

  std::map<std::pair<int, int>, AbHom> plus_res;
  for (int ui = 0; ui < x.nopens(); ++ui)
    for (int vi = 0; vi < x.nopens(); ++vi) {
      if (ui == vi || (x.opens[vi] & ~x.opens[ui])) continue;
      const auto& upts = sf.family_points[ui];
      const auto& vpts = sf.family_points[vi];
      IntMat rm(plus_sections[vi].ngens(), plus_sections[ui].ngens());
      for (int j = 0; j < plus_sections[ui].ngens(); ++j) {
        std::vector<Int> fam(sf.products[vi].group.ngens());
        for (std::size_t i = 0; i < vpts.size(); ++i) {
          auto it = std::find(upts.begin(), upts.end(), vpts[i]);
          int src_blk = static_cast<int>(it - upts.begin());
          int len = sf.products[vi].offset[i + 1] - sf.products[vi].offset[i];
          for (int r = 0; r < len; ++r)
            fam[sf.products[vi].offset[i] + r] =
                sf.families[ui].inclusion.m.at(sf.products[ui].offset[src_blk] + r, j);
        }
        auto coords = sf.families[vi].data.express(sf.products[vi].group.normalize(fam));
        for (int r = 0; r < plus_sections[vi].ngens(); ++r) rm.at(r, j) = coords[r];
      }
      plus_res[{ui, vi}] = ab_hom(plus_sections[ui], plus_sections[vi], std::move(rm));
    }

  sf.plus = make_presheaf(x, std::move(plus_sections), std::move(plus_res));
  return sf;
}

// factor phi: F -> G through theta when G is a sheaf; the returned psi
// satisfies psi . theta = phi and is unique because G is separated
inline PresheafMorphism factor_through_sheafification(const Sheafification& sf,
                                                      const FinitePresheaf& f,
                                                      const FinitePresheaf& g,
                                                      const PresheafMorphism& phi) {
  const FiniteSpace& x = f.space;
  std::vector<AbHom> psi(x.nopens());
  for (int ui = 0; ui < x.nopens(); ++ui) {
    const auto& pts = sf.family_points[ui];
    std::vector<AbGroup> gstalks;
    for (int p : pts) gstalks.push_back(g.at(g.stalk_open(p)));
    detail::GroupProduct gprod = detail::product_of(gstalks);
    IntMat gm(gprod.group.ngens(), g.at(ui).ngens());
    for (std::size_t i = 0; i < pts.size(); ++i)
      detail::place_block(gm, gprod.offset[i], 0, g.res(ui, g.stalk_open(pts[i])).m, 1);
    AbHom gtheta = ab_hom(g.at(ui), gprod.group, std::move(gm));

    const AbGroup& plus_u = sf.plus.at(ui);
    IntMat pm(g.at(ui).ngens(), plus_u.ngens());
    for (int j = 0; j < plus_u.ngens(); ++j) {
      std::vector<Int> target(gprod.group.ngens());
      for (std::size_t i = 0; i < pts.size(); ++i) {
        int so = f.stalk_open(pts[i]);
        std::vector<Int> t(f.at(so).ngens());
        for (int r = 0; r < f.at(so).ngens(); ++r)
          t[r] = sf.families[ui].inclusion.m.at(sf.products[ui].offset[i] + r, j);
        auto img = gelfkit::apply(phi.comp[so], t);
        for (int r = 0; r < g.at(so).ngens(); ++r) target[gprod.offset[i] + r] = img[r];
      }
      auto pre = preimage_of(gtheta, gprod.group.normalize(target));
      if (!pre) throw value_domain_error("factorization target is not a sheaf");
      for (int r = 0; r < g.at(ui).ngens(); ++r) pm.at(r, j) = (*pre)[r];
    }
    psi[ui] = ab_hom(plus_u, g.at(ui), std::move(pm));
  }
  PresheafMorphism out = make_presheaf_morphism(sf.plus, g, std::move(psi));
  for (int ui = 0; ui < x.nopens(); ++ui)
    if (!hom_equal(compose(out.comp[ui], sf.theta[ui]), phi.comp[ui]))
      throw value_domain_error("factorization does not recover the original morphism");
  return out;
}

// (f_* F)(V) = F(f^{-1} V)
inline FinitePresheaf direct_image(const ContinuousMap& f, const FinitePresheaf& F) {
  if (!(F.space.points == f.src.points && F.space.opens == f.src.opens))
    throw structural_error("presheaf does not live on the map source");
  const FiniteSpace& y = f.dst;
  std::vector<int> pre(y.nopens());
  for (int vi = 0; vi < y.nopens(); ++vi) {
    pre[vi] = f.src.open_index(f.preimage(y.opens[vi]));
    if (pre[vi] < 0) throw structural_error("map is not continuous");
  }
  std::vector<AbGroup> sections(y.nopens());
  for (int vi = 0; vi < y.nopens(); ++vi) sections[vi] = F.at(pre[vi]);
  std::map<std::pair<int, int>, AbHom> res;
  for (int vi = 0; vi < y.nopens(); ++vi)
    for (int wi = 0; wi < y.nopens(); ++wi) {
      if (vi == wi || (y.opens[wi] & ~y.opens[vi])) continue;
      res[{vi, wi}] = F.res(pre[vi], pre[wi]);
    }
  return make_presheaf(y, std::move(sections), std::move(res));
}

// f^{-1} G: the colimit over opens containing f(U) is G at the minimal such
// open, then sheafify
inline Sheafification inverse_image(const ContinuousMap& f, const FinitePresheaf& G) {
  if (!(G.space.points == f.dst.points && G.space.opens == f.dst.opens))
    throw structural_error("presheaf does not live on the map target");
  const FiniteSpace& x = f.src;
  std::vector<int> vmin(x.nopens());
  for (int ui = 0; ui < x.nopens(); ++ui) {
    Mask img = f.image(x.opens[ui]);
    Mask acc = f.dst.full_mask();
    for (Mask v : f.dst.opens)
      if (!(img & ~v)) acc &= v;
    vmin[ui] = f.dst.open_index(acc);
    if (vmin[ui] < 0) throw structural_error("opens not closed under intersection");
  }
  std::vector<AbGroup> sections(x.nopens());
  for (int ui = 0; ui < x.nopens(); ++ui) sections[ui] = G.at(vmin[ui]);
  std::map<std::pair<int, int>, AbHom> res;
  for (int ui = 0; ui < x.nopens(); ++ui)
    for (int wi = 0; wi < x.nopens(); ++wi) {
      if (ui == wi || (x.opens[wi] & ~x.opens[ui])) continue;
      res[{ui, wi}] = G.res(vmin[ui], vmin[wi]);
    }
  return sheafify(make_presheaf(x, std::move(sections), std::move(res)));
}

// points of U where the germ of s is nonzero; the result is closed inside U
// and that is re-verified against the topology
inline Mask section_support(const FinitePresheaf& f, int u, const std::vector<Int>& s) {
  Mask supp = 0;
  Mask um = f.space.opens[u];
  for (int p = 0; p < f.space.npoints(); ++p) {
    if (!(um & (Mask{1} << p))) continue;
    auto germ = gelfkit::apply(f.res(u, f.stalk_open(p)), s);
    if (!f.at(f.stalk_open(p)).is_zero_element(germ)) supp |= Mask{1} << p;
  }
  Mask zero_set = um & ~supp;
  for (int p = 0; p < f.space.npoints(); ++p)
    if (zero_set & (Mask{1} << p))
      if ((f.space.min_open(p) & um) & ~zero_set)
        throw value_domain_error("support is not closed in its open");
  return supp;
}

inline bool is_flasque(const FinitePresheaf& f) {
  for (const auto& [key, hom] : f.restrictions)
    if (!is_surjective(hom)) return false;
  return true;
}

struct EtaleSpace {
  FiniteSpace total;
  ContinuousMap projection;
  std::vector<int> base_point;           // per total point
  std::vector<std::vector<Int>> germ;    // per total point, stalk coordinates
};

// total set = disjoint union of stalk elements, topology = finest making
// every germ map of a section continuous.  Free stalk coordinates are
// truncated to [-window, window]; sections whose germs leave the window are
// dropped from the generating family.
inline EtaleSpace etale_space(const FinitePresheaf& f, long window = -1) {
  const FiniteSpace& x = f.space;
  EtaleSpace es;
  std::map<std::pair<int, std::vector<Int>>, int> index;
  std::vector<std::string> names;
  for (int p = 0; p < x.npoints(); ++p) {
    const AbGroup& s = f.at(f.stalk_open(p));
    if (s.rank() > 0 && window < 0)
      throw resource_error("infinite stalk requires a truncation window");
    for (auto& e : enumerate_elements(s, window)) {
      std::string nm = x.points[p] + "|";
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) nm += ",";
        nm += e[i].str();
      }
      index[{p, e}] = static_cast<int>(names.size());
      names.push_back(std::move(nm));
      es.base_point.push_back(p);
      es.germ.push_back(std::move(e));
    }
  }
  if (names.size() > 20) throw resource_error("etale space too large to enumerate");

  // generating maps run over the image of the stacked germ map, so opens with
  // infinite section groups but finite stalks still contribute every family
  std::vector<FiniteSpace> sources;
  std::vector<std::vector<int>> maps;
  for (int ui = 1; ui < x.nopens(); ++ui) {
    Mask u = x.opens[ui];
    if (u == 0) continue;
    auto pts = mask_points(u, x.npoints());
    FiniteSpace sub = open_subspace(x, u);
    std::vector<AbGroup> stalks;
    for (int p : pts) stalks.push_back(f.at(f.stalk_open(p)));
    detail::GroupProduct prod = detail::product_of(stalks);
    IntMat tm(prod.group.ngens(), f.at(ui).ngens());
    for (std::size_t i = 0; i < pts.size(); ++i)
      detail::place_block(tm, prod.offset[i], 0, f.res(ui, f.stalk_open(pts[i])).m, 1);
    SubgroupResult im = image_of(ab_hom(f.at(ui), prod.group, std::move(tm)));
    for (auto& c : enumerate_elements(im.group, window)) {
      auto fam = gelfkit::apply(im.inclusion, c);
      std::vector<int> m;
      bool inside = true;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<Int> g(fam.begin() + prod.offset[i], fam.begin() + prod.offset[i + 1]);
        auto it = index.find({pts[i], g});
        if (it == index.end()) {
          inside = false;
          break;
        }
        m.push_back(it->second);
      }
      if (!inside) continue;
      sources.push_back(sub);
      maps.push_back(std::move(m));
    }
  }
  es.total = final_topology(std::move(names), sources, maps);
  es.projection = make_continuous_map(es.total, x, es.base_point);
  return es;
}

}  // namespace gelfkit
