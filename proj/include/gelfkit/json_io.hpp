#pragma once

// JSON schemas for the persisted value types.  Parsing validates through the
// library constructors, so a document that parses is a valid object; errors
// carry the path of the offending field.  Emission uses nlohmann's sorted
// object keys and string-encoded rationals, which keeps reports byte-stable.

#include "gelfkit/abelian.hpp"
#include "gelfkit/algebra.hpp"
#include "gelfkit/automorphism.hpp"
#include "gelfkit/blowup.hpp"
#include "gelfkit/cech.hpp"
#include "gelfkit/covering.hpp"
#include "gelfkit/gelfand.hpp"
#include "gelfkit/numeric.hpp"
#include "gelfkit/order.hpp"
#include "gelfkit/sheaf.hpp"
#include "gelfkit/space.hpp"

#include "json.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gelfkit::io {

using Json = nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw structural_error(path + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "/" + key, "missing field");
  return *it;
}

inline bool has_field(const Json& j, const char* key) {
  return j.is_object() && j.find(key) != j.end();
}

inline long long int_at(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

inline std::string str_at(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

inline const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

// arbitrary-precision integers travel as strings; small literals may be bare
inline Int bigint_at(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (...) {
      fail(path, "expected an integer");
    }
  }
  fail(path, "expected an integer");
}

inline std::string item(const std::string& path, std::size_t i) {
  return path + "/" + std::to_string(i);
}

// ---------------------------------------------------------------------------
// order-core: {"elements":[names], "leq":[[i,j],...], "zero": i}

inline SemiLattice parse_semilattice(const Json& j, const std::string& path = "$") {
  std::vector<std::string> names;
  const Json& el = array_at(field(j, "elements", path), path + "/elements");
  for (std::size_t i = 0; i < el.size(); ++i)
    names.push_back(str_at(el[i], item(path + "/elements", i)));
  std::vector<std::pair<int, int>> pairs;
  const Json& lq = array_at(field(j, "leq", path), path + "/leq");
  for (std::size_t i = 0; i < lq.size(); ++i) {
    const std::string p = item(path + "/leq", i);
    const Json& pr = array_at(lq[i], p);
    if (pr.size() != 2) fail(p, "expected a pair [i,j]");
    pairs.push_back({static_cast<int>(int_at(pr[0], p + "/0")),
                     static_cast<int>(int_at(pr[1], p + "/1"))});
  }
  int zero = static_cast<int>(int_at(field(j, "zero", path), path + "/zero"));
  return make_semilattice(std::move(names), pairs, zero);
}

inline Json semilattice_json(const SemiLattice& lat) {
  Json j;
  j["elements"] = lat.elements;
  Json pairs = Json::array();
  for (int a = 0; a < lat.size(); ++a)
    for (int b = 0; b < lat.size(); ++b)
      if (a != b && lat.leq(a, b)) pairs.push_back(Json::array({a, b}));
  j["leq"] = std::move(pairs);
  j["zero"] = lat.zero;
  return j;
}

// {"members":[i,...]}

inline FilterRep parse_filter(const Json& j, const SemiLattice& lat,
                              const std::string& path = "$") {
  FilterRep f;
  const Json& ms = array_at(field(j, "members", path), path + "/members");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    long long e = int_at(ms[i], item(path + "/members", i));
    if (e < 0 || e >= lat.size()) fail(item(path + "/members", i), "element index out of range");
    f.members.push_back(static_cast<int>(e));
  }
  std::sort(f.members.begin(), f.members.end());
  f.members.erase(std::unique(f.members.begin(), f.members.end()), f.members.end());
  return f;
}

inline Json filter_json(const FilterRep& f) {
  Json j;
  j["members"] = f.members;
  return j;
}

// ---------------------------------------------------------------------------
// finite-space: {"points":[names], "opens":[[indices],...]}

inline FiniteSpace parse_space(const Json& j, const std::string& path = "$") {
  std::vector<std::string> names;
  const Json& pt = array_at(field(j, "points", path), path + "/points");
  for (std::size_t i = 0; i < pt.size(); ++i)
    names.push_back(str_at(pt[i], item(path + "/points", i)));
  if (names.size() > 64) fail(path + "/points", "at most 64 points");
  std::vector<Mask> opens;
  const Json& op = array_at(field(j, "opens", path), path + "/opens");
  for (std::size_t i = 0; i < op.size(); ++i) {
    const std::string p = item(path + "/opens", i);
    Mask m = 0;
    for (std::size_t k = 0; k < array_at(op[i], p).size(); ++k) {
      long long idx = int_at(op[i][k], item(p, k));
      if (idx < 0 || idx >= static_cast<long long>(names.size()))
        fail(item(p, k), "point index out of range");
      m |= Mask{1} << idx;
    }
    opens.push_back(m);
  }
  return make_space(std::move(names), std::move(opens));
}

inline Json space_json(const FiniteSpace& x) {
  Json j;
  j["points"] = x.points;
  Json opens = Json::array();
  for (Mask m : x.opens) opens.push_back(mask_points(m, x.npoints()));
  j["opens"] = std::move(opens);
  return j;
}

// ---------------------------------------------------------------------------
// matrix-algebra: {"block_dims":[n1,...]}

inline BlockAlgebra parse_algebra(const Json& j, const std::string& path = "$") {
  std::vector<int> dims;
  const Json& bd = array_at(field(j, "block_dims", path), path + "/block_dims");
  for (std::size_t i = 0; i < bd.size(); ++i)
    dims.push_back(static_cast<int>(int_at(bd[i], item(path + "/block_dims", i))));
  return make_block_algebra(std::move(dims));
}

inline Json algebra_json(const BlockAlgebra& alg) {
  Json j;
  j["block_dims"] = alg.dims;
  return j;
}

inline GQ gq_at(const Json& j, const std::string& path) {
  try {
    return parse_gq(str_at(j, path));
  } catch (const structural_error& e) {
    fail(path, e.what());
  }
}

inline Mat parse_matrix(const Json& j, int rows, int cols, const std::string& path) {
  const Json& rw = array_at(j, path);
  if (static_cast<int>(rw.size()) != rows) fail(path, "wrong number of rows");
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const std::string p = item(path, r);
    if (static_cast<int>(array_at(rw[r], p).size()) != cols) fail(p, "wrong number of columns");
    for (int c = 0; c < cols; ++c) m.at(r, c) = gq_at(rw[r][c], item(p, c));
  }
  return m;
}

inline Json matrix_json(const Mat& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows; ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(gq_str(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// {"blocks":[[["p/q+r/si",...],...],...]}

inline AlgebraElement parse_element(const Json& j, const BlockAlgebra& alg,
                                    const std::string& path = "$") {
  const Json& bl = array_at(field(j, "blocks", path), path + "/blocks");
  if (static_cast<int>(bl.size()) != alg.nblocks()) fail(path + "/blocks", "wrong block count");
  AlgebraElement a = zero_element(alg);
  for (int b = 0; b < alg.nblocks(); ++b)
    a.blocks[b] = parse_matrix(bl[b], alg.dims[b], alg.dims[b], item(path + "/blocks", b));
  return a;
}

inline Json element_json(const AlgebraElement& a) {
  Json blocks = Json::array();
  for (const Mat& m : a.blocks) blocks.push_back(matrix_json(m));
  Json j;
  j["blocks"] = std::move(blocks);
  return j;
}

// {"subspaces":[[basis vectors],...]}, one entry per block

inline Subspace parse_subspace(const Json& j, int ambient, const std::string& path) {
  const Json& vs = array_at(j, path);
  std::vector<std::vector<GQ>> rows;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string p = item(path, i);
    if (static_cast<int>(array_at(vs[i], p).size()) != ambient)
      fail(p, "vector length does not match the block dimension");
    std::vector<GQ> v;
    for (std::size_t c = 0; c < vs[i].size(); ++c) v.push_back(gq_at(vs[i][c], item(p, c)));
    rows.push_back(std::move(v));
  }
  return Subspace::span_of(ambient, rows);
}

inline Json subspace_json(const Subspace& s) {
  Json vs = Json::array();
  for (int k = 0; k < s.dim(); ++k) {
    Json v = Json::array();
    for (const GQ& c : s.basis_vector(k)) v.push_back(gq_str(c));
    vs.push_back(std::move(v));
  }
  return vs;
}

inline LeftIdealRep parse_ideal(const Json& j, const BlockAlgebra& alg,
                                const std::string& path = "$") {
  const Json& ss = array_at(field(j, "subspaces", path), path + "/subspaces");
  if (static_cast<int>(ss.size()) != alg.nblocks()) fail(path + "/subspaces", "wrong block count");
  LeftIdealRep l;
  for (int b = 0; b < alg.nblocks(); ++b)
    l.v.push_back(parse_subspace(ss[b], alg.dims[b], item(path + "/subspaces", b)));
  return l;
}

inline Json ideal_json(const LeftIdealRep& l) {
  Json ss = Json::array();
  for (const Subspace& s : l.v) ss.push_back(subspace_json(s));
  Json j;
  j["subspaces"] = std::move(ss);
  return j;
}

// ---------------------------------------------------------------------------
// gelfand-space: {"block": i, "line":[...]} or {"point": index-or-name}

inline UltrafilterPoint parse_point(const Json& j, const BlockAlgebra& alg,
                                    const FiniteSpace* names = nullptr,
                                    const std::string& path = "$") {
  if (has_field(j, "point")) {
    const Json& p = field(j, "point", path);
    long long idx = -1;
    if (p.is_string()) {
      if (names == nullptr) fail(path + "/point", "a named point needs a space document");
      std::string nm = p.get<std::string>();
      for (int i = 0; i < names->npoints(); ++i)
        if (names->points[i] == nm) idx = i;
      if (idx < 0) fail(path + "/point", "unknown point name");
    } else {
      idx = int_at(p, path + "/point");
    }
    if (idx < 0 || idx >= alg.nblocks()) fail(path + "/point", "block index out of range");
    if (alg.dims[idx] != 1)
      fail(path + "/point", "point form needs a commutative (all blocks 1x1) algebra");
    return make_point(alg, static_cast<int>(idx), {GQ(1)});
  }
  long long block = int_at(field(j, "block", path), path + "/block");
  if (block < 0 || block >= alg.nblocks()) fail(path + "/block", "block index out of range");
  const Json& ln = array_at(field(j, "line", path), path + "/line");
  if (static_cast<int>(ln.size()) != alg.dims[block])
    fail(path + "/line", "vector length does not match the block dimension");
  std::vector<GQ> line;
  for (std::size_t i = 0; i < ln.size(); ++i) line.push_back(gq_at(ln[i], item(path + "/line", i)));
  return make_point(alg, static_cast<int>(block), std::move(line));
}

inline Json point_json(const UltrafilterPoint& pt) {
  Json j;
  j["block"] = pt.block;
  Json line = Json::array();
  for (const GQ& c : pt.line) line.push_back(gq_str(c));
  j["line"] = std::move(line);
  return j;
}

// {"perm":[...], "conj":[matrix,...]}

inline Automorphism parse_automorphism(const Json& j, const BlockAlgebra& alg,
                                       const std::string& path = "$") {
  std::vector<int> perm;
  const Json& pm = array_at(field(j, "perm", path), path + "/perm");
  for (std::size_t i = 0; i < pm.size(); ++i)
    perm.push_back(static_cast<int>(int_at(pm[i], item(path + "/perm", i))));
  const Json& cj = array_at(field(j, "conj", path), path + "/conj");
  if (static_cast<int>(cj.size()) != alg.nblocks()) fail(path + "/conj", "wrong block count");
  std::vector<Mat> conj;
  for (int b = 0; b < alg.nblocks(); ++b)
    conj.push_back(parse_matrix(cj[b], alg.dims[b], alg.dims[b], item(path + "/conj", b)));
  return make_automorphism(alg, std::move(perm), std::move(conj));
}

inline Json automorphism_json(const Automorphism& g) {
  Json j;
  j["perm"] = g.perm;
  Json conj = Json::array();
  for (const Mat& m : g.conj) conj.push_back(matrix_json(m));
  j["conj"] = std::move(conj);
  return j;
}

// unital *-morphism given by matrix-unit images:
// {"src":algebra, "dst":algebra, "unit_images":[element,...]}

inline MorphismData parse_morphism(const Json& j, const std::string& path = "$") {
  BlockAlgebra src = parse_algebra(field(j, "src", path), path + "/src");
  BlockAlgebra dst = parse_algebra(field(j, "dst", path), path + "/dst");
  const Json& ui = array_at(field(j, "unit_images", path), path + "/unit_images");
  std::vector<AlgebraElement> images;
  for (std::size_t i = 0; i < ui.size(); ++i)
    images.push_back(parse_element(ui[i], dst, item(path + "/unit_images", i)));
  return make_morphism(std::move(src), std::move(dst), std::move(images));
}

inline Json morphism_json(const MorphismData& m) {
  Json j;
  j["src"] = algebra_json(m.src);
  j["dst"] = algebra_json(m.dst);
  Json ui = Json::array();
  for (const AlgebraElement& a : m.unit_images) ui.push_back(element_json(a));
  j["unit_images"] = std::move(ui);
  return j;
}

// covering quadruple: {"base":algebra, "cover":algebra,
//   "lift":{"unit_images":[...]}, "group":[automorphism generators],
//   "ambient":[automorphisms]} (ambient optional)

inline CoveringQuadruple parse_quadruple(const Json& j, const std::string& path = "$") {
  CoveringQuadruple q;
  q.base = parse_algebra(field(j, "base", path), path + "/base");
  q.cover = parse_algebra(field(j, "cover", path), path + "/cover");
  const Json& lf = field(j, "lift", path);
  const Json& ui = array_at(field(lf, "unit_images", path + "/lift"), path + "/lift/unit_images");
  std::vector<AlgebraElement> images;
  for (std::size_t i = 0; i < ui.size(); ++i)
    images.push_back(parse_element(ui[i], q.cover, item(path + "/lift/unit_images", i)));
  q.lift = make_morphism(q.base, q.cover, std::move(images));
  std::vector<Automorphism> gens;
  const Json& gr = array_at(field(j, "group", path), path + "/group");
  for (std::size_t i = 0; i < gr.size(); ++i)
    gens.push_back(parse_automorphism(gr[i], q.cover, item(path + "/group", i)));
  q.group = make_aut_group(q.cover, gens);
  if (has_field(j, "ambient")) {
    const Json& am = array_at(field(j, "ambient", path), path + "/ambient");
    for (std::size_t i = 0; i < am.size(); ++i)
      q.ambient.push_back(parse_automorphism(am[i], q.cover, item(path + "/ambient", i)));
  }
  return q;
}

// ---------------------------------------------------------------------------
// blowup: {"algebra":..., "space":..., "block_to_point":[...]}

inline BlowingUp parse_blowing_up(const Json& j, const std::string& path = "$") {
  BlockAlgebra alg = parse_algebra(field(j, "algebra", path), path + "/algebra");
  FiniteSpace sp = parse_space(field(j, "space", path), path + "/space");
  std::vector<int> assign;
  const Json& bp = array_at(field(j, "block_to_point", path), path + "/block_to_point");
  for (std::size_t i = 0; i < bp.size(); ++i)
    assign.push_back(static_cast<int>(int_at(bp[i], item(path + "/block_to_point", i))));
  return make_blowing_up(std::move(alg), std::move(sp), std::move(assign));
}

inline Json blowing_up_json(const BlowingUp& bu) {
  Json j;
  j["algebra"] = algebra_json(bu.alg);
  j["space"] = space_json(bu.space);
  j["block_to_point"] = bu.block_to_point;
  return j;
}

// ---------------------------------------------------------------------------
// abelian groups: {"rank": r, "torsion":[d,...]}; torsion omitted when empty.
// Generator order everywhere: free generators first, then torsion.

inline AbGroup parse_group(const Json& j, const std::string& path = "$") {
  long long rank = has_field(j, "rank") ? int_at(field(j, "rank", path), path + "/rank") : 0;
  if (rank < 0) fail(path + "/rank", "rank must be nonnegative");
  std::vector<Int> torsion;
  if (has_field(j, "torsion")) {
    const Json& ts = array_at(field(j, "torsion", path), path + "/torsion");
    for (std::size_t i = 0; i < ts.size(); ++i)
      torsion.push_back(bigint_at(ts[i], item(path + "/torsion", i)));
  }
  return AbGroup::canonical(static_cast<int>(rank), std::move(torsion));
}

inline Json group_json(const AbGroup& g) {
  CanonicalForm c = canonical_form(g);
  Json j;
  j["rank"] = c.group.rank();
  auto tors = c.group.torsion();
  if (!tors.empty()) {
    Json ts = Json::array();
    for (const Int& d : tors) ts.push_back(d.str());
    j["torsion"] = std::move(ts);
  }
  return j;
}

inline Json groups_json(const std::vector<AbGroup>& gs) {
  Json out = Json::array();
  for (const AbGroup& g : gs) out.push_back(group_json(g));
  return out;
}

// coefficient expressions: "Z", "Z^r", "Z/n", joined with "+"

inline AbGroup parse_coefficients(const std::string& expr, const std::string& path = "--coeff") {
  int rank = 0;
  std::vector<Int> torsion;
  std::size_t pos = 0;
  while (pos <= expr.size()) {
    std::size_t next = expr.find('+', pos);
    std::string term = expr.substr(pos, next == std::string::npos ? next : next - pos);
    term.erase(std::remove(term.begin(), term.end(), ' '), term.end());
    if (term == "0") {
    } else if (term == "Z") {
      ++rank;
    } else if (term.rfind("Z^", 0) == 0) {
      try {
        rank += std::stoi(term.substr(2));
      } catch (...) {
        fail(path, "bad coefficient term '" + term + "'");
      }
    } else if (term.rfind("Z/", 0) == 0) {
      try {
        torsion.push_back(Int(term.substr(2)));
      } catch (...) {
        fail(path, "bad coefficient term '" + term + "'");
      }
    } else {
      fail(path, "bad coefficient term '" + term + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return AbGroup::canonical(rank, std::move(torsion));
}

// ---------------------------------------------------------------------------
// presheaves: {"space":..., "sections":{"openIdx":{"rank","torsion"}},
//   "restrictions":{"U>V":[[integer matrix]]}}; restriction matrices are
//   F(V).ngens x F(U).ngens, one column per source generator.  Missing
//   composable restrictions are filled in by composition.

inline IntMat parse_int_matrix(const Json& j, int rows, int cols, const std::string& path) {
  const Json& rw = array_at(j, path);
  if (static_cast<int>(rw.size()) != rows) fail(path, "wrong number of rows");
  IntMat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const std::string p = item(path, r);
    if (static_cast<int>(array_at(rw[r], p).size()) != cols) fail(p, "wrong number of columns");
    for (int c = 0; c < cols; ++c) m.at(r, c) = bigint_at(rw[r][c], item(p, c));
  }
  return m;
}

inline Json int_matrix_json(const IntMat& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows; ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline FinitePresheaf parse_presheaf(const Json& j, const std::string& path = "$") {
  FiniteSpace sp = parse_space(field(j, "space", path), path + "/space");
  std::vector<AbGroup> sections(sp.nopens());
  const Json& se = field(j, "sections", path);
  if (!se.is_object()) fail(path + "/sections", "expected an object");
  for (auto it = se.begin(); it != se.end(); ++it) {
    int u = -1;
    try {
      u = std::stoi(it.key());
    } catch (...) {
      fail(path + "/sections/" + it.key(), "key must be an open index");
    }
    if (u < 0 || u >= sp.nopens())
      fail(path + "/sections/" + it.key(), "open index out of range");
    sections[u] = parse_group(it.value(), path + "/sections/" + it.key());
  }
  std::map<std::pair<int, int>, AbHom> res;
  if (has_field(j, "restrictions")) {
    const Json& rs = field(j, "restrictions", path);
    if (!rs.is_object()) fail(path + "/restrictions", "expected an object");
    for (auto it = rs.begin(); it != rs.end(); ++it) {
      const std::string p = path + "/restrictions/" + it.key();
      std::size_t sep = it.key().find('>');
      if (sep == std::string::npos) fail(p, "key must look like \"U>V\"");
      int u = -1, v = -1;
      try {
        u = std::stoi(it.key().substr(0, sep));
        v = std::stoi(it.key().substr(sep + 1));
      } catch (...) {
        fail(p, "key must look like \"U>V\"");
      }
      if (u < 0 || u >= sp.nopens() || v < 0 || v >= sp.nopens())
        fail(p, "open index out of range");
      IntMat m = parse_int_matrix(it.value(), sections[v].ngens(), sections[u].ngens(), p);
      res[{u, v}] = ab_hom(sections[u], sections[v], std::move(m));
    }
  }
  // a hom is unique when either end is trivial; fill those in silently
  for (int u = 0; u < sp.nopens(); ++u)
    for (int v = 0; v < sp.nopens(); ++v) {
      if (u == v || (sp.opens[v] & ~sp.opens[u]) != 0) continue;
      if (res.count({u, v})) continue;
      if (sections[u].is_trivial() || sections[v].is_trivial())
        res[{u, v}] = ab_hom(sections[u], sections[v],
                             IntMat(sections[v].ngens(), sections[u].ngens()));
    }
  // complete missing strictly-nested pairs by composing through intermediates
  bool grew = true;
  while (grew) {
    grew = false;
    for (int u = 0; u < sp.nopens(); ++u)
      for (int v = 0; v < sp.nopens(); ++v) {
        if (u == v || (sp.opens[v] & ~sp.opens[u]) != 0) continue;
        if (res.count({u, v})) continue;
        for (int w = 0; w < sp.nopens(); ++w) {
          if (w == u || w == v) continue;
          auto a = res.find({u, w});
          auto b = res.find({w, v});
          if (a != res.end() && b != res.end()) {
            res[{u, v}] = compose(b->second, a->second);
            grew = true;
            break;
          }
        }
      }
  }
  return make_presheaf(std::move(sp), std::move(sections), std::move(res));
}

inline Json presheaf_json(const FinitePresheaf& f) {
  Json j;
  j["space"] = space_json(f.space);
  Json se = Json::object();
  for (int u = 0; u < f.space.nopens(); ++u) se[std::to_string(u)] = group_json(f.sections[u]);
  j["sections"] = std::move(se);
  Json rs = Json::object();
  for (const auto& [key, hom] : f.restrictions)
    rs[std::to_string(key.first) + ">" + std::to_string(key.second)] = int_matrix_json(hom.m);
  j["restrictions"] = std::move(rs);
  return j;
}

// ---------------------------------------------------------------------------
// covers: {"space":..., "members":[[point indices],...]}; when members are
// omitted the maximal minimal-opens of the space are used.

struct SpaceCoverDoc {
  FiniteSpace space;
  std::vector<Mask> members;
};

inline std::vector<Mask> canonical_star_cover(const FiniteSpace& x) {
  std::vector<Mask> mins;
  for (int p = 0; p < x.npoints(); ++p) mins.push_back(x.min_open(p));
  std::sort(mins.begin(), mins.end());
  mins.erase(std::unique(mins.begin(), mins.end()), mins.end());
  std::vector<Mask> out;
  for (Mask m : mins) {
    bool maximal = true;
    for (Mask o : mins)
      if (o != m && (m & ~o) == 0) maximal = false;
    if (maximal) out.push_back(m);
  }
  return out;
}

inline SpaceCoverDoc parse_cover(const Json& j, const std::string& path = "$") {
  SpaceCoverDoc doc;
  doc.space = parse_space(field(j, "space", path), path + "/space");
  if (has_field(j, "members")) {
    const Json& ms = array_at(field(j, "members", path), path + "/members");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string p = item(path + "/members", i);
      Mask m = 0;
      for (std::size_t k = 0; k < array_at(ms[i], p).size(); ++k) {
        long long idx = int_at(ms[i][k], item(p, k));
        if (idx < 0 || idx >= doc.space.npoints()) fail(item(p, k), "point index out of range");
        m |= Mask{1} << idx;
      }
      doc.members.push_back(m);
    }
  } else {
    doc.members = canonical_star_cover(doc.space);
  }
  return doc;
}

// ---------------------------------------------------------------------------
// two-complexes: {"vertices":[names], "edges":[[u,v],...],
//   "cells":[["e1","e2~",...],...]} with 1-based edge labels, "~" = reversed

inline TwoComplex parse_two_complex(const Json& j, const std::string& path = "$") {
  std::vector<std::string> vertices;
  const Json& vs = array_at(field(j, "vertices", path), path + "/vertices");
  for (std::size_t i = 0; i < vs.size(); ++i)
    vertices.push_back(str_at(vs[i], item(path + "/vertices", i)));
  std::vector<std::pair<int, int>> edges;
  const Json& es = array_at(field(j, "edges", path), path + "/edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string p = item(path + "/edges", i);
    const Json& pr = array_at(es[i], p);
    if (pr.size() != 2) fail(p, "expected a pair [u,v]");
    edges.push_back({static_cast<int>(int_at(pr[0], p + "/0")),
                     static_cast<int>(int_at(pr[1], p + "/1"))});
  }
  std::vector<std::vector<int>> cells;
  if (has_field(j, "cells")) {
    const Json& cs = array_at(field(j, "cells", path), path + "/cells");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string p = item(path + "/cells", i);
      std::vector<int> word;
      for (std::size_t k = 0; k < array_at(cs[i], p).size(); ++k) {
        std::string ref = str_at(cs[i][k], item(p, k));
        bool inverse = !ref.empty() && ref.back() == '~';
        if (inverse) ref.pop_back();
        if (ref.size() < 2 || ref[0] != 'e') fail(item(p, k), "edge reference must look like \"e1\"");
        int e = 0;
        try {
          e = std::stoi(ref.substr(1));
        } catch (...) {
          fail(item(p, k), "edge reference must look like \"e1\"");
        }
        if (e < 1 || e > static_cast<int>(edges.size()))
          fail(item(p, k), "edge reference out of range");
        word.push_back(inverse ? -e : e);
      }
      cells.push_back(std::move(word));
    }
  }
  return make_two_complex(std::move(vertices), std::move(edges), std::move(cells));
}

inline Json two_complex_json(const TwoComplex& x) {
  Json j;
  j["vertices"] = x.vertices;
  Json es = Json::array();
  for (auto [u, v] : x.edges) es.push_back(Json::array({u, v}));
  j["edges"] = std::move(es);
  Json cs = Json::array();
  for (const auto& cell : x.cells) {
    Json word = Json::array();
    for (int letter : cell)
      word.push_back("e" + std::to_string(std::abs(letter)) + (letter < 0 ? "~" : ""));
    cs.push_back(std::move(word));
  }
  j["cells"] = std::move(cs);
  return j;
}

}  // namespace gelfkit::io
