#pragma once

// Finitely generated abelian groups presented on explicit generator tuples,
// homs as integer matrices, and the subquotient machinery (kernels, images,
// homology) that sheaf sections and Cech cohomology reduce to.  A group is a
// list of generator orders (0 = infinite); the canonical invariant form keeps
// free generators first and torsion coefficients in a divisibility chain.

#include "gelfkit/intmat.hpp"

#include <string>
#include <utility>
#include <vector>

namespace gelfkit {

struct AbGroup {
  std::vector<Int> orders;  // per generator: 0 for infinite, else >= 2

  AbGroup() = default;
  explicit AbGroup(std::vector<Int> ord) : orders(std::move(ord)) {
    for (const auto& d : orders)
      if (d < 0 || d == 1) throw structural_error("generator order must be 0 or >= 2");
  }
  static AbGroup trivial() { return AbGroup{}; }
  static AbGroup free_group(int r) { return AbGroup(std::vector<Int>(r, 0)); }
  static AbGroup cyclic(Int n) { return AbGroup({std::move(n)}); }
  // invariant form: free generators first, then torsion coefficients
  static AbGroup canonical(int rank, std::vector<Int> torsion) {
    std::vector<Int> ord(rank, 0);
    for (auto& d : torsion) ord.push_back(std::move(d));
    return AbGroup(std::move(ord));
  }

  int ngens() const { return static_cast<int>(orders.size()); }
  int rank() const {
    int r = 0;
    for (const auto& d : orders)
      if (d == 0) ++r;
    return r;
  }
  std::vector<Int> torsion() const {
    std::vector<Int> t;
    for (const auto& d : orders)
      if (d != 0) t.push_back(d);
    return t;
  }
  bool is_trivial() const { return orders.empty(); }
  bool is_invariant_form() const {
    auto t = torsion();
    for (int i = 0; i < ngens() - static_cast<int>(t.size()); ++i)
      if (orders[i] != 0) return false;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
      if (t[i + 1] % t[i] != 0) return false;
    return true;
  }

  // columns d_i * e_i for each torsion generator
  IntMat relation_matrix() const {
    int nt = ngens() - rank();
    IntMat r(ngens(), nt);
    int c = 0;
    for (int i = 0; i < ngens(); ++i)
      if (orders[i] != 0) r.at(i, c++) = orders[i];
    return r;
  }

  std::vector<Int> normalize(std::vector<Int> x) const {
    if (static_cast<int>(x.size()) != ngens()) throw structural_error("element length mismatch");
    for (int i = 0; i < ngens(); ++i)
      if (orders[i] != 0) {
        x[i] %= orders[i];
        if (x[i] < 0) x[i] += orders[i];
      }
    return x;
  }
  bool is_zero_element(const std::vector<Int>& x) const {
    auto n = normalize(x);
    for (const auto& v : n)
      if (v != 0) return false;
    return true;
  }

  friend bool operator==(const AbGroup& a, const AbGroup& b) { return a.orders == b.orders; }
  friend bool operator!=(const AbGroup& a, const AbGroup& b) { return !(a == b); }

  friend AbGroup operator*(const AbGroup& a, const AbGroup& b) {  // direct product
    std::vector<Int> ord = a.orders;
    ord.insert(ord.end(), b.orders.begin(), b.orders.end());
    return AbGroup(std::move(ord));
  }

  std::string describe() const {
    if (is_trivial()) return "0";
    std::string out;
    int r = rank();
    if (r == 1) out = "Z";
    if (r > 1) out = "Z^" + std::to_string(r);
    for (const auto& d : torsion()) {
      if (!out.empty()) out += " + ";
      out += "Z/" + d.str();
    }
    return out;
  }
};

struct AbHom {
  AbGroup src;
  AbGroup dst;
  IntMat m;  // dst.ngens x src.ngens, torsion rows reduced into [0, order)

  AbHom() = default;
};

inline AbHom ab_hom(AbGroup src, AbGroup dst, IntMat m) {
  if (m.rows != dst.ngens() || m.cols != src.ngens())
    throw structural_error("hom matrix shape mismatch");
  // well-definedness on relations: order(src gen) kills its image
  for (int j = 0; j < src.ngens(); ++j) {
    const Int& o = src.orders[j];
    if (o == 0) continue;
    for (int i = 0; i < dst.ngens(); ++i) {
      Int v = o * m.at(i, j);
      const Int& p = dst.orders[i];
      if (p == 0 ? v != 0 : v % p != 0)
        throw structural_error("hom not well defined on torsion relations");
    }
  }
  for (int i = 0; i < dst.ngens(); ++i) {
    const Int& p = dst.orders[i];
    if (p == 0) continue;
    for (int j = 0; j < src.ngens(); ++j) {
      m.at(i, j) %= p;
      if (m.at(i, j) < 0) m.at(i, j) += p;
    }
  }
  AbHom h;
  h.src = std::move(src);
  h.dst = std::move(dst);
  h.m = std::move(m);
  return h;
}

inline AbHom ab_identity(const AbGroup& g) { return ab_hom(g, g, IntMat::identity(g.ngens())); }
inline AbHom ab_zero(const AbGroup& src, const AbGroup& dst) {
  return ab_hom(src, dst, IntMat(dst.ngens(), src.ngens()));
}

inline AbHom compose(const AbHom& g, const AbHom& f) {  // g after f
  if (f.dst != g.src) throw structural_error("hom composition mismatch");
  return ab_hom(f.src, g.dst, g.m * f.m);
}

inline bool hom_equal(const AbHom& a, const AbHom& b) {
  return a.src == b.src && a.dst == b.dst && a.m == b.m;
}
inline bool hom_is_zero(const AbHom& h) { return h.m.is_zero(); }

inline std::vector<Int> apply(const AbHom& h, const std::vector<Int>& x) {
  return h.dst.normalize(mat_vec(h.m, x));
}

// x in the image of h (as an element of h.dst, canonical coordinates)
inline bool element_in_image(const AbHom& h, const std::vector<Int>& x) {
  IntMat rel = h.dst.relation_matrix();
  IntMat aug(h.dst.ngens(), h.m.cols + rel.cols);
  for (int i = 0; i < h.dst.ngens(); ++i) {
    for (int j = 0; j < h.m.cols; ++j) aug.at(i, j) = h.m.at(i, j);
    for (int j = 0; j < rel.cols; ++j) aug.at(i, h.m.cols + j) = rel.at(i, j);
  }
  return int_solve(aug, x).has_value();
}

// some src element mapping to x under h, if one exists
inline std::optional<std::vector<Int>> preimage_of(const AbHom& h, const std::vector<Int>& x) {
  IntMat rel = h.dst.relation_matrix();
  IntMat aug(h.dst.ngens(), h.m.cols + rel.cols);
  for (int i = 0; i < h.dst.ngens(); ++i) {
    for (int j = 0; j < h.m.cols; ++j) aug.at(i, j) = h.m.at(i, j);
    for (int j = 0; j < rel.cols; ++j) aug.at(i, h.m.cols + j) = rel.at(i, j);
  }
  auto sol = int_solve(aug, x);
  if (!sol) return std::nullopt;
  std::vector<Int> pre(sol->begin(), sol->begin() + h.m.cols);
  return h.src.normalize(pre);
}

// exact integer inverse of a unimodular matrix, via rational elimination
inline IntMat int_inverse(const IntMat& u) {
  if (u.rows != u.cols) throw structural_error("inverse of non-square matrix");
  int n = u.rows;
  std::vector<std::vector<Rat>> aug(n, std::vector<Rat>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = Rat(u.at(i, j));
    aug[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int sel = -1;
    for (int i = col; i < n; ++i)
      if (aug[i][col] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) throw value_domain_error("matrix is singular");
    std::swap(aug[col], aug[sel]);
    Rat inv = Rat(1) / aug[col][col];
    for (int j = 0; j < 2 * n; ++j) aug[col][j] *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == col || aug[i][col] == 0) continue;
      Rat f = aug[i][col];
      for (int j = 0; j < 2 * n; ++j) aug[i][j] -= f * aug[col][j];
    }
  }
  IntMat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rat& v = aug[i][n + j];
      if (rat_den(v) != 1) throw value_domain_error("matrix is not unimodular");
      out.at(i, j) = rat_num(v);
    }
  return out;
}

// Subquotient ker(g)/im(f) of the middle group B of a two-step complex
//   A --f--> B --g--> C      with g o f = 0.
// Carries enough data to express further cocycles in canonical coordinates,
// which is what induced maps on cohomology need.
struct Subquotient {
  AbGroup group;      // canonical invariant form
  AbGroup middle;     // B
  IntMat cycle_gens;  // B.ngens x m, columns generate the cycle lattice
  IntMat gen_lifts;   // B.ngens x group.ngens, lift of each canonical generator
  IntMat u;           // SNF row transform on cycle coordinates
  std::vector<Int> snf_orders;  // per cycle coordinate: 0 free, else diagonal
  std::vector<int> kept;        // cycle coordinates surviving as generators

  // coordinates of a cycle (given in B generators) in the canonical group
  std::vector<Int> express(const std::vector<Int>& x) const {
    auto z = int_solve(cycle_gens, x);
    if (!z) throw value_domain_error("element is not a cycle of this subquotient");
    std::vector<Int> w = mat_vec(u, *z);
    std::vector<Int> out;
    out.reserve(kept.size());
    for (int i : kept) out.push_back(w[i]);
    return group.normalize(out);
  }
};

namespace detail {
inline IntMat hstack(const IntMat& a, const IntMat& b) {
  if (a.rows != b.rows) throw structural_error("hstack row mismatch");
  IntMat m(a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols; ++j) m.at(i, a.cols + j) = b.at(i, j);
  }
  return m;
}
inline IntMat take_rows(const IntMat& m, int count) {
  IntMat out(count, m.cols);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < m.cols; ++j) out.at(i, j) = m.at(i, j);
  return out;
}
}  // namespace detail

// ker(g)/im(f); pass ab_zero homs for plain kernels or cokernels.
inline Subquotient homology(const AbHom& g, const AbHom& f) {
  if (f.dst != g.src) throw structural_error("homology: chain groups mismatch");
  const AbGroup& b = g.src;
  int t = b.ngens();

  // cycle lattice {x : g(x) = 0 in C} as the x-part of an integer kernel
  IntMat gc = detail::hstack(g.m, g.dst.relation_matrix());
  IntMat kfull = int_kernel(gc);
  IntMat cycles = detail::take_rows(kfull, t);

  // boundary lattice: images of f plus torsion relations of B
  IntMat bound = detail::hstack(f.m, b.relation_matrix());

  // present the subquotient on the cycle generators
  IntMat combined = detail::hstack(cycles, bound);
  IntMat relz = detail::take_rows(int_kernel(combined), cycles.cols);

  Snf snf = smith_normal_form(relz);
  int m = cycles.cols;
  std::vector<Int> orders(m, 0);
  for (int i = 0; i < snf.rank; ++i) orders[i] = snf.s.at(i, i);

  Subquotient out;
  out.middle = b;
  out.cycle_gens = cycles;
  out.u = snf.u;
  out.snf_orders = orders;
  for (int i = 0; i < m; ++i)
    if (orders[i] == 0) out.kept.push_back(i);  // free generators first
  for (int i = 0; i < m; ++i)
    if (orders[i] >= 2) out.kept.push_back(i);  // then the divisibility chain

  std::vector<Int> canon_orders;
  for (int i : out.kept) canon_orders.push_back(orders[i]);
  out.group = AbGroup(std::move(canon_orders));

  IntMat uinv = int_inverse(snf.u);
  out.gen_lifts = IntMat(t, static_cast<int>(out.kept.size()));
  for (std::size_t gidx = 0; gidx < out.kept.size(); ++gidx) {
    std::vector<Int> e(m);
    e[out.kept[gidx]] = 1;
    std::vector<Int> z = mat_vec(uinv, e);
    std::vector<Int> x = mat_vec(cycles, z);
    for (int i = 0; i < t; ++i) out.gen_lifts.at(i, static_cast<int>(gidx)) = x[i];
  }
  return out;
}

struct SubgroupResult {
  AbGroup group;     // canonical form
  AbHom inclusion;   // into the ambient group
  Subquotient data;  // express() support
};

inline SubgroupResult kernel_of(const AbHom& h) {
  Subquotient q = homology(h, ab_zero(AbGroup::trivial(), h.src));
  SubgroupResult r;
  r.group = q.group;
  r.inclusion = ab_hom(q.group, h.src, q.gen_lifts);
  r.data = std::move(q);
  return r;
}

inline SubgroupResult image_of(const AbHom& h) {
  // present the image on the columns of h
  IntMat ri = detail::take_rows(
      int_kernel(detail::hstack(h.m, h.dst.relation_matrix())), h.m.cols);
  Snf snf = smith_normal_form(ri);
  int m = h.m.cols;
  std::vector<Int> orders(m, 0);
  for (int i = 0; i < snf.rank; ++i) orders[i] = snf.s.at(i, i);
  std::vector<int> kept;
  for (int i = 0; i < m; ++i)
    if (orders[i] == 0) kept.push_back(i);
  for (int i = 0; i < m; ++i)
    if (orders[i] >= 2) kept.push_back(i);
  std::vector<Int> canon;
  for (int i : kept) canon.push_back(orders[i]);

  SubgroupResult r;
  r.group = AbGroup(std::move(canon));
  IntMat uinv = int_inverse(snf.u);
  IntMat incl(h.dst.ngens(), static_cast<int>(kept.size()));
  for (std::size_t gidx = 0; gidx < kept.size(); ++gidx) {
    std::vector<Int> e(m);
    e[kept[gidx]] = 1;
    std::vector<Int> z = mat_vec(uinv, e);
    std::vector<Int> x = mat_vec(h.m, z);
    for (int i = 0; i < h.dst.ngens(); ++i) incl.at(i, static_cast<int>(gidx)) = x[i];
  }
  r.inclusion = ab_hom(r.group, h.dst, std::move(incl));
  return r;
}

inline AbGroup cokernel_of(const AbHom& h) {
  IntMat rel = detail::hstack(h.m, h.dst.relation_matrix());
  Snf snf = smith_normal_form(rel);
  std::vector<Int> orders;
  for (int i = 0; i < snf.rank; ++i)
    if (snf.s.at(i, i) >= 2) orders.push_back(snf.s.at(i, i));
  int free = h.dst.ngens() - snf.rank;
  std::vector<Int> canon(free, 0);
  for (auto& d : orders) canon.push_back(std::move(d));
  return AbGroup(std::move(canon));
}

inline bool is_injective(const AbHom& h) { return kernel_of(h).group.is_trivial(); }
inline bool is_surjective(const AbHom& h) { return cokernel_of(h).is_trivial(); }
inline bool is_isomorphism(const AbHom& h) { return is_injective(h) && is_surjective(h); }

// canonical invariant form of an arbitrarily presented group, with the
// change-of-coordinates homs in both directions
struct CanonicalForm {
  AbGroup group;
  AbHom to_canonical;
  AbHom from_canonical;
};

inline CanonicalForm canonical_form(const AbGroup& g) {
  Subquotient q = homology(ab_zero(g, AbGroup::trivial()), ab_zero(AbGroup::trivial(), g));
  CanonicalForm c;
  c.group = q.group;
  c.from_canonical = ab_hom(q.group, g, q.gen_lifts);
  IntMat to(q.group.ngens(), g.ngens());
  for (int j = 0; j < g.ngens(); ++j) {
    std::vector<Int> e(g.ngens());
    e[j] = 1;
    auto coords = q.express(e);
    for (int i = 0; i < q.group.ngens(); ++i) to.at(i, j) = coords[i];
  }
  c.to_canonical = ab_hom(g, q.group, std::move(to));
  return c;
}

inline bool isomorphic(const AbGroup& a, const AbGroup& b) {
  return canonical_form(a).group == canonical_form(b).group;
}

// every element, with free coordinates restricted to [-window, window];
// window < 0 demands a finite group
inline std::vector<std::vector<Int>> enumerate_elements(const AbGroup& g, long window = -1,
                                                        std::size_t cap = 1u << 16) {
  if (window < 0 && g.rank() > 0)
    throw resource_error("cannot enumerate an infinite group without a window");
  std::vector<std::vector<Int>> out{std::vector<Int>(g.ngens(), Int(0))};
  for (int i = 0; i < g.ngens(); ++i) {
    std::vector<Int> vals;
    if (g.orders[i] == 0)
      for (long v = -window; v <= window; ++v) vals.push_back(Int(v));
    else
      for (Int v = 0; v < g.orders[i]; ++v) vals.push_back(v);
    std::vector<std::vector<Int>> next;
    next.reserve(out.size() * vals.size());
    for (const auto& base : out)
      for (const auto& v : vals) {
        if (next.size() >= cap) throw resource_error("group element enumeration exceeds cap");
        auto x = base;
        x[i] = v;
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace gelfkit
