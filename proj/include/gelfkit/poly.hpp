#pragma once

// Univariate polynomials over the rationals with Sturm-sequence real root
// isolation.  Supports the exact spectral machinery: characteristic
// polynomials of Hermitian matrices are real-rooted, rational eigenvalues are
// recovered by integer root extraction after denominator scaling, and
// irrational eigenvalues get certified isolating intervals.

#include "gelfkit/numeric.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace gelfkit {

struct Poly {
  std::vector<Rat> c;  // c[k] multiplies x^k, invariant: no trailing zeros

  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(Rat v) { return Poly{{std::move(v)}}; }
  static Poly monomial(int deg, Rat coeff) {
    std::vector<Rat> v(deg + 1);
    v[deg] = std::move(coeff);
    return Poly{std::move(v)};
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const Rat& lead() const { return c.back(); }

  Rat eval(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  RatInterval eval_interval(const RatInterval& x) const {
    RatInterval acc(Rat(0));
    for (auto it = c.rbegin(); it != c.rend(); ++it)
      acc = acc * x + RatInterval(*it);
    return acc;
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly{};
    std::vector<Rat> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * Rat(static_cast<long>(k));
    return Poly{std::move(d)};
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> v(std::max(a.c.size(), b.c.size()));
    for (std::size_t k = 0; k < a.c.size(); ++k) v[k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) v[k] += b.c[k];
    return Poly{std::move(v)};
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rat> v(std::max(a.c.size(), b.c.size()));
    for (std::size_t k = 0; k < a.c.size(); ++k) v[k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) v[k] -= b.c[k];
    return Poly{std::move(v)};
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    std::vector<Rat> v(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
    return Poly{std::move(v)};
  }
  friend Poly operator*(const Rat& s, const Poly& p) {
    std::vector<Rat> v = p.c;
    for (auto& x : v) x *= s;
    return Poly{std::move(v)};
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
};

// exact euclidean division, remainder degree < divisor degree
inline std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw value_domain_error("polynomial division by zero");
  Poly rem = a;
  std::vector<Rat> q(a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0);
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    int shift = rem.degree() - b.degree();
    Rat factor = rem.lead() / b.lead();
    q[shift] = factor;
    for (int k = 0; k <= b.degree(); ++k) rem.c[k + shift] -= factor * b.c[k];
    rem.trim();
  }
  return {Poly{std::move(q)}, std::move(rem)};
}

inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) a = (Rat(1) / a.lead()) * a;  // monic normal form
  return a;
}

inline Poly squarefree_part(const Poly& p) {
  if (p.degree() <= 1) return p;
  Poly g = poly_gcd(p, p.derivative());
  if (g.degree() == 0) return p;
  return poly_divmod(p, g).first;
}

// Sturm chain of a squarefree polynomial
inline std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  Poly d = p.derivative();
  if (!d.is_zero()) chain.push_back(std::move(d));
  while (chain.back().degree() > 0) {
    Poly r = poly_divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(Rat(-1) * r);
  }
  return chain;
}

inline int sturm_variations(const std::vector<Poly>& chain, const Rat& x) {
  int count = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sign_of(p.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

// number of distinct real roots in (a, b]; p must be squarefree
inline int sturm_count(const std::vector<Poly>& chain, const Rat& a, const Rat& b) {
  return sturm_variations(chain, a) - sturm_variations(chain, b);
}

inline Rat cauchy_root_bound(const Poly& p) {
  if (p.degree() < 1) return 1;
  Rat m = 0;
  for (int k = 0; k < p.degree(); ++k) {
    Rat a = p.c[k] / p.lead();
    if (a < 0) a = -a;
    if (a > m) m = a;
  }
  return m + 1;
}

// disjoint intervals, one distinct real root each, in increasing order.
// exact rational roots come back as point intervals; open endpoints of the
// non-point intervals are never roots.
inline std::vector<RatInterval> isolate_real_roots(const Poly& p_in) {
  Poly p = squarefree_part(p_in);
  std::vector<RatInterval> out;
  if (p.degree() < 1) return out;
  auto chain = sturm_chain(p);
  Rat bound = cauchy_root_bound(p);

  struct Seg {
    Rat a, b;
    int count;
  };
  std::vector<Seg> work;
  {
    Rat a = -bound, b = bound;
    // nudge endpoints off roots (bound strictly exceeds all roots already)
    int total = sturm_count(chain, a, b);
    if (total > 0) work.push_back({a, b, total});
  }
  while (!work.empty()) {
    Seg s = work.back();
    work.pop_back();
    if (s.count == 1) {
      // shrink far enough to report, exactness handled by caller refinement
      out.push_back(RatInterval{s.a, s.b});
      continue;
    }
    Rat mid = (s.a + s.b) / 2;
    if (p.eval(mid) == 0) {
      out.push_back(RatInterval{mid});
      // carve out an interval around mid that contains no other root
      Rat delta = (s.b - s.a) / 4;
      while (sturm_count(chain, mid - delta, mid + delta) > 1) delta /= 2;
      int left = sturm_count(chain, s.a, mid - delta);
      int right = sturm_count(chain, mid + delta, s.b);
      if (left > 0) work.push_back({s.a, mid - delta, left});
      if (right > 0) work.push_back({mid + delta, s.b, right});
    } else {
      int left = sturm_count(chain, s.a, mid);
      int right = s.count - left;
      if (left > 0) work.push_back({s.a, mid, left});
      if (right > 0) work.push_back({mid, s.b, right});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RatInterval& x, const RatInterval& y) { return x.lo < y.lo; });
  return out;
}

// shrink an isolating interval of a squarefree p below width; point intervals
// pass through, and an interior rational root collapses the interval.
inline RatInterval refine_root(const Poly& p, const std::vector<Poly>& chain, RatInterval iv,
                               const Rat& width) {
  if (iv.width() == 0) return iv;
  while (iv.width() > width) {
    Rat mid = (iv.lo + iv.hi) / 2;
    if (p.eval(mid) == 0) return RatInterval{mid};
    if (sturm_count(chain, iv.lo, mid) == 1)
      iv = RatInterval{iv.lo, mid};
    else
      iv = RatInterval{mid, iv.hi};
  }
  return iv;
}

// All roots of a monic integer-coefficient polynomial that are integers,
// with multiplicity, plus the deflated cofactor.  Used for exact Hermitian
// spectra: after denominator scaling every rational eigenvalue is an integer
// root of the scaled characteristic polynomial.
struct IntegerRoots {
  std::vector<std::pair<Int, int>> roots;  // (root, multiplicity), increasing
  Poly cofactor;                           // no integer roots remain
};

inline IntegerRoots extract_integer_roots(const Poly& p_in) {
  IntegerRoots res;
  Poly p = p_in;
  auto isolated = isolate_real_roots(p);
  std::vector<Int> candidates;
  for (auto iv : isolated) {
    if (iv.width() == 0) {
      const Rat& r = iv.lo;
      if (rat_den(r) == 1) candidates.push_back(rat_num(r));
      continue;
    }
    Poly sf = squarefree_part(p);
    auto chain = sturm_chain(sf);
    iv = refine_root(sf, chain, iv, Rat(1, 4));
    // at most one integer can sit in an interval this narrow
    Int lo_floor = rat_num(iv.lo) >= 0 ? rat_num(iv.lo) / rat_den(iv.lo)
                                       : -((-rat_num(iv.lo) + rat_den(iv.lo) - 1) / rat_den(iv.lo));
    for (Int k = lo_floor; k <= lo_floor + 1; ++k)
      if (iv.contains(Rat(k))) candidates.push_back(k);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const Int& k : candidates) {
    if (p.eval(Rat(k)) != 0) continue;
    int mult = 0;
    Poly lin{{Rat(-k), Rat(1)}};
    while (true) {
      auto [q, r] = poly_divmod(p, lin);
      if (!r.is_zero()) break;
      p = std::move(q);
      ++mult;
    }
    if (mult > 0) res.roots.push_back({k, mult});
  }
  res.cofactor = std::move(p);
  return res;
}

}  // namespace gelfkit
