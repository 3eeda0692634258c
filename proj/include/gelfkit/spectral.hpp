#pragma once

// Spectral calculus for Hermitian blocks, exact where the spectrum is
// rational and certified elsewhere.  Certified results are polynomials in the
// input matrix (hence exact commutation with it) together with a rigorous
// operator-norm error bound obtained from interval evaluation over Sturm
// isolating intervals.  Norm computations return enclosures; nothing here is
// allowed to feed back into exact lattice decisions.

#include "gelfkit/algebra.hpp"
#include "gelfkit/poly.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace gelfkit {

// ---------------------------------------------------------------------------
// positivity, exactly

inline bool mat_is_psd(const Mat& m) {
  if (!m.is_hermitian()) return false;
  Poly p = charpoly_hermitian(m);
  // the elementary symmetric functions of a real-rooted polynomial are
  // nonnegative exactly when all roots are
  int n = m.rows;
  for (int j = 1; j <= n; ++j) {
    Rat e = ((j % 2 == 0) ? Rat(1) : Rat(-1)) * p.c[n - j];
    if (e < 0) return false;
  }
  return true;
}

inline bool mat_is_pd(const Mat& m) {
  if (!mat_is_psd(m)) return false;
  Poly p = charpoly_hermitian(m);
  return p.c[0] != 0;  // det nonzero
}

inline bool is_positive(const BlockAlgebra& alg, const AlgebraElement& a) {
  check_element(alg, a);
  for (const Mat& m : a.blocks)
    if (!mat_is_psd(m)) return false;
  return true;
}

inline bool is_positive_definite(const BlockAlgebra& alg, const AlgebraElement& a) {
  check_element(alg, a);
  for (const Mat& m : a.blocks)
    if (!mat_is_pd(m)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// rational/irrational root split of a monic rational polynomial

struct RootSplit {
  std::vector<std::pair<Rat, int>> rational;  // ascending, with multiplicity
  Poly cofactor;                              // carries exactly the irrational roots
};

inline RootSplit split_rational_roots(const Poly& p) {
  int n = p.degree();
  if (n < 0 || p.c[n] != 1) throw structural_error("expected a monic polynomial");
  Int den = 1;
  for (const Rat& c : p.c) den = boost::multiprecision::lcm(den, rat_den(c));
  // q(mu) = den^n p(mu/den) has integer coefficients and integer roots at
  // den * (rational roots of p)
  Poly q;
  q.c.resize(n + 1);
  Int scale = 1;
  for (int k = n; k >= 0; --k) {
    q.c[k] = p.c[k] * Rat(scale);
    scale *= den;
  }
  auto ir = extract_integer_roots(q);
  RootSplit out;
  out.cofactor = p;
  for (auto& [k, mult] : ir.roots) {
    Rat r = Rat(k) / Rat(den);
    out.rational.emplace_back(r, mult);
    Poly lin{{-r, Rat(1)}};
    for (int t = 0; t < mult; ++t) out.cofactor = poly_divmod(out.cofactor, lin).first;
  }
  std::sort(out.rational.begin(), out.rational.end());
  return out;
}

// all eigenvalues rational: values with multiplicity plus exact orthogonal
// spectral projectors
struct ExactSpectrum {
  std::vector<std::pair<Rat, int>> eigs;
  std::vector<Mat> projectors;
};

inline std::optional<ExactSpectrum> exact_hermitian_spectrum(const Mat& m) {
  if (!m.is_hermitian()) throw value_domain_error("spectrum of a non-hermitian matrix");
  Poly p = charpoly_hermitian(m);
  RootSplit rs = split_rational_roots(p);
  if (rs.cofactor.degree() != 0) return std::nullopt;
  ExactSpectrum out;
  out.eigs = rs.rational;
  for (size_t i = 0; i < rs.rational.size(); ++i) {
    Mat pr = Mat::identity(m.rows);
    for (size_t j = 0; j < rs.rational.size(); ++j) {
      if (i == j) continue;
      Rat d = rs.rational[i].first - rs.rational[j].first;
      pr = pr * (Rat(Rat(1) / d) * (m - rs.rational[j].first * Mat::identity(m.rows)));
    }
    out.projectors.push_back(std::move(pr));
  }
  return out;
}

// ---------------------------------------------------------------------------
// scalar functions with exact evaluation and exact monotone interval ranges

struct ScalarFn {
  enum class Kind { pos_cut, neg_part } kind;
  Rat eps;  // pos_cut parameter: x -> max(x - eps, 0)

  static ScalarFn pos_cut(Rat e) { return ScalarFn{Kind::pos_cut, std::move(e)}; }
  static ScalarFn pos_part() { return ScalarFn{Kind::pos_cut, Rat(0)}; }
  static ScalarFn neg_part() { return ScalarFn{Kind::neg_part, Rat(0)}; }

  Rat operator()(const Rat& x) const {
    if (kind == Kind::pos_cut) return x > eps ? Rat(x - eps) : Rat(0);
    return x < 0 ? Rat(-x) : Rat(0);
  }
  RatInterval range_on(const RatInterval& iv) const {
    Rat a = (*this)(iv.lo), b = (*this)(iv.hi);
    if (a > b) std::swap(a, b);
    return RatInterval{a, b};
  }
};

struct SpectralApprox {
  Mat value;
  Rat bound;  // operator-norm distance to the true value; 0 when exact
  bool exact;
};

namespace detail {

inline Poly lagrange_interpolant(const std::vector<Rat>& nodes, const std::vector<Rat>& vals) {
  Poly q;
  for (size_t i = 0; i < nodes.size(); ++i) {
    Poly basis = Poly::constant(Rat(1));
    Rat denom(1);
    for (size_t j = 0; j < nodes.size(); ++j) {
      if (i == j) continue;
      basis = basis * Poly{{-nodes[j], Rat(1)}};
      denom *= nodes[i] - nodes[j];
    }
    q = q + Rat(vals[i] / denom) * basis;
  }
  return q;
}

inline Mat eval_poly_at_matrix(const Poly& q, const Mat& m) {
  Mat acc(m.rows, m.cols);
  for (int k = q.degree(); k >= 0; --k)
    acc = acc * m + q.c[k] * Mat::identity(m.rows);
  return acc;
}

// sup |q - g| over iv is at most the hull gap of their exact/interval ranges
inline Rat hull_gap(const RatInterval& qa, const RatInterval& ga) {
  Rat x = qa.hi - ga.lo;
  Rat y = ga.hi - qa.lo;
  return x > y ? x : y;
}

}  // namespace detail

// Approximate g(m) for Hermitian m.  Exact whenever the whole spectrum is
// rational; otherwise a Lagrange interpolant through isolated-interval
// midpoints, refined until the certified bound drops below tol.
inline SpectralApprox apply_scalar_function(const Mat& m, const ScalarFn& g, const Rat& tol) {
  if (!m.is_hermitian()) throw value_domain_error("scalar calculus needs a hermitian input");
  if (tol <= 0) throw value_domain_error("tolerance must be positive");
  Poly p = charpoly_hermitian(m);
  RootSplit rs = split_rational_roots(p);

  std::vector<Rat> exact_nodes;
  for (auto& [r, mult] : rs.rational) exact_nodes.push_back(r);

  if (rs.cofactor.degree() == 0) {
    std::vector<Rat> vals;
    for (const Rat& r : exact_nodes) vals.push_back(g(r));
    Poly q = detail::lagrange_interpolant(exact_nodes, vals);
    return SpectralApprox{detail::eval_poly_at_matrix(q, m), Rat(0), true};
  }

  Poly cof = squarefree_part(rs.cofactor);
  auto chain = sturm_chain(cof);
  std::vector<RatInterval> ivs = isolate_real_roots(cof);
  // keep exact rational nodes out of the floating intervals
  for (auto& iv : ivs)
    for (const Rat& r : exact_nodes)
      while (iv.lo < r && r < iv.hi) iv = refine_root(cof, chain, iv, iv.width() / 4);

  for (int rounds = 0; rounds < 200; ++rounds) {
    std::vector<Rat> nodes = exact_nodes, vals;
    std::vector<RatInterval> all;
    for (const Rat& r : exact_nodes) all.push_back(RatInterval{r});
    for (const auto& iv : ivs) {
      nodes.push_back((iv.lo + iv.hi) / 2);
      all.push_back(iv);
    }
    for (const Rat& x : nodes) vals.push_back(g(x));
    Poly q = detail::lagrange_interpolant(nodes, vals);
    Rat bound(0);
    for (const auto& iv : all) {
      Rat gap = detail::hull_gap(q.eval_interval(iv), g.range_on(iv));
      if (gap > bound) bound = gap;
    }
    if (bound <= tol) return SpectralApprox{detail::eval_poly_at_matrix(q, m), bound, false};
    for (auto& iv : ivs) iv = refine_root(cof, chain, iv, iv.width() / 4);
  }
  throw resource_error("certified spectral refinement did not reach tolerance");
}

// ---------------------------------------------------------------------------
// operator norm enclosures

struct NormEnclosure {
  Rat lo, hi;

  bool exact() const { return lo == hi; }
  Rat width() const { return hi - lo; }
};

struct TopEigenvalue {
  RatInterval iv;
  bool exact;
};

// largest eigenvalue of a Hermitian matrix, exact when rational
inline TopEigenvalue lambda_max_enclosure(const Mat& m, const Rat& width_target) {
  Poly p = charpoly_hermitian(m);
  RootSplit rs = split_rational_roots(p);
  std::optional<Rat> top_rat;
  if (!rs.rational.empty()) top_rat = rs.rational.back().first;
  if (rs.cofactor.degree() == 0) return TopEigenvalue{RatInterval{*top_rat}, true};

  Poly cof = squarefree_part(rs.cofactor);
  auto chain = sturm_chain(cof);
  std::vector<RatInterval> ivs = isolate_real_roots(cof);
  RatInterval top = ivs.back();
  top = refine_root(cof, chain, top, width_target);
  if (top_rat) {
    while (top.contains(*top_rat)) top = refine_root(cof, chain, top, top.width() / 4);
    if (*top_rat > top.hi) return TopEigenvalue{RatInterval{*top_rat}, true};
  }
  return TopEigenvalue{top, false};
}

inline NormEnclosure op_norm(const Mat& a, const Rat& tol) {
  if (tol <= 0) throw value_domain_error("tolerance must be positive");
  if (a.is_zero()) return NormEnclosure{Rat(0), Rat(0)};
  Mat m = a.adjoint() * a;
  Rat width = tol;
  for (int rounds = 0; rounds < 200; ++rounds) {
    TopEigenvalue top = lambda_max_enclosure(m, width);
    if (top.exact) {
      auto [lo, hi] = sqrt_enclosure(top.iv.lo, tol);
      return NormEnclosure{lo, hi};
    }
    Rat inner = tol / 4;
    Rat lo = sqrt_enclosure(top.iv.lo, inner).first;
    Rat hi = sqrt_enclosure(top.iv.hi, inner).second;
    if (hi - lo <= tol) return NormEnclosure{lo, hi};
    width /= 16;
  }
  throw resource_error("operator norm refinement did not reach tolerance");
}

inline NormEnclosure op_norm(const BlockAlgebra& alg, const AlgebraElement& a, const Rat& tol) {
  check_element(alg, a);
  NormEnclosure best{Rat(0), Rat(0)};
  for (const Mat& blk : a.blocks) {
    NormEnclosure e = op_norm(blk, tol);
    if (e.lo > best.lo) best.lo = e.lo;
    if (e.hi > best.hi) best.hi = e.hi;
  }
  return best;
}

// ---------------------------------------------------------------------------
// the cutoff functions and the four-positive-parts decomposition

enum class CalcMode { exact, certified };

struct FEpsResult {
  AlgebraElement value;
  Rat bound;
  bool exact;
};

inline FEpsResult f_eps(const BlockAlgebra& alg, const AlgebraElement& a, const Rat& eps,
                        CalcMode mode, const Rat& tol) {
  check_element(alg, a);
  if (!a.is_hermitian()) throw value_domain_error("f_eps needs a hermitian element");
  if (eps < 0) throw value_domain_error("f_eps needs a nonnegative cutoff");
  ScalarFn g = ScalarFn::pos_cut(eps);
  FEpsResult out{zero_element(alg), Rat(0), true};
  for (int b = 0; b < alg.nblocks(); ++b) {
    SpectralApprox ap = apply_scalar_function(a.blocks[b], g, tol);
    if (mode == CalcMode::exact && !ap.exact)
      throw mode_error("block " + std::to_string(b) +
                       " has irrational spectrum; use certified mode");
    out.value.blocks[b] = ap.value;
    if (!ap.exact) out.exact = false;
    if (ap.bound > out.bound) out.bound = ap.bound;
  }
  return out;
}

struct FourParts {
  std::array<AlgebraElement, 4> parts;  // a = p0 - p1 + i p2 - i p3
  Rat bound;
  bool exact;
};

inline FourParts four_decomposition(const BlockAlgebra& alg, const AlgebraElement& a,
                                    CalcMode mode, const Rat& tol) {
  check_element(alg, a);
  AlgebraElement h = Rat(1, 2) * (a + a.adjoint());
  AlgebraElement k = GQ(Rat(0), Rat(-1, 2)) * (a - a.adjoint());
  FourParts out{{zero_element(alg), zero_element(alg), zero_element(alg), zero_element(alg)},
                Rat(0),
                true};
  const AlgebraElement* herm[2] = {&h, &k};
  for (int t = 0; t < 2; ++t)
    for (int s = 0; s < 2; ++s) {
      ScalarFn g = s == 0 ? ScalarFn::pos_part() : ScalarFn::neg_part();
      AlgebraElement part = zero_element(alg);
      for (int b = 0; b < alg.nblocks(); ++b) {
        SpectralApprox ap = apply_scalar_function(herm[t]->blocks[b], g, tol);
        if (mode == CalcMode::exact && !ap.exact)
          throw mode_error("irrational spectrum; use certified mode");
        part.blocks[b] = ap.value;
        if (!ap.exact) out.exact = false;
        if (ap.bound > out.bound) out.bound = ap.bound;
      }
      out.parts[2 * t + s] = std::move(part);
    }
  if (out.exact) {
    AlgebraElement rebuilt =
        out.parts[0] - out.parts[1] + GQ::i() * (out.parts[2] - out.parts[3]);
    if (!(rebuilt == a)) throw value_domain_error("four-part reconstruction failed");
  }
  return out;
}

// ---------------------------------------------------------------------------
// scaled-unit witness: a positive element plus its support projection gives
// b with f_1(b) = a, verified by exact algebraic identities

struct PedersenWitness {
  AlgebraElement b;
  AlgebraElement q;  // support projection of a
  Rat eps;
};

inline AlgebraElement support_projection(const BlockAlgebra& alg, const AlgebraElement& a) {
  check_element(alg, a);
  AlgebraElement q = zero_element(alg);
  for (int b = 0; b < alg.nblocks(); ++b) {
    int n = alg.dims[b];
    std::vector<std::vector<GQ>> cols;
    for (int j = 0; j < n; ++j) {
      std::vector<GQ> col(n);
      for (int i = 0; i < n; ++i) col[i] = a.blocks[b].at(i, j);
      cols.push_back(std::move(col));
    }
    q.blocks[b] = projector(Subspace::span_of(n, cols));
  }
  return q;
}

inline PedersenWitness pedersen_k0_witness(const BlockAlgebra& alg, const AlgebraElement& a) {
  if (!is_positive(alg, a)) throw value_domain_error("witness needs a positive element");
  AlgebraElement q = support_projection(alg, a);
  AlgebraElement b = a + q;
  AlgebraElement one = one_element(alg);
  // f_1(b) = a follows from: b vanishes off the support, b - 1 restricted to
  // the support equals a there, and the support spectrum of b sits above 1
  if (!((b * (one - q)).is_zero())) throw value_domain_error("witness support check failed");
  if (!((b - one) * q == a)) throw value_domain_error("witness identity check failed");
  return PedersenWitness{std::move(b), std::move(q), Rat(1)};
}

}  // namespace gelfkit
