#pragma once

// *-automorphisms of block algebras: a block permutation together with one
// conjugator per target block.  Conjugators are unitary up to a rational
// scalar, W*W = lambda I, so the action a -> W a W* / lambda stays inside the
// Gaussian rationals.
//
// The uniform distance to the identity is reported as an enclosure.  The
// lower bound comes from a deterministic net of exactly norm-one elements;
// the upper bound uses the derivation estimate: for any scalar c,
// ||W a W*/lambda - a|| = ||[W, a]|| / sqrt(lambda) <= 2 ||W - c|| ||a|| /
// sqrt(lambda), minimized over a rational candidate set plus a shrinking-step
// descent.  Both sides are rigorous; when they disagree by more than the
// tolerance the result is flagged as not attained by the net.

#include "gelfkit/spectral.hpp"

#include <vector>

namespace gelfkit {

struct Automorphism {
  std::vector<int> perm;   // source block b lands in block perm[b]
  std::vector<Mat> conj;   // conj[t] acts on the content arriving at block t
  std::vector<Rat> scale;  // conj[t]* conj[t] = scale[t] I
};

inline Automorphism make_automorphism(const BlockAlgebra& alg, std::vector<int> perm,
                                      std::vector<Mat> conj) {
  int k = alg.nblocks();
  if (static_cast<int>(perm.size()) != k || static_cast<int>(conj.size()) != k)
    throw structural_error("automorphism data has wrong block count");
  std::vector<bool> hit(k, false);
  for (int b = 0; b < k; ++b) {
    if (perm[b] < 0 || perm[b] >= k || hit[perm[b]])
      throw structural_error("block map is not a permutation");
    hit[perm[b]] = true;
    if (alg.dims[b] != alg.dims[perm[b]])
      throw structural_error("permutation does not preserve block dimensions");
  }
  Automorphism a;
  a.perm = std::move(perm);
  a.conj = std::move(conj);
  a.scale.resize(k);
  for (int t = 0; t < k; ++t) {
    const Mat& w = a.conj[t];
    if (w.rows != alg.dims[t] || w.cols != alg.dims[t])
      throw structural_error("conjugator has wrong shape");
    Mat g = w.adjoint() * w;
    GQ lam = g.at(0, 0);
    if (!lam.is_real() || lam.re <= 0)
      throw structural_error("conjugator is not unitary up to a positive scalar");
    if (!(g == lam * Mat::identity(w.rows)))
      throw structural_error("conjugator is not unitary up to a scalar");
    a.scale[t] = lam.re;
  }
  return a;
}

inline Automorphism identity_automorphism(const BlockAlgebra& alg) {
  std::vector<int> perm(alg.nblocks());
  std::vector<Mat> conj;
  for (int b = 0; b < alg.nblocks(); ++b) {
    perm[b] = b;
    conj.push_back(Mat::identity(alg.dims[b]));
  }
  return make_automorphism(alg, std::move(perm), std::move(conj));
}

inline AlgebraElement apply_automorphism(const BlockAlgebra& alg, const Automorphism& f,
                                         const AlgebraElement& a) {
  check_element(alg, a);
  std::vector<int> pre(alg.nblocks());
  for (int b = 0; b < alg.nblocks(); ++b) pre[f.perm[b]] = b;
  AlgebraElement out = zero_element(alg);
  for (int t = 0; t < alg.nblocks(); ++t)
    out.blocks[t] =
        GQ(Rat(Rat(1) / f.scale[t])) * (f.conj[t] * a.blocks[pre[t]] * f.conj[t].adjoint());
  return out;
}

inline Automorphism compose(const BlockAlgebra& alg, const Automorphism& f,
                            const Automorphism& g) {
  std::vector<int> pre_f(alg.nblocks());
  for (int b = 0; b < alg.nblocks(); ++b) pre_f[f.perm[b]] = b;
  std::vector<int> perm(alg.nblocks());
  std::vector<Mat> conj(alg.nblocks(), Mat(0, 0));
  for (int b = 0; b < alg.nblocks(); ++b) perm[b] = f.perm[g.perm[b]];
  for (int t = 0; t < alg.nblocks(); ++t) conj[t] = f.conj[t] * g.conj[pre_f[t]];
  return make_automorphism(alg, std::move(perm), std::move(conj));
}

inline Automorphism inverse(const BlockAlgebra& alg, const Automorphism& f) {
  std::vector<int> perm(alg.nblocks());
  std::vector<Mat> conj(alg.nblocks(), Mat(0, 0));
  for (int b = 0; b < alg.nblocks(); ++b) perm[f.perm[b]] = b;
  for (int s = 0; s < alg.nblocks(); ++s) conj[s] = f.conj[f.perm[s]].adjoint();
  return make_automorphism(alg, std::move(perm), std::move(conj));
}

inline bool equal_as_maps(const BlockAlgebra& alg, const Automorphism& f,
                          const Automorphism& g) {
  for (int b = 0; b < alg.nblocks(); ++b)
    for (int i = 0; i < alg.dims[b]; ++i)
      for (int j = 0; j < alg.dims[b]; ++j) {
        AlgebraElement u = matrix_unit(alg, b, i, j);
        if (!(apply_automorphism(alg, f, u) == apply_automorphism(alg, g, u))) return false;
      }
  return true;
}

inline bool is_identity_map(const BlockAlgebra& alg, const Automorphism& f) {
  return equal_as_maps(alg, f, identity_automorphism(alg));
}

// ---------------------------------------------------------------------------
// uniform distance to the identity

struct AutDistance {
  NormEnclosure enc;
  bool attained;  // net lower bound meets the upper bound within tolerance
};

namespace detail {

// norm-one probes inside one block: matrix units, the exact-norm rank-one
// units built from e_i +- e_j and e_i +- i e_j, and Pythagorean-rotated units
inline std::vector<Mat> block_probe_net(int n) {
  std::vector<Mat> out;
  auto unit = [&](int i, int j) {
    Mat m(n, n);
    m.at(i, j) = GQ(1);
    return m;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.push_back(unit(i, j));
  std::vector<GQ> phases = {GQ(1), GQ(-1), GQ::i(), GQ(0) - GQ::i()};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (const GQ& pv : phases)
        for (const GQ& pw : phases) {
          // (e_i + pv e_j)(e_i + pw e_j)^* / 2 has operator norm exactly 1
          Mat m(n, n);
          m.at(i, i) = GQ(Rat(1, 2));
          m.at(i, j) = pw.conj() * GQ(Rat(1, 2));
          m.at(j, i) = pv * GQ(Rat(1, 2));
          m.at(j, j) = pv * pw.conj() * GQ(Rat(1, 2));
          out.push_back(std::move(m));
        }
  if (n >= 2) {
    Mat r = Mat::identity(n);
    r.at(0, 0) = GQ(Rat(3, 5));
    r.at(0, 1) = GQ(Rat(4, 5));
    r.at(1, 0) = GQ(Rat(-4, 5));
    r.at(1, 1) = GQ(Rat(3, 5));
    out.push_back(r * unit(0, 1) * r.adjoint());
    out.push_back(r * unit(0, 0) * r.adjoint());
  }
  return out;
}

// rigorous bound 2 ||w - c|| / sqrt(lambda) for the distance of a block
// conjugation to the identity
inline Rat scalar_center_bound(const Mat& w, const Rat& lambda, const GQ& c, const Rat& tol) {
  NormEnclosure num = op_norm(w - c * Mat::identity(w.rows), tol);
  Rat slo = sqrt_enclosure(lambda, tol).first;
  return Rat(2 * num.hi / slo);
}

inline Rat block_upper_bound(const Mat& w, const Rat& lambda, const Rat& tol) {
  int n = w.rows;
  GQ tr = w.trace();
  GQ best_c(Rat(tr.re / n), Rat(tr.im / n));
  Rat best = scalar_center_bound(w, lambda, best_c, tol);
  std::vector<GQ> cands;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      cands.push_back(GQ(Rat(1, 2)) * (w.at(i, i) + w.at(j, j)));
  for (const GQ& c : cands) {
    Rat v = scalar_center_bound(w, lambda, c, tol);
    if (v < best) {
      best = v;
      best_c = c;
    }
  }
  // shrinking-step descent; every probe yields a valid bound
  Rat step(1, 2);
  Rat floor_step = tol / 8;
  while (step > floor_step) {
    static const std::array<std::pair<int, int>, 4> dirs = {
        {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    bool moved = true;
    while (moved) {
      moved = false;
      for (auto [dr, di] : dirs) {
        GQ c = best_c + GQ(Rat(dr) * step, Rat(di) * step);
        Rat v = scalar_center_bound(w, lambda, c, tol);
        if (v < best) {
          best = v;
          best_c = c;
          moved = true;
        }
      }
    }
    step /= 2;
  }
  return best < 2 ? best : Rat(2);
}

}  // namespace detail

inline AutDistance aut_uniform_distance(const BlockAlgebra& alg, const Automorphism& f,
                                        const Rat& tol) {
  if (tol <= 0) throw value_domain_error("tolerance must be positive");
  for (int b = 0; b < alg.nblocks(); ++b)
    if (f.perm[b] != b) {
      // a = 1_b - 1_{perm b} has norm one and is moved at distance exactly 2
      return AutDistance{NormEnclosure{Rat(2), Rat(2)}, true};
    }
  Rat lo(0), hi(0);
  for (int b = 0; b < alg.nblocks(); ++b) {
    const Mat& w = f.conj[b];
    if (w == w.at(0, 0) * Mat::identity(alg.dims[b])) continue;  // scalar block acts trivially
    Rat inner_tol = tol / 4;
    Rat block_lo(0);
    for (const Mat& probe : detail::block_probe_net(alg.dims[b])) {
      Mat moved = GQ(Rat(Rat(1) / f.scale[b])) * (w * probe * w.adjoint()) - probe;
      NormEnclosure e = op_norm(moved, inner_tol);
      if (e.lo > block_lo) block_lo = e.lo;
    }
    Rat block_hi = detail::block_upper_bound(w, f.scale[b], inner_tol);
    if (block_hi < block_lo) block_hi = block_lo;  // both rigorous, intersect
    if (block_lo > lo) lo = block_lo;
    if (block_hi > hi) hi = block_hi;
  }
  return AutDistance{NormEnclosure{lo, hi}, hi - lo <= tol};
}

}  // namespace gelfkit
