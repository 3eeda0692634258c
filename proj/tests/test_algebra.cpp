#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "gelfkit/algebra.hpp"

using namespace gelfkit;

namespace {

std::mt19937 rng(0);

GQ random_gq() {
  std::uniform_int_distribution<int> num(-2, 2), den(1, 2);
  return GQ(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
}

std::vector<GQ> random_vector(int n) {
  std::vector<GQ> v(n);
  for (auto& x : v) x = random_gq();
  return v;
}

Subspace random_subspace(int n) {
  std::uniform_int_distribution<int> dims(0, n);
  int d = dims(rng);
  std::vector<std::vector<GQ>> vecs;
  for (int k = 0; k < d; ++k) vecs.push_back(random_vector(n));
  return Subspace::span_of(n, vecs);
}

LeftIdealRep random_ideal(const BlockAlgebra& alg) {
  LeftIdealRep l;
  for (int n : alg.dims) l.v.push_back(random_subspace(n));
  return l;
}

AlgebraElement random_element(const BlockAlgebra& alg) {
  AlgebraElement a = zero_element(alg);
  for (int b = 0; b < alg.nblocks(); ++b)
    for (int i = 0; i < alg.dims[b]; ++i)
      for (int j = 0; j < alg.dims[b]; ++j) a.blocks[b].at(i, j) = random_gq();
  return a;
}

const std::vector<std::vector<int>>& shape_pool() {
  static const std::vector<std::vector<int>> pool = {
      {1}, {2}, {3}, {4}, {1, 1}, {2, 1}, {2, 2}, {3, 1}, {2, 3}, {1, 1, 2}};
  return pool;
}

BlockAlgebra random_algebra() {
  std::uniform_int_distribution<std::size_t> pick(0, shape_pool().size() - 1);
  return make_block_algebra(shape_pool()[pick(rng)]);
}

// membership oracle straight from the definition L = A P_V: a P_V = a
bool in_ideal_by_projector(const BlockAlgebra& alg, const LeftIdealRep& l,
                           const AlgebraElement& a) {
  for (int b = 0; b < alg.nblocks(); ++b) {
    Mat p = projector(l.v[b]);
    if (!(a.blocks[b] * p == a.blocks[b])) return false;
  }
  return true;
}

// spanning set of the corner P A P as explicit compressed matrix units
std::vector<AlgebraElement> corner_spanning_set(const BlockAlgebra& alg, const LeftIdealRep& l) {
  std::vector<AlgebraElement> out;
  for (int b = 0; b < alg.nblocks(); ++b) {
    Mat p = projector(l.v[b]);
    for (int i = 0; i < alg.dims[b]; ++i)
      for (int j = 0; j < alg.dims[b]; ++j) {
        AlgebraElement u = matrix_unit(alg, b, i, j);
        u.blocks[b] = p * u.blocks[b] * p;
        if (!u.blocks[b].is_zero()) out.push_back(std::move(u));
      }
  }
  return out;
}

}  // namespace

TEST_CASE("matrix unit relations and element plumbing") {
  BlockAlgebra alg = make_block_algebra({2, 3});
  CHECK(alg.total_dim() == 13);
  AlgebraElement e01 = matrix_unit(alg, 0, 0, 1);
  AlgebraElement e11 = matrix_unit(alg, 0, 1, 1);
  AlgebraElement e10 = matrix_unit(alg, 0, 1, 0);
  CHECK(e01 * e10 == matrix_unit(alg, 0, 0, 0));
  CHECK(e01 * e11 == e01);
  CHECK((e11 * e01).is_zero());
  CHECK(e01.adjoint() == e10);
  AlgebraElement one = one_element(alg);
  CHECK(one * e01 == e01);
  CHECK(is_central(alg, one));
  CHECK(!is_central(alg, e01));
  AlgebraElement r = random_element(alg);
  CHECK(element_from_vector(alg, vectorize(alg, r)) == r);
  CHECK_THROWS_AS(check_element(make_block_algebra({2}), r), structural_error);
  CHECK_THROWS_AS(matrix_unit(alg, 2, 0, 0), structural_error);
}

TEST_CASE("ideal membership matches the projector identity") {
  for (int trial = 0; trial < 60; ++trial) {
    BlockAlgebra alg = random_algebra();
    LeftIdealRep l = random_ideal(alg);
    for (const AlgebraElement& g : ideal_spanning_set(alg, l)) {
      CHECK(element_in_ideal(alg, l, g));
      CHECK(in_ideal_by_projector(alg, l, g));
      // left multiples stay inside
      AlgebraElement prod = random_element(alg) * g;
      CHECK(element_in_ideal(alg, l, prod));
    }
    AlgebraElement probe = random_element(alg);
    CHECK(element_in_ideal(alg, l, probe) == in_ideal_by_projector(alg, l, probe));
  }
}

TEST_CASE("ideal recovery validates true left ideals and rejects others") {
  BlockAlgebra alg = make_block_algebra({2, 2});
  LeftIdealRep l = line_ideal(alg, 0, {GQ(1), GQ(2)});
  auto gens = ideal_spanning_set(alg, l);
  CHECK(ideal_of_span(alg, gens) == l);
  // a single matrix is generally not a left ideal
  CHECK_THROWS_AS(ideal_of_span(alg, {matrix_unit(alg, 0, 0, 0)}), value_domain_error);
}

TEST_CASE("hereditary corner round-trips on random ideals") {
  int trials = 0;
  while (trials < 200) {
    BlockAlgebra alg = random_algebra();
    LeftIdealRep l = random_ideal(alg);
    ++trials;

    // representation round trip
    HereditaryRep h = hereditary_of_ideal(l);
    CHECK(ideal_of_hereditary(h) == l);

    // membership equivalence: a in corner iff a and a* lie in the ideal
    for (int probe = 0; probe < 3; ++probe) {
      AlgebraElement a = random_element(alg);
      bool corner = element_in_hereditary(alg, h, a);
      bool both = element_in_ideal(alg, l, a) && element_in_ideal(alg, l, a.adjoint());
      CHECK(corner == both);
    }
    for (const AlgebraElement& b : corner_spanning_set(alg, l)) {
      CHECK(element_in_hereditary(alg, h, b));
      CHECK(element_in_ideal(alg, l, b));
      CHECK(element_in_ideal(alg, l, b.adjoint()));
    }

    // the left ideal generated by the corner is the original ideal
    std::vector<AlgebraElement> corner_gens = corner_spanning_set(alg, l);
    if (!corner_gens.empty()) {
      std::vector<AlgebraElement> products = corner_gens;
      for (int b = 0; b < alg.nblocks(); ++b)
        for (int i = 0; i < alg.dims[b]; ++i)
          for (int j = 0; j < alg.dims[b]; ++j)
            for (const AlgebraElement& g : corner_gens) {
              AlgebraElement prod = matrix_unit(alg, b, i, j) * g;
              if (!prod.is_zero()) products.push_back(std::move(prod));
            }
      CHECK(ideal_of_span(alg, products) == l);
    } else {
      CHECK(l.is_zero());
    }
  }
}

TEST_CASE("commutant laws on random ideals") {
  int trials = 0;
  while (trials < 200) {
    BlockAlgebra alg = random_algebra();
    LeftIdealRep x = random_ideal(alg);
    LeftIdealRep y = random_ideal(alg);
    ++trials;

    LeftIdealRep cx = ideal_commutant(alg, x);

    // annihilation: l a* = 0 for spanning pairs
    for (const AlgebraElement& l : ideal_spanning_set(alg, x))
      for (const AlgebraElement& a : ideal_spanning_set(alg, cx))
        CHECK((l * a.adjoint()).is_zero());

    // maximality: anything annihilated by the spanning set lies in the commutant
    AlgebraElement probe = random_element(alg);
    bool annihilated = true;
    for (const AlgebraElement& l : ideal_spanning_set(alg, x))
      if (!(l * probe.adjoint()).is_zero()) annihilated = false;
    CHECK(annihilated == element_in_ideal(alg, cx, probe));

    // dimension count per block
    for (int b = 0; b < alg.nblocks(); ++b)
      CHECK(cx.v[b].dim() == alg.dims[b] - x.v[b].dim());

    // L <= L'' with equality in finite dimension
    CHECK(ideal_leq(x, ideal_commutant(alg, cx)));
    CHECK(ideal_commutant(alg, cx) == x);

    // order reversal
    if (ideal_leq(x, y)) CHECK(ideal_leq(ideal_commutant(alg, y), cx));
    LeftIdealRep m = ideal_meet(x, y);
    CHECK(ideal_leq(cx, ideal_commutant(alg, m)));
    CHECK(ideal_commutant(alg, ideal_join(x, y)) ==
          ideal_meet(cx, ideal_commutant(alg, y)));
  }
}

TEST_CASE("commutant laws on the three-line sublattice of a full matrix block") {
  BlockAlgebra alg = make_block_algebra({2});
  LeftIdealRep l1 = line_ideal(alg, 0, {GQ(1), GQ(0)});
  LeftIdealRep l2 = line_ideal(alg, 0, {GQ(0), GQ(1)});
  LeftIdealRep l3 = line_ideal(alg, 0, {GQ(1), GQ(1)});
  std::vector<LeftIdealRep> lattice = {zero_ideal(alg), l1, l2, l3, full_ideal(alg)};

  // pinned complements
  CHECK(ideal_commutant(alg, l1) == l2);
  CHECK(ideal_commutant(alg, l2) == l1);
  CHECK(ideal_commutant(alg, l3) == line_ideal(alg, 0, {GQ(1), GQ(-1)}));
  CHECK(ideal_commutant(alg, zero_ideal(alg)) == full_ideal(alg));
  CHECK(ideal_commutant(alg, full_ideal(alg)) == zero_ideal(alg));

  for (const LeftIdealRep& x : lattice) {
    CHECK(ideal_commutant(alg, ideal_commutant(alg, x)) == x);
    for (const LeftIdealRep& y : lattice) {
      if (ideal_leq(x, y))
        CHECK(ideal_leq(ideal_commutant(alg, y), ideal_commutant(alg, x)));
      CHECK(ideal_commutant(alg, ideal_join(x, y)) ==
            ideal_meet(ideal_commutant(alg, x), ideal_commutant(alg, y)));
    }
  }

  // pairwise meets of distinct lines vanish; the lattice is closed under meet
  CHECK(ideal_meet(l1, l2).is_zero());
  CHECK(ideal_meet(l1, l3).is_zero());
  CHECK(ideal_meet(l2, l3).is_zero());
}

TEST_CASE("center basis certified by a commutation solve") {
  for (const auto& shape : shape_pool()) {
    BlockAlgebra alg = make_block_algebra(shape);
    int n = alg.total_dim();

    // constraints: a u - u a = 0 for every matrix unit u, unknown a vectorized
    std::vector<AlgebraElement> units;
    for (int b = 0; b < alg.nblocks(); ++b)
      for (int i = 0; i < alg.dims[b]; ++i)
        for (int j = 0; j < alg.dims[b]; ++j) units.push_back(matrix_unit(alg, b, i, j));
    Mat sys(static_cast<int>(units.size()) * n, n);
    for (std::size_t u = 0; u < units.size(); ++u)
      for (int k = 0; k < n; ++k) {
        std::vector<GQ> basis_vec(n);
        basis_vec[k] = GQ(1);
        AlgebraElement ek = element_from_vector(alg, basis_vec);
        std::vector<GQ> comm = vectorize(alg, ek * units[u] - units[u] * ek);
        for (int r = 0; r < n; ++r) sys.at(static_cast<int>(u) * n + r, k) = comm[r];
      }
    Mat ker = kernel_rows(sys);

    CHECK(ker.rows == alg.nblocks());
    std::vector<std::vector<GQ>> kernel_vecs;
    for (int r = 0; r < ker.rows; ++r) {
      std::vector<GQ> v(n);
      for (int j = 0; j < n; ++j) v[j] = ker.at(r, j);
      CHECK(is_central(alg, element_from_vector(alg, v)));
      kernel_vecs.push_back(std::move(v));
    }
    Subspace solved = Subspace::span_of(n, kernel_vecs);
    for (const AlgebraElement& c : center_basis(alg)) {
      CHECK(is_central(alg, c));
      CHECK(solved.contains(vectorize(alg, c)));
    }
  }
}

TEST_CASE("spectrum side helpers") {
  BlockAlgebra alg = make_block_algebra({2, 3});
  CHECK(spectrum_size(alg) == 2);
  CHECK(rep_block(alg, matrix_unit(alg, 1, 0, 2), 1).at(0, 2) == GQ(1));
  CHECK_THROWS_AS(rep_block(alg, zero_element(alg), 2), structural_error);
  LeftIdealRep l = line_ideal(alg, 1, {GQ(1), GQ(0), GQ(0)});
  CHECK(ideal_support(alg, l) == (std::vector<int>{1}));
  CHECK(!is_connected_algebra(alg));
  CHECK(is_connected_algebra(make_block_algebra({3})));
  CHECK(is_abelian_algebra(functions_algebra(4)));
  CHECK(!is_abelian_algebra(alg));
  AlgebraElement r1 = matrix_unit(alg, 0, 0, 0) + matrix_unit(alg, 1, 1, 1);
  CHECK(is_abelian_element(alg, r1));
  CHECK(!is_abelian_element(alg, one_element(alg)));
}
