#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <vector>

#include "gelfkit/gelfand.hpp"
#include "gelfkit/space.hpp"

using namespace gelfkit;

namespace {

std::mt19937 rng(0);

GQ random_gq() {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  return GQ(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
}

std::vector<GQ> random_line(int n) {
  while (true) {
    std::vector<GQ> v(n);
    for (auto& x : v) x = random_gq();
    for (const auto& x : v)
      if (!x.is_zero()) return v;
  }
}

// all 2^n ideals of the n-point commutative model
std::vector<LeftIdealRep> all_commutative_ideals(const BlockAlgebra& alg) {
  int n = alg.nblocks();
  std::vector<LeftIdealRep> out;
  for (unsigned s = 0; s < (1u << n); ++s) {
    LeftIdealRep l = zero_ideal(alg);
    for (int b = 0; b < n; ++b)
      if (s & (1u << b)) l.v[b] = Subspace::full(1);
    out.push_back(std::move(l));
  }
  return out;
}

Mask ideal_support_mask(const BlockAlgebra& alg, const LeftIdealRep& l) {
  Mask m = 0;
  for (int b : ideal_support(alg, l)) m |= Mask{1} << b;
  return m;
}

}  // namespace

TEST_CASE("points canonicalize and locate their block") {
  BlockAlgebra alg = make_block_algebra({2, 3});
  auto pt = make_point(alg, 0, {GQ(2), GQ(1)});
  CHECK(pt.line[0] == GQ(1));  // echelon normalization
  CHECK(pt.line[1] == GQ(Rat(1, 2)));
  CHECK(belongs_to(alg, pt) == 0);
  CHECK(make_point(alg, 0, {GQ(4), GQ(2)}) == pt);
  auto bc = point_bicommutant(alg, pt);
  CHECK(bc.v[0].dim() == 1);
  CHECK(bc.v[1].is_full());
  // the complement line is orthogonal under the hermitian pairing
  std::vector<GQ> w = bc.v[0].basis_vector(0);
  CHECK((GQ(1) * w[0].conj() + GQ(Rat(1, 2)) * w[1].conj()).is_zero());
  CHECK_THROWS_AS(make_point(alg, 0, {GQ(0), GQ(0)}), value_domain_error);
}

TEST_CASE("belongs_to matches the proper-block oracle on random points") {
  BlockAlgebra alg = make_block_algebra({3, 2});
  std::uniform_int_distribution<int> blk(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    int b = blk(rng);
    auto pt = make_point(alg, b, random_line(alg.dims[b]));
    CHECK(belongs_to(alg, pt) == b);
    LeftIdealRep bc = point_bicommutant(alg, pt);
    // definition-level: proper exactly at the home block, complement there
    for (int c = 0; c < alg.nblocks(); ++c) {
      if (c == b) {
        CHECK(bc.v[c].dim() == alg.dims[c] - 1);
        CHECK(meet(bc.v[c], Subspace::line(pt.line)).is_zero());
      } else {
        CHECK(bc.v[c].is_full());
      }
    }
    // and it is the commutant of the point ideal joined with distant blocks
    LeftIdealRep expected = ideal_join(ideal_commutant(alg, point_ideal(alg, pt)),
                                       ideal_commutant(alg, full_ideal(alg)));
    for (int c = 0; c < alg.nblocks(); ++c)
      if (c != b) expected.v[c] = Subspace::full(alg.dims[c]);
    CHECK(bc == expected);
  }
}

TEST_CASE("ideal lattice of the commutative model is the open lattice") {
  for (int n = 1; n <= 4; ++n) {
    BlockAlgebra alg = functions_algebra(n);
    IdealLattice il = build_ideal_lattice(alg, all_commutative_ideals(alg));
    FiniteSpace x = discrete_space([n] {
      std::vector<std::string> pts;
      for (int i = 0; i < n; ++i) pts.push_back("x" + std::to_string(i));
      return pts;
    }());
    SemiLattice ol = open_lattice(x);
    REQUIRE(il.lat.size() == ol.size());
    REQUIRE(il.lat.size() == (1 << n));

    // the support bijection is a semilattice isomorphism
    std::vector<int> phi(il.lat.size());
    std::set<int> image;
    for (int i = 0; i < il.lat.size(); ++i) {
      phi[i] = x.open_index(ideal_support_mask(alg, il.ideals[i]));
      REQUIRE(phi[i] >= 0);
      image.insert(phi[i]);
    }
    CHECK(static_cast<int>(image.size()) == il.lat.size());
    for (int i = 0; i < il.lat.size(); ++i)
      for (int j = 0; j < il.lat.size(); ++j) {
        CHECK(il.lat.leq(i, j) == ol.leq(phi[i], phi[j]));
        CHECK(phi[il.lat.meet(i, j)] == ol.meet(phi[i], phi[j]));
      }
    CHECK(phi[il.lat.zero] == ol.zero);

    // ultrafilters correspond to points
    auto ults = enumerate_ultrafilters(il.lat);
    CHECK(static_cast<int>(ults.size()) == n);
    for (const auto& u : ults) {
      int gen = -1;
      CHECK(is_principal(il.lat, u, &gen));
      CHECK(il.ideals[gen].total_rank(alg) == 1);
    }
  }
}

TEST_CASE("bicommutants of principal ultrafilters in a full matrix block") {
  BlockAlgebra alg = make_block_algebra({2, 3});
  auto l1 = line_ideal(alg, 0, {GQ(1), GQ(0)});
  auto l2 = line_ideal(alg, 0, {GQ(0), GQ(1)});
  auto l3 = line_ideal(alg, 1, {GQ(1), GQ(0), GQ(0)});
  IdealLattice il = build_ideal_lattice(alg, {l1, l2, l3, full_ideal(alg)});
  REQUIRE(il.lat.zero == 0);
  CHECK(il.ideals[0].is_zero());

  auto ults = enumerate_ultrafilters(il.lat);
  REQUIRE(ults.size() == 3);
  for (const auto& u : ults) {
    auto r = filter_bicommutant(alg, il, u);
    CHECK(r.proper);

    // definition-level brute force: join of commutants over the members
    LeftIdealRep acc = zero_ideal(alg);
    for (int e = 0; e < il.lat.size(); ++e)
      if (u.contains(e)) acc = ideal_join(acc, ideal_commutant(alg, il.ideals[e]));
    CHECK(r.span == acc);
  }

  // principal at L_V: the bicommutant is exactly L at the orthogonal line
  int i1 = il.index_of(l1);
  REQUIRE(i1 >= 0);
  auto r1 = filter_bicommutant(alg, il, upset(il.lat, i1));
  LeftIdealRep expected = full_ideal(alg);
  expected.v[0] = ortho_complement(Subspace::line({GQ(1), GQ(0)}));
  CHECK(r1.proper);
  CHECK(r1.span == expected);
  CHECK(r1.span.v[0] == Subspace::line({GQ(0), GQ(1)}));

  // the principal filter at the full ideal annihilates everything
  auto rz = filter_bicommutant(alg, il, upset(il.lat, il.lat.size() - 1));
  CHECK(rz.span.is_zero());
  CHECK(rz.proper);
  CHECK_THROWS_AS(filter_bicommutant(alg, il, FilterRep{{1, 2}}), value_domain_error);
}

TEST_CASE("commutative bicommutant lands on the vanishing ideal of the point") {
  BlockAlgebra alg = functions_algebra(3);
  IdealLattice il = build_ideal_lattice(alg, all_commutative_ideals(alg));
  auto ults = enumerate_ultrafilters(il.lat);
  REQUIRE(ults.size() == 3);
  for (const auto& u : ults) {
    int gen = -1;
    REQUIRE(is_principal(il.lat, u, &gen));
    std::vector<int> atom_supp = ideal_support(alg, il.ideals[gen]);
    REQUIRE(atom_supp.size() == 1);
    int x = atom_supp[0];
    auto r = filter_bicommutant(alg, il, u);
    CHECK(r.proper);
    // functions vanishing at x: full everywhere else, zero at x
    for (int b = 0; b < alg.nblocks(); ++b)
      CHECK(r.span.v[b].is_full() == (b != x));
  }
}

TEST_CASE("basic opens cut out point complements") {
  BlockAlgebra alg = make_block_algebra({2, 3});
  auto l1 = line_ideal(alg, 0, {GQ(1), GQ(0)});
  BasicOpen u1 = basic_open(alg, l1);
  CHECK(!u1.contains(make_point(alg, 0, {GQ(1), GQ(0)})));
  CHECK(u1.contains(make_point(alg, 0, {GQ(0), GQ(1)})));
  CHECK(u1.contains(make_point(alg, 0, {GQ(1), GQ(1)})));
  CHECK(u1.contains(make_point(alg, 1, {GQ(1), GQ(0), GQ(0)})));
  BasicOpen u0 = basic_open(alg, zero_ideal(alg));
  CHECK(u0.whole_space);
  CHECK(u0.contains(make_point(alg, 0, {GQ(2), GQ(1)})));
  CHECK(closed_complement(u1)[0].dim() == 1);
  CHECK(spectrally_equivalent(alg, l1, line_ideal(alg, 0, {GQ(0), GQ(1)})));
  CHECK(!spectrally_equivalent(alg, l1, line_ideal(alg, 1, {GQ(1), GQ(0), GQ(0)})));
}

TEST_CASE("space description separates commutative and matrix components") {
  auto g = describe_gelfand(make_block_algebra({2, 3}));
  CHECK(!g.commutative);
  REQUIRE(g.components.size() == 2);
  CHECK(g.components[1].dim == 3);
  CHECK(describe_gelfand(functions_algebra(3)).commutative);
  auto pts = sample_points(make_block_algebra({2}));
  CHECK(pts.size() >= 3);  // axes plus the ones line at least
  std::set<std::string> seen;
  for (const auto& p : pts) {
    std::string key;
    for (const GQ& z : p.line) key += gq_str(z) + ",";
    seen.insert(key);
  }
  CHECK(seen.size() == pts.size());  // no duplicate witnesses
}

TEST_CASE("morphisms: induced lattice and point maps") {
  BlockAlgebra c2 = make_block_algebra({1, 1});
  BlockAlgebra m2 = make_block_algebra({2});
  AlgebraElement d0 = zero_element(m2);
  d0.blocks[0].at(0, 0) = GQ(1);
  AlgebraElement d1 = zero_element(m2);
  d1.blocks[0].at(1, 1) = GQ(1);
  auto phi = make_morphism(c2, m2, {d0, d1});

  auto ind = induced_lattice_map(phi, line_ideal(c2, 0, {GQ(1)}));
  CHECK(ind.v[0] == Subspace::line({GQ(1), GQ(0)}));

  auto p0 = induced_point_map(phi, make_point(m2, 0, {GQ(1), GQ(0)}));
  REQUIRE(p0.ok);
  CHECK(p0.point.block == 0);
  auto p1 = induced_point_map(phi, make_point(m2, 0, {GQ(0), GQ(1)}));
  REQUIRE(p1.ok);
  CHECK(p1.point.block == 1);
  CHECK(!induced_point_map(phi, make_point(m2, 0, {GQ(1), GQ(1)})).ok);
  CHECK(!check_morphism_goodness(phi).total);

  // unitary conjugation is a good morphism
  Mat r(2, 2);
  r.at(0, 0) = GQ(Rat(3, 5));
  r.at(0, 1) = GQ(Rat(4, 5));
  r.at(1, 0) = GQ(Rat(-4, 5));
  r.at(1, 1) = GQ(Rat(3, 5));
  std::vector<AlgebraElement> ims;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      AlgebraElement e = zero_element(m2);
      e.blocks[0] = r * matrix_unit(m2, 0, i, j).blocks[0] * r.adjoint();
      ims.push_back(e);
    }
  auto ad = make_morphism(m2, m2, ims);
  auto rep2 = check_morphism_goodness(ad);
  CHECK(rep2.total);
  CHECK(rep2.opens_match);
  CHECK(rep2.good());

  // identity on a two-block algebra is good
  BlockAlgebra alg = make_block_algebra({2, 3});
  std::vector<AlgebraElement> idims;
  for (int b = 0; b < 2; ++b)
    for (int i = 0; i < alg.dims[b]; ++i)
      for (int j = 0; j < alg.dims[b]; ++j) idims.push_back(matrix_unit(alg, b, i, j));
  CHECK(check_morphism_goodness(make_morphism(alg, alg, idims)).good());
}
