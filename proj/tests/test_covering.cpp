#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <utility>
#include <vector>

#include "gelfkit/covering.hpp"

using namespace gelfkit;

namespace {

MorphismData diagonal_lift(const BlockAlgebra& a, const BlockAlgebra& at, int copies) {
  std::vector<AlgebraElement> images;
  for (int i = 0; i < a.dims[0]; ++i)
    for (int j = 0; j < a.dims[0]; ++j) {
      AlgebraElement im = zero_element(at);
      for (int t = 0; t < copies; ++t) im.blocks[t].at(i, j) = GQ(1);
      images.push_back(im);
    }
  return make_morphism(a, at, images);
}

Automorphism block_cycle(const BlockAlgebra& alg, int shift) {
  int k = alg.nblocks();
  std::vector<int> perm(k);
  std::vector<Mat> conj;
  for (int b = 0; b < k; ++b) {
    perm[b] = (b + shift) % k;
    conj.push_back(Mat::identity(alg.dims[b]));
  }
  return make_automorphism(alg, perm, conj);
}

Automorphism block_swap01(const BlockAlgebra& alg) {
  std::vector<int> perm = {1, 0};
  for (int b = 2; b < alg.nblocks(); ++b) perm.push_back(b);
  std::vector<Mat> conj;
  for (int b = 0; b < alg.nblocks(); ++b) conj.push_back(Mat::identity(alg.dims[b]));
  return make_automorphism(alg, perm, conj);
}

CoveringQuadruple swap_quadruple() {
  BlockAlgebra m2 = make_block_algebra({2});
  BlockAlgebra m2m2 = make_block_algebra({2, 2});
  CoveringQuadruple swap;
  swap.base = m2;
  swap.cover = m2m2;
  swap.lift = diagonal_lift(m2, m2m2, 2);
  swap.group = make_aut_group(m2m2, {block_cycle(m2m2, 1)});
  Mat u = Mat::identity(2);
  u.at(1, 1) = GQ(-1);
  swap.ambient = {make_automorphism(m2m2, {0, 1}, {u, Mat::identity(2)})};
  return swap;
}

}  // namespace

TEST_CASE("swap quadruple is a covering") {
  CoveringQuadruple swap = swap_quadruple();
  CHECK(swap.group.order() == 2);

  PrecoveringVerdict pv = check_precovering(swap);
  CHECK(pv.unital);
  CHECK(pv.stabilizer);
  CHECK(pv.fixed_points);
  CHECK(pv.ok());
  CHECK(pv.base_connected);
  CHECK(!pv.cover_connected);

  // ten rank-one corners, each evenly covered by orthogonal rank-one pieces
  std::vector<std::vector<GQ>> lines = {
      {GQ(1), GQ(0)},
      {GQ(0), GQ(1)},
      {GQ(1), GQ(1)},
      {GQ(1), GQ(-1)},
      {GQ(Rat(3, 5)), GQ(Rat(4, 5))},
      {GQ(1), GQ(Rat(0), Rat(1))},
      {GQ(1), GQ(Rat(0), Rat(-1))},
      {GQ(2), GQ(Rat(1, 3))},
      {GQ(1), GQ(Rat(1, 2), Rat(1, 2))},
      {GQ(Rat(5, 13)), GQ(Rat(12, 13))}};
  for (const auto& l : lines) {
    EvenlyCoveredVerdict ev = check_evenly_covered(swap, HereditaryRep{{Subspace::line(l)}});
    CHECK(ev.covered);
    for (const auto& w : ev.witnesses) {
      CHECK(w.orthogonal);
      CHECK(w.space.dim() == 1);
    }
  }

  // the full corner is not proper
  CHECK_THROWS_AS(check_evenly_covered(swap, HereditaryRep{{Subspace::full(2)}}),
                  value_domain_error);

  std::vector<UltrafilterPoint> pts = sample_points(swap.base);
  pts.push_back(make_point(swap.base, 0, {GQ(2), GQ(Rat(1, 3))}));
  pts.push_back(make_point(swap.base, 0, {GQ(1), GQ(Rat(0), Rat(-4))}));
  UnitalCoveringVerdict uv = check_unital_covering(swap, pts);
  CHECK(uv.ok);
}

TEST_CASE("identity covering with the trivial group") {
  BlockAlgebra m2 = make_block_algebra({2});
  CoveringQuadruple triv;
  triv.base = m2;
  triv.cover = m2;
  std::vector<AlgebraElement> images;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) images.push_back(matrix_unit(m2, 0, i, j));
  triv.lift = make_morphism(m2, m2, images);
  triv.group = make_aut_group(m2, {});
  CHECK(check_precovering(triv).ok());
  EvenlyCoveredVerdict tv =
      check_evenly_covered(triv, HereditaryRep{{Subspace::line({GQ(0), GQ(1)})}});
  CHECK(tv.covered);
  CHECK(check_unital_covering(triv, sample_points(m2)).ok);
}

TEST_CASE("corner lifts fail the unital precondition") {
  BlockAlgebra m2 = make_block_algebra({2});
  BlockAlgebra m3 = make_block_algebra({3});
  std::vector<AlgebraElement> images;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      AlgebraElement im = zero_element(m3);
      im.blocks[0].at(i, j) = GQ(1);
      images.push_back(im);
    }
  CoveringQuadruple bad;
  bad.base = m2;
  bad.cover = m3;
  bad.lift = make_morphism(m2, m3, images, false);
  bad.group = make_aut_group(m3, {});
  PrecoveringVerdict bv = check_precovering(bad);
  CHECK(!bv.unital);
  CHECK(!bv.ok());
}

TEST_CASE("non-free actions break the covering equations") {
  BlockAlgebra m2 = make_block_algebra({2});
  BlockAlgebra m23 = make_block_algebra({2, 2, 2});
  CoveringQuadruple nf;
  nf.base = m2;
  nf.cover = m23;
  nf.lift = diagonal_lift(m2, m23, 3);
  nf.group = make_aut_group(m23, {block_cycle(m23, 1), block_swap01(m23)});
  CHECK(nf.group.order() == 6);
  CHECK(check_precovering(nf).ok());
  UnitalCoveringVerdict uv = check_unital_covering(nf, sample_points(m2));
  CHECK(!uv.ok);
  CHECK(!uv.unsatisfied.empty());

  nf.group = make_aut_group(m23, {block_cycle(m23, 1)});
  CHECK(check_unital_covering(nf, sample_points(m2)).ok);
}

TEST_CASE("non-unital coverings sit inside essential summands") {
  NonUnitalCovering nc;
  nc.ambient = swap_quadruple();
  nc.base_blocks = {0};
  nc.cover_blocks = {0, 1};
  NonUnitalVerdict nv = check_covering_nonunital(nc);
  CHECK(nv.base_essential);
  CHECK(nv.cover_essential);
  CHECK(nv.restriction);
  CHECK(nv.action_restricts);
  CHECK(nv.action_determined);
  CHECK(nv.ok());

  // a summand with a complement acting on it is not essential
  BlockAlgebra m2c = make_block_algebra({2, 1});
  CoveringQuadruple amb;
  amb.base = m2c;
  amb.cover = m2c;
  std::vector<AlgebraElement> images;
  for (int b = 0; b < 2; ++b)
    for (int i = 0; i < m2c.dims[b]; ++i)
      for (int j = 0; j < m2c.dims[b]; ++j) images.push_back(matrix_unit(m2c, b, i, j));
  amb.lift = make_morphism(m2c, m2c, images);
  amb.group = make_aut_group(m2c, {});
  NonUnitalCovering off;
  off.ambient = amb;
  off.base_blocks = {0};
  off.cover_blocks = {0, 1};
  NonUnitalVerdict ov = check_covering_nonunital(off);
  CHECK(!ov.base_essential);
  CHECK(!ov.ok());
}

TEST_CASE("fundamental groups of the standard two-complexes") {
  // wedges of up to five circles are free of matching rank
  for (int k = 1; k <= 5; ++k) {
    std::vector<std::pair<int, int>> loops(k, {0, 0});
    TwoComplex wedge = make_two_complex({"v"}, loops, {});
    GroupPresentation p = pi1_presentation(wedge);
    CHECK(static_cast<int>(p.generators.size()) == k);
    CHECK(p.relators.empty());
    CHECK(p.abelianization == AbGroup::free_group(k));
    CHECK(isomorphic(two_complex_homology(wedge)[1], p.abelianization));
  }

  TwoComplex torus = make_two_complex({"v"}, {{0, 0}, {0, 0}}, {{1, 2, -1, -2}});
  GroupPresentation pt = pi1_presentation(torus);
  CHECK(pt.abelianization == AbGroup::free_group(2));
  CHECK(pt.relators.size() == 1);
  CHECK(pt.relators[0].size() == 4);
  CHECK(isomorphic(two_complex_homology(torus)[1], pt.abelianization));
  std::vector<AbGroup> hco = two_complex_cohomology(torus);
  CHECK(hco[0] == AbGroup::free_group(1));
  CHECK(hco[1] == AbGroup::free_group(2));
  CHECK(hco[2] == AbGroup::free_group(1));

  TwoComplex klein = make_two_complex({"v"}, {{0, 0}, {0, 0}}, {{1, 2, 1, -2}});
  GroupPresentation pk = pi1_presentation(klein);
  CHECK(pk.abelianization == AbGroup::canonical(1, {Int(2)}));
  CHECK(isomorphic(two_complex_homology(klein)[1], pk.abelianization));

  CHECK_THROWS_AS(pi1_presentation(make_two_complex({"v", "w"}, {}, {})),
                  value_domain_error);
}

TEST_CASE("graph coverings and deck transformations") {
  Graph tri = make_graph({"0", "1", "2"}, {{0, 1}, {1, 2}, {2, 0}});
  Graph hex = make_graph({"0", "1", "2", "3", "4", "5"},
                         {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  GraphMap p = make_graph_map(hex, tri, {0, 1, 2, 0, 1, 2}, {0, 1, 2, 0, 1, 2},
                              {0, 0, 0, 0, 0, 0});
  GraphCoveringVerdict gv = is_graph_covering(p);
  CHECK(gv.covering);
  std::vector<GraphMap> deck = deck_transformations(p);
  CHECK(deck.size() == 2);
  CHECK(6 % deck.size() == 0);

  GraphMap idm = make_graph_map(tri, tri, {0, 1, 2}, {0, 1, 2}, {0, 0, 0});
  CHECK(is_graph_covering(idm).covering);
  CHECK(deck_transformations(idm).size() == 1);

  Graph path = make_graph({"a", "b", "c"}, {{0, 1}, {1, 2}});
  Graph edge = make_graph({"x", "y"}, {{0, 1}});
  GraphMap fold = make_graph_map(path, edge, {0, 1, 0}, {0, 0}, {0, 1});
  GraphCoveringVerdict fv = is_graph_covering(fold);
  CHECK(!fv.covering);
  CHECK(fv.witness_vertex == 1);
}

TEST_CASE("coverings factor through intermediate coverings") {
  Graph tri = make_graph({"0", "1", "2"}, {{0, 1}, {1, 2}, {2, 0}});
  Graph hex = make_graph({"0", "1", "2", "3", "4", "5"},
                         {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  GraphMap p = make_graph_map(hex, tri, {0, 1, 2, 0, 1, 2}, {0, 1, 2, 0, 1, 2},
                              {0, 0, 0, 0, 0, 0});

  std::vector<std::pair<int, int>> e12;
  for (int i = 0; i < 12; ++i) e12.push_back({i, (i + 1) % 12});
  std::vector<std::string> v12;
  for (int i = 0; i < 12; ++i) v12.push_back(std::to_string(i));
  Graph c12 = make_graph(v12, e12);
  std::vector<int> vm12(12), em12(12), fl12(12, 0);
  for (int i = 0; i < 12; ++i) vm12[i] = i % 3, em12[i] = i % 3;
  GraphMap p12 = make_graph_map(c12, tri, vm12, em12, fl12);
  CHECK(is_graph_covering(p12).covering);

  auto fac = covering_factorization(p12, p);
  REQUIRE(fac.has_value());
  CHECK(is_graph_covering(*fac).covering);
  CHECK(!covering_factorization(p, p12).has_value());
  CHECK(covering_factorization(p, p).has_value());

  // incomparable double covers of the wedge of two circles
  Graph wedge = make_graph({"v"}, {{0, 0}, {0, 0}});
  Graph xa = make_graph({"0", "1"}, {{0, 1}, {1, 0}, {0, 0}, {1, 1}});
  GraphMap pa = make_graph_map(xa, wedge, {0, 0}, {0, 0, 1, 1}, {0, 0, 0, 0});
  Graph xb = make_graph({"0", "1"}, {{0, 0}, {1, 1}, {0, 1}, {1, 0}});
  GraphMap pb = make_graph_map(xb, wedge, {0, 0}, {0, 0, 1, 1}, {0, 0, 0, 0});
  CHECK(is_graph_covering(pa).covering);
  CHECK(is_graph_covering(pb).covering);
  CHECK(!covering_factorization(pa, pb).has_value());
  CHECK(!covering_factorization(pb, pa).has_value());
}
