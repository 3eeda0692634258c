#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "gelfkit/blowup.hpp"

using namespace gelfkit;

namespace {

std::mt19937 rng(0);

GQ random_gq() {
  std::uniform_int_distribution<int> num(-2, 2), den(1, 2);
  return GQ(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
}

AlgebraElement random_element(const BlockAlgebra& alg) {
  AlgebraElement a = zero_element(alg);
  for (int b = 0; b < alg.nblocks(); ++b)
    for (int i = 0; i < alg.dims[b]; ++i)
      for (int j = 0; j < alg.dims[b]; ++j) a.blocks[b].at(i, j) = random_gq();
  return a;
}

// random element supported on the given open set
AlgebraElement random_supported(const BlowingUp& bu, Mask u) {
  AlgebraElement a = zero_element(bu.alg);
  for (int b = 0; b < bu.alg.nblocks(); ++b) {
    if (!(u & (Mask{1} << bu.block_to_point[b]))) continue;
    for (int i = 0; i < bu.alg.dims[b]; ++i)
      for (int j = 0; j < bu.alg.dims[b]; ++j) a.blocks[b].at(i, j) = random_gq();
  }
  return a;
}

std::vector<std::string> point_names(int n) {
  std::vector<std::string> pts;
  for (int i = 0; i < n; ++i) pts.push_back("x" + std::to_string(i));
  return pts;
}

// the desk-scale models used for the exhaustive sweeps: every point count up
// to four, with block assignments that hit empty, single, and doubled fibres
std::vector<BlowingUp> model_pool() {
  std::vector<BlowingUp> out;
  out.push_back(make_blowing_up(make_block_algebra({2}), discrete_space(point_names(1)), {0}));
  out.push_back(
      make_blowing_up(make_block_algebra({2, 3}), discrete_space(point_names(2)), {0, 1}));
  out.push_back(
      make_blowing_up(make_block_algebra({2, 1, 2}), discrete_space(point_names(3)), {0, 1, 2}));
  out.push_back(
      make_blowing_up(make_block_algebra({1, 2}), discrete_space(point_names(3)), {0, 2}));
  out.push_back(make_blowing_up(make_block_algebra({2, 1, 1, 2}),
                                discrete_space(point_names(4)), {0, 1, 2, 3}));
  out.push_back(make_blowing_up(make_block_algebra({2, 2}),
                                discrete_space(point_names(4)), {1, 1}));
  return out;
}

}  // namespace

TEST_CASE("construction accepts central embeddings only") {
  CHECK_NOTHROW(make_blowing_up(make_block_algebra({2, 3}), discrete_space({"x", "y"}), {0, 1}));
  CHECK_THROWS_AS(make_blowing_up(make_block_algebra({2}), discrete_space({"x"}), {0, 0}),
                  structural_error);
  CHECK_THROWS_AS(make_blowing_up(make_block_algebra({2}), discrete_space({"x"}), {1}),
                  structural_error);
  CHECK_THROWS_AS(
      make_blowing_up(make_block_algebra({2}), indiscrete_space({"x", "y"}), {0}),
      structural_error);
}

TEST_CASE("embedded functions are central and act pointwise") {
  BlowingUp bu =
      make_blowing_up(make_block_algebra({2, 3}), discrete_space({"x", "y"}), {0, 1});
  AlgebraElement f = embed_function(bu, {GQ(2), GQ(Rat(1, 3))});
  CHECK(is_central(bu.alg, f));
  CHECK(f.blocks[0] == GQ(2) * Mat::identity(2));
  CHECK(f.blocks[1] == GQ(Rat(1, 3)) * Mat::identity(3));
  // multiplication matches pointwise multiplication of functions
  AlgebraElement g = embed_function(bu, {GQ(1), GQ(-3)});
  CHECK(f * g == embed_function(bu, {GQ(2), GQ(-1)}));
  CHECK_THROWS_AS(embed_function(bu, {GQ(1)}), structural_error);
}

TEST_CASE("vanishing functions annihilate the matching subalgebra") {
  // exhaustive over all opens of every pooled model (point counts 1 to 4)
  for (const BlowingUp& bu : model_pool()) {
    for (Mask u : bu.space.opens) {
      USubalgebra su = u_subalgebra(bu, u);

      // f restricted to u zero implies f a = a f = 0 for a over u
      std::vector<GQ> f(bu.space.npoints());
      for (int p = 0; p < bu.space.npoints(); ++p)
        if (!(u & (Mask{1} << p))) f[p] = GQ(p + 1);
      AlgebraElement fe = embed_function(bu, f);
      for (const AlgebraElement& a : ideal_spanning_set(bu.alg, su.ideal)) {
        CHECK((fe * a).is_zero());
        CHECK((a * fe).is_zero());
        CHECK(element_supported_on(bu, a, u));
        CHECK(element_in_hereditary(bu.alg, su.corner, a));
      }

      // indicator of u acts as the unit on the subalgebra
      std::vector<GQ> ind(bu.space.npoints());
      for (int p = 0; p < bu.space.npoints(); ++p)
        if (u & (Mask{1} << p)) ind[p] = GQ(1);
      AlgebraElement ie = embed_function(bu, ind);
      AlgebraElement a = random_supported(bu, u);
      CHECK(ie * a == a);
      CHECK(a * ie == a);
      AlgebraElement compressed = ie * random_element(bu.alg) * ie;
      CHECK(element_supported_on(bu, compressed, u));
    }
  }
}

TEST_CASE("disjoint opens carry orthogonal subalgebras") {
  for (const BlowingUp& bu : model_pool()) {
    for (Mask u : bu.space.opens)
      for (Mask v : bu.space.opens) {
        USubalgebra su = u_subalgebra(bu, u);
        USubalgebra sv = u_subalgebra(bu, v);
        if ((u & v) == 0) {
          for (const AlgebraElement& a : ideal_spanning_set(bu.alg, su.ideal))
            for (const AlgebraElement& b : ideal_spanning_set(bu.alg, sv.ideal)) {
              CHECK((a * b).is_zero());
              CHECK((b * a).is_zero());
            }
        }
        // monotonicity of the assignment
        if ((u & ~v) == 0) {
          CHECK(ideal_leq(su.ideal, sv.ideal));
          AlgebraElement a = random_supported(bu, u);
          CHECK(element_supported_on(bu, a, v));
        }
        // intersections map to intersections
        USubalgebra sm = u_subalgebra(bu, u & v);
        CHECK(sm.ideal == ideal_meet(su.ideal, sv.ideal));
      }
    CHECK_THROWS_AS(u_subalgebra(bu, bu.space.full_mask() + 1), value_domain_error);
  }
}

TEST_CASE("support is multiplicative and subadditive on random pairs") {
  BlowingUp bu = make_blowing_up(make_block_algebra({2, 1, 2, 1}),
                                 discrete_space(point_names(3)), {0, 1, 2, 2});
  std::uniform_int_distribution<std::size_t> pick(0, bu.space.opens.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    AlgebraElement a = random_supported(bu, bu.space.opens[pick(rng)]);
    AlgebraElement b = random_supported(bu, bu.space.opens[pick(rng)]);
    Mask sa = support(bu, a), sb = support(bu, b);
    CHECK((support(bu, a * b) & ~(sa & sb)) == 0);
    CHECK((support(bu, a + b) & ~(sa | sb)) == 0);
    CHECK(element_supported_on(bu, a, sa));
    // support is the least witness among the opens
    for (Mask u : bu.space.opens)
      if (element_supported_on(bu, a, u)) CHECK((sa & ~u) == 0);
  }
}

TEST_CASE("compact support witnesses are exact indicators") {
  BlowingUp bu =
      make_blowing_up(make_block_algebra({2, 3}), discrete_space({"x", "y"}), {0, 1});
  AlgebraElement a = zero_element(bu.alg);
  a.blocks[0].at(0, 1) = GQ(5);
  ApproxCompact ac = approx_compact(bu, a);
  CHECK(ac.f == (std::vector<GQ>{GQ(1), GQ(0)}));
  CHECK(ac.left_defect == 0);
  CHECK(ac.right_defect == 0);
  CHECK(ac.corner_defect == 0);
  ApproxCompact az = approx_compact(bu, zero_element(bu.alg));
  CHECK(az.f == (std::vector<GQ>{GQ(0), GQ(0)}));
}

TEST_CASE("gelfand to space to spectrum factorization commutes") {
  for (const BlowingUp& bu : model_pool()) {
    BlowupFactorization rep = blowup_factorization(bu);
    bool doubled = false;
    for (int p = 0; p < bu.space.npoints(); ++p)
      if (bu.blocks_at(p).size() > 1) doubled = true;
    CHECK(rep.spectrum_map_defined == !doubled);
    if (!doubled) {
      CHECK(rep.commutes);
      for (const auto& s : rep.samples) {
        CHECK(s.commutes);
        CHECK(s.space_point == bu.block_to_point[s.spectrum_block]);
        CHECK(belongs_to(bu.alg, s.xi) == s.spectrum_block);
      }
    }
    CHECK(rep.unassigned == bu.unassigned_points());
  }

  // doubled fibre: the space point cannot name a unique spectrum element
  BlowingUp doubled = make_blowing_up(make_block_algebra({2, 2}),
                                      discrete_space(point_names(1)), {0, 0});
  BlowupFactorization rep = blowup_factorization(doubled);
  CHECK(!rep.spectrum_map_defined);
  CHECK(!rep.commutes);
}
