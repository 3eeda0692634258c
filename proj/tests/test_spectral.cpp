#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "gelfkit/spectral.hpp"

using namespace gelfkit;

namespace {

const Rat kTol(1, 1000000000);

Mat mk(std::vector<std::vector<Rat>> rows) {
  Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = GQ(rows[i][j]);
  return m;
}

std::mt19937 rng(0);

// exact unitaries: Pythagorean-triple rotations on random coordinate pairs
// composed with unit-phase diagonals
Mat random_rational_unitary(int n) {
  static const std::vector<std::pair<Rat, Rat>> triples = {
      {Rat(3, 5), Rat(4, 5)}, {Rat(5, 13), Rat(12, 13)}, {Rat(8, 17), Rat(15, 17)}};
  static const std::vector<GQ> phases = {GQ(1), GQ(-1), GQ::i(), -GQ::i()};
  std::uniform_int_distribution<std::size_t> tri(0, triples.size() - 1),
      ph(0, phases.size() - 1);
  std::uniform_int_distribution<int> coord(0, n - 1);
  Mat u = Mat::identity(n);
  for (int pass = 0; pass < 3; ++pass) {
    int i = coord(rng), j = coord(rng);
    if (i == j) continue;
    auto [c, s] = triples[tri(rng)];
    Mat g = Mat::identity(n);
    g.at(i, i) = GQ(c);
    g.at(j, j) = GQ(c);
    g.at(i, j) = GQ(s);
    g.at(j, i) = GQ(-s);
    u = u * g;
  }
  Mat d(n, n);
  for (int i = 0; i < n; ++i) d.at(i, i) = phases[ph(rng)];
  u = u * d;
  REQUIRE(u * u.adjoint() == Mat::identity(n));
  return u;
}

Rat pos_cut(const Rat& lambda, const Rat& eps) {
  return lambda > eps ? Rat(lambda - eps) : Rat(0);
}

}  // namespace

TEST_CASE("positivity predicates") {
  CHECK(mat_is_psd(mk({{1, 0}, {0, 2}})));
  CHECK(!mat_is_psd(mk({{1, 2}, {2, 1}})));  // eigenvalues -1, 3
  CHECK(mat_is_psd(mk({{1, 1}, {1, 1}})));   // eigenvalues 0, 2
  CHECK(!mat_is_pd(mk({{1, 1}, {1, 1}})));
  CHECK(mat_is_pd(mk({{2, 1}, {1, 2}})));
  BlockAlgebra alg = make_block_algebra({2, 1});
  AlgebraElement a = zero_element(alg);
  a.blocks[0] = mk({{1, 1}, {1, 1}});
  a.blocks[1].at(0, 0) = GQ(3);
  CHECK(is_positive(alg, a));
  CHECK(!is_positive_definite(alg, a));
  a.blocks[1].at(0, 0) = GQ(-1);
  CHECK(!is_positive(alg, a));
}

TEST_CASE("exact hermitian spectrum with projectors") {
  auto es = exact_hermitian_spectrum(mk({{2, 1}, {1, 2}}));
  REQUIRE(es.has_value());
  REQUIRE(es->eigs.size() == 2);
  CHECK(es->eigs[0].first == 1);
  CHECK(es->eigs[1].first == 3);
  CHECK(es->projectors[0] + es->projectors[1] == Mat::identity(2));
  CHECK(Rat(1) * es->projectors[0] + Rat(3) * es->projectors[1] == mk({{2, 1}, {1, 2}}));
  for (const Mat& p : es->projectors) {
    CHECK(p * p == p);
    CHECK(p.adjoint() == p);
  }
  CHECK(!exact_hermitian_spectrum(mk({{1, 1}, {1, 2}})));  // irrational eigenvalues
}

TEST_CASE("spectral cutoff, exact mode") {
  BlockAlgebra alg = make_block_algebra({3});
  AlgebraElement a = zero_element(alg);
  a.blocks[0] = mk({{0, 0, 0}, {0, 1, 0}, {0, 0, 3}});
  auto fe = f_eps(alg, a, Rat(1), CalcMode::exact, kTol);
  CHECK(fe.exact);
  CHECK(fe.bound == 0);
  CHECK(fe.value.blocks[0] == mk({{0, 0, 0}, {0, 0, 0}, {0, 0, 2}}));
  CHECK_THROWS_AS(f_eps(alg, a, Rat(-1), CalcMode::exact, kTol), value_domain_error);
  AlgebraElement nh = zero_element(alg);
  nh.blocks[0].at(0, 1) = GQ(1);
  CHECK_THROWS_AS(f_eps(alg, nh, Rat(1), CalcMode::exact, kTol), value_domain_error);
}

TEST_CASE("spectral cutoff, certified mode on irrational spectrum") {
  BlockAlgebra alg = make_block_algebra({2});
  AlgebraElement c = zero_element(alg);
  c.blocks[0] = mk({{1, 1}, {1, 2}});  // eigenvalues (3 +- sqrt 5)/2
  CHECK_THROWS_AS(f_eps(alg, c, Rat(1, 2), CalcMode::exact, kTol), mode_error);
  auto fc = f_eps(alg, c, Rat(1, 2), CalcMode::certified, kTol);
  CHECK(!fc.exact);
  CHECK(fc.bound <= kTol);
  CHECK(fc.value.blocks[0].is_hermitian());
  CHECK(fc.value.blocks[0] * c.blocks[0] == c.blocks[0] * fc.value.blocks[0]);
}

TEST_CASE("four part decomposition into positives") {
  BlockAlgebra alg = make_block_algebra({1, 1});
  AlgebraElement d = zero_element(alg);
  d.blocks[0].at(0, 0) = GQ(Rat(3), Rat(-2));
  d.blocks[1].at(0, 0) = GQ(Rat(-1), Rat(0));
  auto fp = four_decomposition(alg, d, CalcMode::exact, kTol);
  CHECK(fp.exact);
  for (const auto& part : fp.parts) CHECK(is_positive(alg, part));
  AlgebraElement rebuilt = fp.parts[0] - fp.parts[1] + GQ::i() * fp.parts[2] +
                           (-GQ::i()) * fp.parts[3];
  CHECK(rebuilt == d);
}

TEST_CASE("operator norm enclosures") {
  auto n1 = op_norm(mk({{0, 2}, {0, 0}}), kTol);
  CHECK(n1.exact());
  CHECK(n1.lo == 2);
  auto n2 = op_norm(mk({{1, 1}, {1, 1}}), kTol);
  CHECK(n2.exact());
  CHECK(n2.lo == 2);
  auto n3 = op_norm(mk({{1, 1}, {0, 1}}), kTol);  // golden ratio
  CHECK(!n3.exact());
  CHECK(n3.width() <= kTol);
  CHECK(n3.lo < Rat(1618033989, 1000000000));
  CHECK(n3.hi > Rat(1618033988, 1000000000));

  BlockAlgebra alg = make_block_algebra({2, 1});
  AlgebraElement a = zero_element(alg);
  a.blocks[0] = mk({{0, 2}, {0, 0}});
  a.blocks[1].at(0, 0) = GQ(Rat(0), Rat(-3));
  auto na = op_norm(alg, a, kTol);
  CHECK(na.exact());
  CHECK(na.lo == 3);  // max over blocks
}

TEST_CASE("top eigenvalue enclosure") {
  auto te = lambda_max_enclosure(mk({{3, 0, 0}, {0, 1, 1}, {0, 1, 2}}), Rat(1, 1024));
  CHECK(te.exact);
  CHECK(te.iv.lo == 3);  // rational top dominates the irrational pair
  auto te2 = lambda_max_enclosure(mk({{2, 0, 0}, {0, 1, 1}, {0, 1, 2}}), Rat(1, 1 << 20));
  CHECK(!te2.exact);  // (3 + sqrt 5)/2 = 2.6180339887...
  CHECK(te2.iv.hi > Rat(Int("26180339887"), Int("10000000000")));
  CHECK(te2.iv.lo < Rat(Int("26180339888"), Int("10000000000")));
  CHECK(te2.iv.width() <= Rat(1, 1 << 20));
}

TEST_CASE("support projections and cutoff witnesses") {
  BlockAlgebra alg = make_block_algebra({3});
  AlgebraElement pa = zero_element(alg);
  pa.blocks[0] = mk({{2, 0, 0}, {0, 0, 0}, {0, 0, 5}});
  auto w = pedersen_k0_witness(alg, pa);
  auto back = f_eps(alg, w.b, w.eps, CalcMode::exact, kTol);
  CHECK(back.value == pa);
  CHECK(w.q * pa == pa);
  CHECK(pa * w.q == pa);

  BlockAlgebra m2 = make_block_algebra({2});
  AlgebraElement ra = zero_element(m2);
  ra.blocks[0] = mk({{1, 1}, {1, 1}});
  auto w2 = pedersen_k0_witness(m2, ra);
  CHECK(w2.q.blocks[0] * w2.q.blocks[0] == w2.q.blocks[0]);
  CHECK(support_projection(m2, ra) == w2.q);
  auto back2 = f_eps(m2, w2.b, w2.eps, CalcMode::exact, kTol);
  CHECK(back2.value == ra);
}

TEST_CASE("cutoff contract on random positive rational-spectrum matrices") {
  std::uniform_int_distribution<int> dim(2, 4), lam_num(0, 6), lam_den(1, 3), eps_num(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    int n = dim(rng);
    std::vector<Rat> lambda(n);
    for (auto& l : lambda) l = Rat(lam_num(rng), lam_den(rng));
    std::sort(lambda.begin(), lambda.end());
    Mat d(n, n);
    for (int i = 0; i < n; ++i) d.at(i, i) = GQ(lambda[i]);
    Mat u = random_rational_unitary(n);
    BlockAlgebra alg = make_block_algebra({n});
    AlgebraElement a = zero_element(alg);
    a.blocks[0] = u * d * u.adjoint();
    REQUIRE(a.is_hermitian());
    REQUIRE(is_positive(alg, a));

    // the model spectrum is recovered exactly
    auto es = exact_hermitian_spectrum(a.blocks[0]);
    REQUIRE(es.has_value());
    std::set<Rat> expected(lambda.begin(), lambda.end());
    std::set<Rat> got;
    int total = 0;
    for (const auto& [val, mult] : es->eigs) {
      got.insert(val);
      total += mult;
    }
    CHECK(got == expected);
    CHECK(total == n);

    Rat eps(eps_num(rng), 2);
    auto fe = f_eps(alg, a, eps, CalcMode::exact, kTol);
    CHECK(fe.exact);
    CHECK(is_positive(alg, fe.value));
    CHECK(fe.value * a == a * fe.value);

    // exact value against the scalar cutoff applied on the model spectrum
    Mat fd(n, n);
    for (int i = 0; i < n; ++i) fd.at(i, i) = GQ(pos_cut(lambda[i], eps));
    CHECK(fe.value.blocks[0] == u * fd * u.adjoint());

    // ||a - f_eps(a)|| <= eps via the certified enclosure
    auto defect = op_norm(alg, a - fe.value, kTol);
    CHECK(defect.hi <= eps);

    // semigroup law
    Rat delta(eps_num(rng), 3);
    auto two_step = f_eps(alg, fe.value, delta, CalcMode::exact, kTol);
    auto one_step = f_eps(alg, a, eps + delta, CalcMode::exact, kTol);
    CHECK(two_step.value == one_step.value);
  }
}
