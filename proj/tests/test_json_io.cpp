#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "gelfkit/json_io.hpp"

using namespace gelfkit;
using io::Json;

TEST_CASE("space documents round trip") {
  Json sj = Json::parse(R"({"points":["o","c"],"opens":[[],[0],[0,1]]})");
  FiniteSpace sp = io::parse_space(sj);
  CHECK(sp.nopens() == 3);
  CHECK(io::parse_space(io::space_json(sp)).opens == sp.opens);
}

TEST_CASE("algebra, element, ideal and point documents") {
  BlockAlgebra alg = io::parse_algebra(Json::parse(R"({"block_dims":[2,1]})"));
  Json ej = Json::parse(R"({"blocks":[[["1","1/2+3i"],["0","-2/3"]],[["-1i"]]]})");
  AlgebraElement a = io::parse_element(ej, alg);
  CHECK(io::parse_element(io::element_json(a), alg) == a);

  LeftIdealRep l = io::parse_ideal(Json::parse(R"({"subspaces":[[["1","0"]],[]]})"), alg);
  CHECK(l.v[0].dim() == 1);
  CHECK(l.v[1].dim() == 0);
  CHECK(io::parse_ideal(io::ideal_json(l), alg).v == l.v);

  UltrafilterPoint pt =
      io::parse_point(Json::parse(R"({"block":0,"line":["2","1"]})"), alg);
  CHECK(pt.block == 0);
  CHECK(io::parse_point(io::point_json(pt), alg).line == pt.line);

  BlockAlgebra comm = make_block_algebra({1, 1, 1});
  FiniteSpace disc = discrete_space({"x", "y", "z"});
  UltrafilterPoint named = io::parse_point(Json::parse(R"({"point":"y"})"), comm, &disc);
  CHECK(named.block == 1);
}

TEST_CASE("semilattice and filter documents") {
  SemiLattice lat = io::parse_semilattice(
      Json::parse(R"({"elements":["0","a","1"],"leq":[[0,1],[1,2],[0,2]],"zero":0})"));
  CHECK(lat.size() == 3);
  SemiLattice lat2 = io::parse_semilattice(io::semilattice_json(lat));
  CHECK(lat2.le == lat.le);
  CHECK(lat2.zero == lat.zero);
  FilterRep f = io::parse_filter(Json::parse(R"({"members":[2,1]})"), lat);
  CHECK(is_filter(lat, f));
}

TEST_CASE("coefficient expressions and group documents") {
  CHECK(io::parse_coefficients("Z") == AbGroup::free_group(1));
  CHECK(io::parse_coefficients("Z^2+Z/4") == AbGroup::canonical(2, {Int(4)}));
  AbGroup g = AbGroup::canonical(1, {Int(2), Int(6)});
  CHECK(io::parse_group(io::group_json(g)) == g);
}

TEST_CASE("presheaf documents fill in composite restrictions") {
  Json pj = Json::parse(R"({
    "space": {"points":["o","c"],"opens":[[],[0],[0,1]]},
    "sections": {"0":{"rank":0},"1":{"rank":1},"2":{"rank":1}},
    "restrictions": {"2>1": [[1]]}
  })");
  FinitePresheaf ps = io::parse_presheaf(pj);
  CHECK(ps.sections[2] == AbGroup::free_group(1));
  FinitePresheaf ps2 = io::parse_presheaf(io::presheaf_json(ps));
  CHECK(ps2.sections == ps.sections);
  CHECK(check_sheaf(ps).is_sheaf());

  // byte stability under the round trip
  std::string d1 = io::presheaf_json(ps).dump();
  std::string d2 = io::presheaf_json(io::parse_presheaf(io::presheaf_json(ps))).dump();
  CHECK(d1 == d2);
}

TEST_CASE("cover documents default to the star cover") {
  FiniteSpace circ =
      generate_space({"v0", "e01", "v1", "e12", "v2", "e20"}, {35, 14, 56});
  Json cj;
  cj["space"] = io::space_json(circ);
  io::SpaceCoverDoc doc = io::parse_cover(cj);
  CHECK(doc.members.size() == 3);
  CechCohomology h =
      cech_cohomology(space_cover(doc.space, doc.members), AbGroup::free_group(1));
  CHECK(h.groups() ==
        (std::vector<AbGroup>{AbGroup::free_group(1), AbGroup::free_group(1)}));
}

TEST_CASE("two-complex documents read traversal words") {
  TwoComplex tor = io::parse_two_complex(Json::parse(
      R"({"vertices":["v"],"edges":[[0,0],[0,0]],"cells":[["e1","e2","e1~","e2~"]]})"));
  CHECK(pi1_presentation(tor).abelianization == AbGroup::free_group(2));
  TwoComplex tor2 = io::parse_two_complex(io::two_complex_json(tor));
  CHECK(tor2.cells == tor.cells);
}

TEST_CASE("quadruple documents assemble coverings") {
  Json qj;
  qj["base"] = Json::parse(R"({"block_dims":[2]})");
  qj["cover"] = Json::parse(R"({"block_dims":[2,2]})");
  Json ui = Json::array();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Json m = Json::array({Json::array({"0", "0"}), Json::array({"0", "0"})});
      m[i][j] = "1";
      Json el;
      el["blocks"] = Json::array({m, m});
      ui.push_back(el);
    }
  qj["lift"] = Json::object({{"unit_images", ui}});
  Json sw;
  sw["perm"] = Json::array({1, 0});
  Json id2 = Json::array({Json::array({"1", "0"}), Json::array({"0", "1"})});
  sw["conj"] = Json::array({id2, id2});
  qj["group"] = Json::array({sw});
  CoveringQuadruple q = io::parse_quadruple(qj);
  CHECK(q.group.order() == 2);
  CHECK(check_precovering(q).ok());
}

TEST_CASE("parse errors point at the offending node") {
  try {
    io::parse_space(Json::parse(R"({"points":["a"],"opens":[[3]]})"));
    CHECK(false);
  } catch (const structural_error& e) {
    CHECK(std::string(e.what()).find("/opens/0/0") != std::string::npos);
  }
}
