// gelfkit command line front end.
//
// Exit codes: 0 success, 2 a verdict check ran and failed, 1 structural
// problem (bad document, bad flags, resource cap in strict mode).  Reports
// are JSON with sorted keys and string-encoded rationals, so identical
// inputs and seed produce byte-identical output.

#include "gelfkit/report.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace gelfkit;
using io::Json;
using io::emit;
using io::load_inline;
using io::load_json;
using io::point_names;

constexpr int kExitVerdict = 2;
constexpr int kExitStructural = 1;

// ---------------------------------------------------------------------------

int run_ultra(const std::string& lattice_path, const std::string& filter_path,
              const std::string& format) {
  SemiLattice lat = io::parse_semilattice(load_json(lattice_path));
  Json rep;
  rep["elements"] = lat.size();
  Json atoms = Json::array();
  for (int a : lattice_atoms(lat)) atoms.push_back(lat.elements[a]);
  rep["atoms"] = std::move(atoms);
  Json ultras = Json::array();
  for (const FilterRep& u : enumerate_ultrafilters(lat)) {
    Json uj = io::filter_json(u);
    int gen = -1;
    uj["principal"] = is_principal(lat, u, &gen);
    if (gen >= 0) uj["generator"] = lat.elements[gen];
    ultras.push_back(std::move(uj));
  }
  rep["ultrafilters"] = std::move(ultras);

  bool failed = false;
  if (!filter_path.empty()) {
    FilterRep f = io::parse_filter(load_inline(filter_path), lat);
    Json fj = io::filter_json(f);
    fj["is_filter"] = is_filter(lat, f);
    if (is_filter(lat, f)) {
      fj["is_ultrafilter"] = is_ultrafilter(lat, f);
      fj["extension"] = io::filter_json(extend_to_ultrafilter(lat, f));
    } else {
      failed = true;
    }
    rep["filter"] = std::move(fj);
  }
  emit(rep, format);
  return failed ? kExitVerdict : 0;
}

int run_gelfand(const std::string& algebra_path, const std::string& point_arg,
                const std::string& format) {
  BlockAlgebra alg = io::parse_algebra(load_json(algebra_path));
  GelfandDescription g = describe_gelfand(alg);
  Json rep;
  Json comps = Json::array();
  for (const GelfandComponent& c : g.components) {
    Json cj;
    cj["block"] = c.block;
    cj["dim"] = c.dim;
    cj["projective_dim"] = c.dim - 1;
    comps.push_back(std::move(cj));
  }
  rep["components"] = std::move(comps);
  rep["commutative"] = g.commutative;

  if (!point_arg.empty()) {
    UltrafilterPoint pt = io::parse_point(load_inline(point_arg), alg);
    Json pj;
    pj["point"] = io::point_json(pt);
    pj["belongs_to"] = belongs_to(alg, pt);
    pj["ideal"] = io::ideal_json(point_ideal(alg, pt));
    pj["bicommutant"] = io::ideal_json(point_bicommutant(alg, pt));
    rep["point"] = std::move(pj);
  }
  emit(rep, format);
  return 0;
}

Json nerve_json(const Nerve& n) {
  Json j;
  Json counts = Json::array();
  for (int p = 0; p <= n.dim(); ++p) counts.push_back(n.count(p));
  j["simplex_counts"] = std::move(counts);
  j["truncated"] = n.truncated;
  return j;
}

int run_cech(const std::string& cover_path, const std::string& presheaf_path, int projective,
             const std::string& coeff, int cap, bool strict, const std::string& format) {
  int sources = (!cover_path.empty() ? 1 : 0) + (!presheaf_path.empty() ? 1 : 0) +
                (projective >= 0 ? 1 : 0);
  if (sources != 1)
    throw structural_error("cech needs exactly one of --space, --presheaf, --projective");

  Json rep;
  if (projective >= 0) {
    ProjectiveComparison cmp = projective_cover_comparison(projective, cap);
    rep["cover_side"] = io::groups_json(cmp.cover_side);
    rep["reference"] = io::groups_json(cmp.reference);
    rep["agree"] = cmp.agree;
    emit(rep, format);
    return cmp.agree ? 0 : kExitVerdict;
  }

  if (!presheaf_path.empty()) {
    FinitePresheaf f = io::parse_presheaf(load_json(presheaf_path));
    std::vector<Mask> members = io::canonical_star_cover(f.space);
    CechCohomology h = cech_presheaf_cohomology(f.space, members, f, cap);
    if (strict && h.nerve.truncated) throw resource_error("nerve truncated at the cap");
    rep["H"] = io::groups_json(h.groups());
    rep["nerve"] = nerve_json(h.nerve);
    Json ms = Json::array();
    for (Mask m : members) ms.push_back(point_names(f.space, m));
    rep["members"] = std::move(ms);
    emit(rep, format);
    return 0;
  }

  io::SpaceCoverDoc doc = io::parse_cover(load_json(cover_path));
  AbGroup coefficients = io::parse_coefficients(coeff);
  CechCohomology h = cech_cohomology(space_cover(doc.space, doc.members), coefficients,
                                     cap, strict);
  rep["H"] = io::groups_json(h.groups());
  rep["nerve"] = nerve_json(h.nerve);
  Json ms = Json::array();
  for (Mask m : doc.members) ms.push_back(point_names(doc.space, m));
  rep["members"] = std::move(ms);
  emit(rep, format);
  return 0;
}

std::string letter_word(const std::vector<int>& word, const std::vector<std::string>& names) {
  std::string out;
  for (int letter : word) {
    if (!out.empty()) out += " ";
    out += names[std::abs(letter) - 1];
    if (letter < 0) out += "~";
  }
  return out;
}

int run_pi1(const std::string& complex_path, const std::string& format) {
  TwoComplex x = io::parse_two_complex(load_json(complex_path));
  GroupPresentation p = pi1_presentation(x);
  Json rep;
  rep["generators"] = p.generators;
  Json rels = Json::array();
  for (const auto& r : p.relators) rels.push_back(letter_word(r, p.generators));
  rep["relators"] = std::move(rels);
  rep["abelianization"] = io::group_json(p.abelianization);
  std::vector<AbGroup> hom = two_complex_homology(x);
  rep["H1"] = io::group_json(hom[1]);
  rep["cohomology"] = io::groups_json(two_complex_cohomology(x));
  emit(rep, format);
  return 0;
}

std::vector<GQ> random_line(std::mt19937& rng, int dim) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  while (true) {
    std::vector<GQ> v(dim);
    bool nonzero = false;
    for (int i = 0; i < dim; ++i) {
      v[i] = GQ(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
      if (!v[i].is_zero()) nonzero = true;
    }
    if (nonzero) return v;
  }
}

int run_check_cover(const std::string& quad_path, int samples, std::uint32_t seed,
                    const std::string& format) {
  CoveringQuadruple q = io::parse_quadruple(load_json(quad_path));
  Json rep;

  PrecoveringVerdict pre = check_precovering(q);
  Json prej;
  prej["unital"] = pre.unital;
  prej["stabilizer"] = pre.stabilizer;
  prej["fixed_points"] = pre.fixed_points;
  prej["group_order"] = q.group.order();
  prej["base_connected"] = pre.base_connected;
  prej["cover_connected"] = pre.cover_connected;
  prej["ok"] = pre.ok();
  if (!pre.failures.empty()) prej["failures"] = pre.failures;
  rep["precovering"] = std::move(prej);

  std::vector<UltrafilterPoint> pts = sample_points(q.base);
  std::mt19937 rng(seed);
  for (int k = 0; k < samples; ++k) {
    int b = static_cast<int>(k % q.base.nblocks());
    pts.push_back(make_point(q.base, b, random_line(rng, q.base.dims[b])));
  }

  bool corners_ok = true;
  Json corners = Json::array();
  for (const UltrafilterPoint& pt : pts) {
    HereditaryRep corner = hereditary_of_ideal(point_ideal(q.base, pt));
    Json cj;
    cj["point"] = io::point_json(pt);
    if (q.base.nblocks() == 1 && corner.v[pt.block].is_full()) {
      cj["skipped"] = "corner is not proper";
    } else {
      EvenlyCoveredVerdict ev = check_evenly_covered(q, corner);
      cj["covered"] = ev.covered;
      cj["witnesses"] = static_cast<int>(ev.witnesses.size());
      bool orth = true;
      for (const EvenWitness& w : ev.witnesses) orth = orth && w.orthogonal;
      cj["orthogonal"] = orth;
      if (!ev.covered) corners_ok = false;
    }
    corners.push_back(std::move(cj));
  }
  rep["evenly_covered"] = std::move(corners);

  UnitalCoveringVerdict uni = check_unital_covering(q, pts);
  Json unij;
  unij["ok"] = uni.ok;
  unij["samples"] = static_cast<int>(pts.size());
  if (!uni.unsatisfied.empty()) unij["unsatisfied"] = uni.unsatisfied;
  rep["unital_covering"] = std::move(unij);

  bool ok = pre.ok() && corners_ok && uni.ok;
  rep["ok"] = ok;
  emit(rep, format);
  return ok ? 0 : kExitVerdict;
}

int run_sheafify(const std::string& presheaf_path, const std::string& format) {
  FinitePresheaf f = io::parse_presheaf(load_json(presheaf_path));
  SheafVerdict before = check_sheaf(f);
  Sheafification sf = sheafify(f);
  SheafVerdict after = check_sheaf(sf.plus);

  Json rep;
  Json inj;
  inj["verdict"] = before.verdict();
  inj["separated"] = before.separated;
  inj["gluing"] = before.gluing;
  if (before.separation_witness)
    inj["separation_witness_open"] = before.separation_witness->open;
  if (before.gluing_witness) inj["gluing_witness_open"] = before.gluing_witness->open;
  rep["input"] = std::move(inj);
  rep["sheaf"] = io::presheaf_json(sf.plus);
  rep["sheaf_verdict"] = after.verdict();
  Json thetas = Json::object();
  for (int u = 0; u < f.space.nopens(); ++u)
    thetas[std::to_string(u)] = io::int_matrix_json(sf.theta[u].m);
  rep["theta"] = std::move(thetas);
  emit(rep, format);
  return 0;
}

int run_blowup(const std::string& doc_path, const std::string& element_arg,
               const std::string& open_arg, const std::string& format) {
  BlowingUp bu = io::parse_blowing_up(load_json(doc_path));
  Json rep;

  BlowupFactorization fac = blowup_factorization(bu);
  Json fj;
  fj["commutes"] = fac.commutes;
  fj["spectrum_map_defined"] = fac.spectrum_map_defined;
  Json samples = Json::array();
  for (const FactorizationSample& s : fac.samples) {
    Json sj;
    sj["point"] = io::point_json(s.xi);
    sj["spectrum_block"] = s.spectrum_block;
    sj["space_point"] = bu.space.points[s.space_point];
    sj["commutes"] = s.commutes;
    samples.push_back(std::move(sj));
  }
  fj["samples"] = std::move(samples);
  Json unassigned = Json::array();
  for (int p : fac.unassigned) unassigned.push_back(bu.space.points[p]);
  fj["unassigned_points"] = std::move(unassigned);
  rep["factorization"] = std::move(fj);

  if (!element_arg.empty()) {
    AlgebraElement a = io::parse_element(load_inline(element_arg), bu.alg);
    Mask supp = support(bu, a);
    Json ej;
    ej["support"] = point_names(bu.space, supp);
    ApproxCompact ac = approx_compact(bu, a);
    Json f = Json::array();
    for (const GQ& v : ac.f) f.push_back(gq_str(v));
    ej["indicator"] = std::move(f);
    ej["left_defect"] = rat_str(ac.left_defect);
    ej["right_defect"] = rat_str(ac.right_defect);
    ej["corner_defect"] = rat_str(ac.corner_defect);
    rep["element"] = std::move(ej);
  }

  if (!open_arg.empty()) {
    Mask u = 0;
    std::stringstream ss(open_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      int p = -1;
      try {
        p = std::stoi(tok);
      } catch (...) {
        throw structural_error("--open wants comma-separated point indices");
      }
      if (p < 0 || p >= bu.space.npoints())
        throw structural_error("--open point index out of range");
      u |= Mask{1} << p;
    }
    USubalgebra sub = u_subalgebra(bu, u);
    Json uj;
    uj["open"] = point_names(bu.space, u);
    uj["blocks"] = sub.blocks;
    uj["ideal"] = io::ideal_json(sub.ideal);
    rep["u_subalgebra"] = std::move(uj);
  }

  emit(rep, format);
  return fac.commutes && fac.spectrum_map_defined ? 0 : kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact finite models of operator-algebra topology"};
  app.require_subcommand(1);

  std::string format = "json";
  std::uint32_t seed = 0;
  app.add_option("--format", format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", seed, "seed for sampled checks (default 0)");

  std::string lattice_path, filter_path;
  CLI::App* ultra = app.add_subcommand("ultra", "semilattice filter and ultrafilter queries");
  ultra->add_option("--lattice", lattice_path, "semilattice document")->required();
  ultra->add_option("--filter", filter_path, "filter document or inline json");

  std::string algebra_path, point_arg;
  CLI::App* gelfand = app.add_subcommand("gelfand", "gelfand space of a block algebra");
  gelfand->add_option("--algebra", algebra_path, "algebra document")->required();
  gelfand->add_option("--point", point_arg, "spectrum point document or inline json");

  std::string cover_path, presheaf_path, coeff = "Z";
  int projective = -1, cap = -1;
  bool strict = false;
  CLI::App* cech = app.add_subcommand("cech", "nerve cohomology of a cover");
  cech->add_option("--space", cover_path, "cover document (space plus optional members)");
  cech->add_option("--presheaf", presheaf_path, "presheaf document (star cover coefficients)");
  cech->add_option("--projective", projective,
                   "compare the hyperplane-complement cover of P^n with the reference answer");
  cech->add_option("--coeff", coeff, "coefficient group, e.g. Z, Z/2, Z^2+Z/4");
  cech->add_option("--cap", cap, "nerve dimension cap (default GELFKIT_CAP_DIM or 12)");
  cech->add_flag("--strict", strict, "fail instead of truncating at the cap");

  std::string complex_path;
  CLI::App* pi1 = app.add_subcommand("pi1", "fundamental group of a finite 2-complex");
  pi1->add_option("--complex", complex_path, "two-complex document")->required();

  std::string quad_path;
  int samples = 10;
  CLI::App* check = app.add_subcommand("check-cover", "covering axioms for a quadruple");
  check->add_option("--quadruple", quad_path, "covering quadruple document")->required();
  check->add_option("--samples", samples, "extra sampled spectrum lines (default 10)");

  std::string sheaf_path;
  CLI::App* sheafify = app.add_subcommand("sheafify", "sheafification of a finite presheaf");
  sheafify->add_option("--presheaf", sheaf_path, "presheaf document")->required();

  std::string blowup_path, element_arg, open_arg;
  CLI::App* blowup = app.add_subcommand("blowup", "blowing-up supports and factorization");
  blowup->add_option("--doc", blowup_path, "blowing-up document")->required();
  blowup->add_option("--element", element_arg, "algebra element document or inline json");
  blowup->add_option("--open", open_arg, "comma-separated point indices of an open set");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ultra->parsed()) return run_ultra(lattice_path, filter_path, format);
    if (gelfand->parsed()) return run_gelfand(algebra_path, point_arg, format);
    if (cech->parsed())
      return run_cech(cover_path, presheaf_path, projective, coeff, cap, strict, format);
    if (pi1->parsed()) return run_pi1(complex_path, format);
    if (check->parsed()) return run_check_cover(quad_path, samples, seed, format);
    if (sheafify->parsed()) return run_sheafify(sheaf_path, format);
    if (blowup->parsed()) return run_blowup(blowup_path, element_arg, open_arg, format);
  } catch (const std::exception& e) {
    Json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return kExitStructural;
  }
  return kExitStructural;
}
