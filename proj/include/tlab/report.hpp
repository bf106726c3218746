#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "classes.hpp"
#include "combinatorics.hpp"
#include "criteria.hpp"
#include "window.hpp"

namespace tlab {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "thompson-lab/1";

inline json envelope(const std::string& command) { return json{{"schema", kSchema}, {"command", command}}; }

inline std::string rational_str(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline json to_json(const CoreDecomposition& cd) {
  return {{"m", cd.m}, {"pos", cd.pos}, {"neg", cd.neg}, {"core", render(cd.core)}};
}

inline json to_json(const ClassReport& r) {
  return {{"is_reduced", r.is_reduced}, {"is_odd", r.is_odd},         {"is_semi_odd", r.is_semi_odd},
          {"ea_member", r.ea_member},   {"unbalanced", r.unbalanced}, {"exception_count", r.exception_count}};
}

inline json to_json(const HeightConstants& c) {
  return {{"radius", c.radius}, {"threshold", c.threshold}, {"floor", c.floor}, {"step", c.step}};
}

inline json to_json(const ConditionDReport& r) {
  json j{{"pass", r.pass}, {"p", r.p}, {"g", r.g}, {"h_g", r.h_g}, {"constants", to_json(r.constants)}};
  j["failing_deltas_i"] = r.failing_deltas_i;
  j["exception_delta"] = r.failing_deltas_i.size() == 1 ? json(r.failing_deltas_i[0]) : json(nullptr);
  j["part_ii_checked"] = r.part_ii_checked;
  j["part_ii_failures"] = r.part_ii_failures;
  j["boundary_exempt"] = r.boundary_exempt;
  return j;
}

inline json to_json(const SublineProfile& s) {
  json j{{"base", s.base}, {"p", s.p}, {"K", s.K}, {"argmin", s.argmin}};
  j["ks"] = s.ks;
  j["heights"] = s.heights;
  j["monotonicity_violations"] = s.monotonicity_violations;
  return j;
}

inline std::string to_csv(const SublineProfile& s) {
  std::ostringstream os;
  os << "k,height\n";
  for (std::size_t i = 0; i < s.ks.size(); ++i) os << s.ks[i] << ',' << s.heights[i] << '\n';
  return os.str();
}

inline json to_json(const SuitabilityReport& r) {
  return {{"pass", r.pass},
          {"i1_vacuous", r.i1_vacuous},
          {"first_violation", r.first_violation ? json(*r.first_violation) : json(nullptr)},
          {"violated", r.violated.empty() ? json(nullptr) : json(r.violated)}};
}

inline json to_json(const CoverReport& r, CoverMode mode) {
  json j;
  if (mode == CoverMode::optimal) {
    j["optimal"] = r.optimal;
    return j;
  }
  j["min_cover"] = r.min_cover;
  j["max_cover"] = r.max_cover;
  j["placements"] = r.placements;
  json d = json::object();
  for (const auto& [k, v] : r.distribution) d[std::to_string(k)] = v;
  j["distribution"] = d;
  return j;
}

inline std::string to_csv(const CoverReport& r) {
  std::ostringstream os;
  os << "placement_id,covered\n";
  for (std::size_t i = 0; i < r.covered.size(); ++i) os << i << ',' << r.covered[i] << '\n';
  return os.str();
}

inline json triple_json(const std::optional<Triple>& t) {
  return t ? json(std::vector<Int>(t->begin(), t->end())) : json(nullptr);
}

inline json to_json(const Lemma52Result& r) {
  return {{"holds", r.holds}, {"black_witness", triple_json(r.black_witness)},
          {"white_witness", triple_json(r.white_witness)}};
}

inline json to_json(const Lemma54Result& r) {
  json j{{"hypotheses_ok", r.hypotheses_ok}, {"hyp_i", r.hyp_i},         {"hyp_ii", r.hyp_ii},
         {"hyp_iii", r.hyp_iii},             {"inequality_ok", r.inequality_ok}, {"identities_ok", r.identities_ok},
         {"omega", r.omega},                 {"rhs", rational_str(r.rhs)},      {"I_count", r.I_count}};
  json segs = json::array();
  for (const auto& s : r.per_segment) segs.push_back({{"b", s.b}, {"c", s.c}, {"psi", s.psi}, {"phi", s.phi}});
  j["segments"] = segs;
  return j;
}

inline json to_json(const BatchResult& r) { return {{"cases", r.cases}, {"failures", r.failures}}; }

inline json to_json(const FamilyReport& r) {
  json j{{"class", r.cls}, {"checked", r.checked}, {"failure_count", r.failures.size()}};
  json f = json::array();
  for (const auto& x : r.failures) f.push_back({{"word", render(x.word)}, {"normal_form", x.normal_form}});
  j["failures"] = f;
  return j;
}

template <class G>
json to_json(const LabeledTree<G>& t) {
  auto labels = label_rays(t);
  json vs = json::array();
  for (std::size_t i = 0; i < t.tree.vertices.size(); ++i) {
    const auto& v = t.tree.vertices[i];
    json elems = json::array();
    for (const auto& e : v.elems) elems.push_back(G::render(e));
    vs.push_back({{"id", i},
                  {"elements", elems},
                  {"central", v.is_triple() ? json(v.central) : json(nullptr)},
                  {"parent", v.parent},
                  {"children", v.children},
                  {"label", G::render(labels.at(static_cast<int>(i)))}});
  }
  return {{"color", color_name(t.color)}, {"root", t.tree.root}, {"vertices", vs}};
}

template <class G>
json to_json(const BuildReport<G>& r, bool with_trees) {
  json j{{"trees", r.trees.size()},
         {"f1_size", r.f1_size},
         {"f1_covered", r.f1_covered},
         {"f1_end_elements", r.f1_end_elements},
         {"end_fraction", rational_str(r.end_fraction)},
         {"triples", r.triples},
         {"singletons", r.singletons},
         {"max_ray_coset", r.max_ray_coset},
         {"separation_failures", r.separation_failures},
         {"all_valid", r.all_valid},
         {"all_special", r.all_special},
         {"all_labeled", r.all_labeled},
         {"all_eta_normal", r.all_eta_normal},
         {"tails_ok", r.tails_ok},
         {"semi_complete", r.semi_complete}};
  json res = json::array();
  for (const auto& e : r.residue) res.push_back(G::render(e));
  j["residue"] = res;
  j["diagnostics"] = r.diagnostics;
  if (with_trees) {
    json ts = json::array();
    for (const auto& t : r.trees) ts.push_back(to_json(t));
    j["forest"] = ts;
  }
  return j;
}

inline std::string tile_csv(const std::vector<TileStats>& tiles) {
  std::ostringstream os;
  os << "tile_id,black_triples,white_triples,singletons\n";
  for (const auto& t : tiles)
    os << t.tile_id << ',' << t.black_triples << ',' << t.white_triples << ',' << t.singletons << '\n';
  return os.str();
}

}  // namespace tlab
