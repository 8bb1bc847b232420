#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "lvl/catalog.hpp"

namespace lvl::io {

/* Insertion-ordered JSON so identical inputs serialize byte-identically. */
using json = nlohmann::ordered_json;

/* Read and parse a JSON file; IO and syntax errors become SchemaError. */
json parse_file(const std::string& path);

/* Reject any key of `j` outside `allowed` (strict schema). */
void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where);

/* ----- atoms ----- */
FieldSpec field_from_json(const json& j);
BoundSpec bounds_from_json(const json& j);
json bounds_to_json(const BoundSpec& b);

/* ----- algebraic data ----- */
AlgebraPtr algebra_from_json(const json& j, const FieldSpec& f);
json algebra_to_json(const GradedAlgebra& a);
Element element_from_json(const json& j, const GradedAlgebra& a);
json element_to_json(const Element& e, const GradedAlgebra& a);
GradedModule module_from_json(const json& j, AlgebraPtr a);
json module_to_json(const GradedModule& m);
AlgebraMap map_from_json(const json& j, AlgebraPtr src, AlgebraPtr dst);
json map_to_json(const AlgebraMap& m);

/* ----- problems ----- */
PullbackProblem pullback_from_json(const json& j, const FieldSpec& f);
json pullback_to_json(const PullbackProblem& p);
ChainProblem chain_from_json(const json& j, const FieldSpec& f);
json chain_to_json(const ChainProblem& p);
SimplicialComplex complex_from_json(const json& j);
json complex_to_json(const SimplicialComplex& k);
TorusCheckProblem torus_from_json(const json& j, const FieldSpec& f);
json torus_to_json(const TorusCheckProblem& t);

/* ----- results ----- */
json level_result_to_json(const LevelResult& r);
LevelResult expected_from_json(const json& j); /* kind + endpoints only */
json expected_to_json(const LevelResult& r);
json tor_table_to_json(const TorTable& t);
json resolution_to_json(const Resolution& r);
json obstruction_to_json(const ObstructionReport& r);
json filtration_check_to_json(const FiltrationCheck& c);
json torus_report_to_json(const TorusReductionReport& r);

/* ----- problem files ----- */
inline constexpr const char* kProblemKinds[] = {
    "tor",         "resolve",       "hochster",         "dj-level",
    "level-graded", "level-pullback", "level-fibre",    "level-chain",
    "level-one-test", "filtration-check", "torus-check"};

struct ProblemFile {
  int version = 1;
  FieldSpec field = FieldSpec::Q();
  std::string problem;
  BoundSpec bounds{6, 14};
  bool bounds_given = false;
  json payload;
  std::optional<LevelResult> expected;
  std::vector<std::string> notes;
};

ProblemFile problem_file_from_json(const json& j);

/* Render a catalogued scenario as a self-contained problem file. */
json scenario_to_problem_file(const Scenario& s);

}  // namespace lvl::io
