#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lvl/levels.hpp"
#include "lvl/simplicial.hpp"

namespace lvl {

/* Standard cohomology presentations, by name:
     sphere(n)          k[x]/(x^2), |x| = n
     cpn(n)             k[x]/(x^{n+1}), |x| = 2
     btm(m)             k[t_1..t_m], |t_i| = 2
     bsun(n)            k[c_2..c_n], |c_i| = 2i   (degrees 4, 6, ..., 2n)
     bun(n)             k[c_1..c_n], |c_i| = 2i   (degrees 2, 4, ..., 2n)
     exterior(d_1..d_r) Lambda(x_1..x_r), |x_i| = d_i odd
     truncated(d, l)    k[x]/(x^{l+1}), |x| = d even
   Parameter ranges: n <= 6, m <= 8, l <= 6. Violations throw SchemaError. */
AlgebraPtr space_algebra(const std::string& name, const std::vector<int>& params,
                         const FieldSpec& f);

/* A full-torus / maximal-torus pair of pullback problems together with the
   freeness witnesses that justify comparing them. */
struct TorusCheckProblem {
  PullbackProblem full;
  PullbackProblem torus;
  std::vector<FreenessWitness> witnesses;
};

struct ScenarioParams {
  int n = -1;
  int p = -1;
  int k = -1;
  int l = -1;
  int m = -1;
  std::optional<FieldSpec> field; /* default depends on the scenario */
};

/* A named, reproducible instance: exactly one of the problem slots is set. */
struct Scenario {
  std::string name;
  std::string title;
  FieldSpec field = FieldSpec::Q();
  BoundSpec bounds{6, 14};

  std::optional<PullbackProblem> pullback;
  bool fibre_route = false; /* run the pullback through fibre_level */
  std::optional<ChainProblem> chain;
  std::optional<std::pair<AlgebraPtr, std::shared_ptr<const GradedModule>>> graded;
  std::optional<SimplicialComplex> complex;
  std::optional<TorusCheckProblem> torus;

  std::optional<LevelResult> expected;
  std::vector<std::string> notes;
};

struct ScenarioOutcome {
  LevelResult result;
  std::optional<TorusReductionReport> torus_report;
  bool has_expected = false;
  bool matches = false; /* result endpoints agree with `expected` (torus: sides agree) */
};

/* (name, one-line description) for every built-in scenario. */
std::vector<std::pair<std::string, std::string>> catalog_list();

/* Expand a scenario by name. Unknown names and out-of-range parameters throw
   SchemaError. Per-scenario parameters:
     remark_2_4   k = 1 (default) nonzero structure map, k = 0 vanishing
     prop_5_4     n in {2..6}, p prime, k >= 0; field forced to F_p
     prop_5_5     n in {2, 3}
     example_6_4  l in {1..6}
     example_6_5  l in {1..6}
     remark_7_4   (none)
     dj_full_simplex  m in {1..8}
     dj_two_points    (none)
     dj_4cycle        (none)
     torus_su2    n = 1 (H = K = T), 2 (H = T, K = G), 3 (H = K = G) */
Scenario make_scenario(const std::string& name, const ScenarioParams& prm);

/* Dispatch the scenario to the appropriate engine and compare against the
   expected answer when one is recorded. prop_5_5 additionally cross-checks
   the fibre route against the graded level of the self-hosted quotient
   cohomology and throws CrossCheckError on disagreement. */
ScenarioOutcome run_scenario(const Scenario& s);

}  // namespace lvl
