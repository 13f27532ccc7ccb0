#pragma once

#include "qlp/resolution.hpp"
#include "qlp/syntax.hpp"

#include <string>
#include <vector>

namespace qlp {

/// One translated call literal `q(s..., d o Alpha, Wi, Beta)`: the alpha
/// argument is the incoming Alpha attenuated by the clause's value.
struct ConstrainedCall {
  Atom atom;
  QualValue alpha_factor;
  std::string wvar;
};

/// A clause translated to constrained form. The body follows the fixed
/// template: the enablement check `d o Alpha >= Beta`, then per body atom a
/// range pair `Wi > bot, Wi <= top` and the call, and finally the defining
/// constraint `W = d o glb{W1..Wk}`.
struct ConstrainedClause {
  Atom head; // original head; emission appends (Alpha, W, Beta)
  QualValue attenuation;
  std::vector<std::string> body_wvars;
  std::vector<ConstrainedCall> calls; // aligned with body_wvars
};

struct TranslatedProgram {
  Domain domain;
  std::vector<ConstrainedClause> clauses;
};

/// One translated goal atom `q(t..., top, Wi, beta_i)`.
struct TranslatedGoalCall {
  Atom atom;
  std::string wvar;
  QualValue beta;
};

TranslatedProgram translate_program(const Program& program);
std::vector<TranslatedGoalCall> translate_goal(const InitialGoal& goal);

/// Executes the translated clauses with a small constrained resolution:
/// depth-first in clause order, evaluating the enablement check on the
/// ground alpha argument at call time and the defining constraint once the
/// body calls are solved. Answers are comparable to the direct engine's.
SolveResult run_translated(const TranslatedProgram& tp,
                           const std::vector<TranslatedGoalCall>& goal,
                           const SearchConfig& config = {});

enum class Dialect { Generic, ToyLike };

/// Text emission. The generic dialect is a neutral constrained-clause
/// syntax; the toy_like dialect produces the functional-logic shape with
/// glb helper definitions (`min1 [] = 1` over U, `max1 [] = 0` over W) and a
/// data declaration synthesized from the program's constructors.
std::string emit_text(const TranslatedProgram& tp, Dialect dialect);

} // namespace qlp
