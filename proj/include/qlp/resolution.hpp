#pragma once

#include "qlp/constraints.hpp"
#include "qlp/syntax.hpp"
#include "qlp/unify.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qlp {

struct GoalAtom {
  Atom atom;
  std::string qvar;
};

/// A goal in flight: annotated atoms waiting to be solved, the substitution
/// accumulated so far, and the qualification constraint store.
struct GoalState {
  std::vector<GoalAtom> atoms;
  Substitution sigma;
  ConstraintStore store;
  bool solved() const { return atoms.empty(); }
};

/// First violated goal invariant, or nullopt if all hold: sigma idempotent
/// and disjoint from the atoms' variables, store admissible, and exactly the
/// atoms' qualification variables carry threshold constraints.
std::optional<std::string> goal_invariant_violation(const Domain& dom, const GoalState& g);

struct ComputedAnswer {
  Substitution sigma; // restricted to the initial goal's term variables
  QualSubst mu;       // restricted to the initial goal's qualification variables
};

enum class Selection { Leftmost, Rightmost };

struct TraceEvent {
  long step;
  Atom selected;
  std::string qvar;
  std::string clause_label; // "eats.4"
  Substitution unifier;
  std::string store_after; // rendered constraint set
};

struct SearchConfig {
  Selection selection = Selection::Leftmost;
  /// When set, overrides `selection`; must return a valid atom index.
  std::function<std::size_t(const GoalState&)> custom_select;
  std::optional<long> max_depth;   // resolution-step budget for the whole search
  std::optional<long> max_answers; // stop after this many answers
  bool prune = true;               // enablement check before unification
  std::function<void(const TraceEvent&)> trace;
};

struct FreshQVars {
  std::set<std::string> used;
  long next_index = 1;
  std::string next();
  static FreshQVars for_goal(const InitialGoal& goal);
};

/// Builds the initial goal state: identity substitution and one threshold
/// constraint `top o Wi >= beta_i` per goal item. Throws on duplicate
/// qualification variables or bottom thresholds.
GoalState initial_state(const Domain& dom, const InitialGoal& goal);

struct StepResult {
  GoalState state;
  Substitution unifier;
  std::vector<std::string> new_qvars;
};

/// One Definition-3 resolution step with the given clause on the atom at
/// `index`. Returns nullopt when the clause is not enabled for the atom's
/// threshold (checked before unification unless `prune` is false) or the
/// heads do not unify.
std::optional<StepResult> resolution_step(const Domain& dom, const GoalState& state,
                                          std::size_t index, const Clause& clause,
                                          FreshVars& fresh_vars, FreshQVars& fresh_qvars,
                                          bool prune = true);

/// Lazy depth-first, program-order, backtracking enumeration of computed
/// answers.
class AnswerStream {
 public:
  enum class Status { Running, Exhausted, Truncated };

  AnswerStream(Program program, InitialGoal goal, SearchConfig config = {});
  std::optional<ComputedAnswer> next();
  Status status() const { return status_; }
  long steps() const { return steps_; }

 private:
  struct Frame {
    GoalState state;
    std::size_t selected;
    std::size_t next_clause;
  };
  std::size_t select(const GoalState& g) const;

  Program program_;
  SearchConfig config_;
  std::set<std::string> goal_vars_;
  std::set<std::string> goal_qvars_;
  std::vector<std::string> clause_labels_;
  std::vector<Frame> stack_;
  FreshVars fresh_vars_;
  FreshQVars fresh_qvars_;
  long steps_ = 0;
  long answers_ = 0;
  Status status_ = Status::Running;
};

struct SolveResult {
  std::vector<ComputedAnswer> answers;
  bool truncated = false; // step budget or answer cap hit; distinct from exhaustion
  long steps = 0;
};

SolveResult solve(const Program& program, const InitialGoal& goal,
                  const SearchConfig& config = {});

enum class Verdict { Valid, Invalid, Unknown };

/// Checks a claimed solution (theta, rho) of `goal` against the declarative
/// semantics: rho must satisfy the goal's threshold constraints and every
/// instantiated goal atom must be derivable at its claimed value within
/// `oracle_depth` proof steps. An exhausted oracle bound yields Unknown,
/// never a wrong Invalid.
Verdict check_answer(const Program& program, const InitialGoal& goal, const Substitution& theta,
                     const QualSubst& rho, int oracle_depth);

/// Definition-2 subsumption: some eta makes general.sigma . eta coincide with
/// theta on `varset`, and general.mu dominates rho on `warset`.
bool subsumes(const Domain& dom, const ComputedAnswer& general, const Substitution& theta,
              const QualSubst& rho, const std::set<std::string>& varset,
              const std::set<std::string>& warset);

/// "pred.i" labels, 1-based per predicate, in program order.
std::vector<std::string> clause_labels(const Program& program);

} // namespace qlp
