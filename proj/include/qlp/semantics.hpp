#pragma once

#include "qlp/syntax.hpp"
#include "qlp/unify.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qlp {

struct AnnotatedAtom {
  Atom atom;
  QualValue value; // never bottom
};

/// Qualified-modus-ponens proof tree; each node is one inference step with
/// the children as premises.
struct ProofTree {
  AnnotatedAtom root;
  std::size_t clause_index; // into the program's clause list
  Substitution theta;       // root.atom == theta(clause.head)
  std::vector<ProofTree> children;
};

/// A Herbrand interpretation restricted to ground atoms over a finite term
/// universe, represented by apex antichains: the atom A holds at value d iff
/// some stored apex dominates d. In the chain domains apexes are singletons.
class InterpretationFragment {
 public:
  InterpretationFragment() = default;
  explicit InterpretationFragment(std::vector<Term> universe);

  const std::vector<Term>& universe() const { return universe_; }
  bool term_in_universe(const Term& t) const;
  bool atom_in_universe(const Atom& a) const;

  /// Antichain merge; returns true when the fragment grew.
  bool insert(const Domain& dom, const Atom& ground, const QualValue& v);
  const std::vector<QualValue>* apexes(const Atom& ground) const;
  bool member(const Domain& dom, const Atom& ground, const QualValue& v) const;
  /// Membership for a possibly open atom: every ground instance over the
  /// universe must be a member.
  bool member_all_instances(const Domain& dom, const Atom& atom, const QualValue& v) const;

  bool includes(const Domain& dom, const InterpretationFragment& other) const;
  bool same_apexes(const InterpretationFragment& other) const;
  std::size_t apex_count() const;

  /// One line per apex, `atom # value`, sorted.
  std::string dump(const Domain& dom) const;

  const std::map<std::string, std::pair<Atom, std::vector<QualValue>>>& entries() const {
    return entries_;
  }

 private:
  std::vector<Term> universe_;
  std::set<std::string> universe_keys_;
  std::map<std::string, std::pair<Atom, std::vector<QualValue>>> entries_;
};

/// All ground terms of depth <= `depth` over the program's constructors,
/// plus the ground subterms of `seeds`. A fresh constant is injected when
/// the program has none, so the universe is never empty.
std::vector<Term> build_universe(const Program& program, int depth,
                                 const std::vector<Term>& seeds = {});

/// Validates one qualified-modus-ponens step.
bool qmp_check(const Domain& dom, const Clause& clause, const Substitution& theta,
               const std::vector<AnnotatedAtom>& premises, const AnnotatedAtom& conclusion);

/// Immediate consequences of `frag` under the program: every clause instance
/// grounded over the fragment universe whose body atoms all hold contributes
/// its head at the attenuated body glb.
InterpretationFragment tp_step(const Program& program, const InterpretationFragment& frag);

struct LeastModelResult {
  InterpretationFragment fragment;
  bool fixpoint_reached = false;
  int iterations = 0;
};

/// Iterates tp_step from the empty fragment until a fixpoint on the bounded
/// universe or `max_iters` applications.
LeastModelResult least_model(const Program& program, int universe_depth, int max_iters);
LeastModelResult least_model_over(const Program& program, std::vector<Term> universe,
                                  int max_iters);

/// I is a model of P iff T_P(I) is included in I.
bool is_model(const Program& program, const InterpretationFragment& frag);

/// Depth-bounded proof search for a possibly open annotated atom: derives
/// exactly the target atom by matching clause heads against it, enumerating
/// unmatched body variables over the universe. Memoized per target and depth.
class Oracle {
 public:
  Oracle(Program program, std::vector<Term> universe);

  const std::vector<Term>& universe() const { return universe_; }
  const Program& program() const { return program_; }

  bool provable(const Atom& target, const QualValue& value, int depth);
  std::optional<ProofTree> prove(const Atom& target, const QualValue& value, int depth);
  /// The maximal derivable values (an antichain) within the depth bound.
  std::vector<QualValue> derivable_values(const Atom& target, int depth);

 private:
  struct Entry {
    QualValue value;
    std::size_t clause_index;
    Substitution theta; // over the original clause's variables
    std::vector<QualValue> child_values;
  };
  const std::vector<Entry>& derive(const Atom& target, int depth);

  Program program_;
  std::vector<Term> universe_;
  std::map<std::string, std::vector<Entry>> memo_;
  FreshVars fresh_{"_S", 0};
};

/// One-shot wrapper: proof tree of height <= depth_bound for the target, or
/// nullopt within the bound. The universe is built from the program and the
/// target's ground subterms.
std::optional<ProofTree> qhl_prove(const Program& program, const AnnotatedAtom& target,
                                   int depth_bound);

} // namespace qlp
