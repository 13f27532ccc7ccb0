#pragma once

#include "qlp/domain.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace qlp {

/// alpha o W >= beta (domain order), with alpha >= beta and neither bottom.
struct ThresholdConstraint {
  QualValue alpha;
  std::string var;
  QualValue beta;
};

/// W = d o glb{deps...}; the empty dependency list means W = d.
struct DefiningConstraint {
  std::string var;
  QualValue factor;
  std::vector<std::string> deps; // body-atom order; glb is order-insensitive
};

using Constraint = std::variant<ThresholdConstraint, DefiningConstraint>;

using QualSubst = std::map<std::string, QualValue>;

/// True iff attenuate(d, alpha) >= beta in the domain order. Gates every
/// resolution step.
bool enabled(const Domain& dom, const QualValue& d, const QualValue& alpha,
             const QualValue& beta);

/// The qualification constraint store of a goal. Immutable use: each
/// resolution step builds a new store.
class ConstraintStore {
 public:
  void add_threshold(QualValue alpha, std::string var, QualValue beta);
  void add_defining(std::string var, QualValue factor, std::vector<std::string> deps);

  const std::vector<Constraint>& items() const { return items_; }
  bool empty() const { return items_.empty(); }

  const ThresholdConstraint* threshold_for(const std::string& var) const;
  bool has_constraint_for(const std::string& var) const;

  /// All qualification variables appearing anywhere (including dependencies).
  std::set<std::string> war() const;
  /// Variables constrained on a left-hand side.
  std::set<std::string> dom() const;

  /// The Definition-3 store transformation: the threshold constraint for `w`
  /// (which must exist) is replaced in place by the defining constraint
  /// `w = d o glb{fresh...}`, and one threshold `(d o alpha) o wi >= beta` is
  /// appended per fresh variable. Throws std::logic_error if `w` has no
  /// threshold constraint or a fresh variable is already constrained.
  ConstraintStore resolve(const Domain& dom, const std::string& w, const QualValue& d,
                          const std::vector<std::string>& fresh) const;

  /// Admissibility: alpha >= beta for every threshold (exact satisfiability
  /// for the goal-shaped stores the engine builds), exactly one constraint
  /// per variable in war(), and an acyclic dependency relation.
  bool is_admissible(const Domain& dom) const;

  /// Admissible and containing only defining constraints.
  bool is_solved(const Domain& dom) const;

  /// Evaluates the defining constraints bottom-up. Requires a solved store.
  QualSubst omega(const Domain& dom) const;

  /// True iff rho satisfies every constraint; variables missing from rho
  /// count as bottom and fail.
  bool check_solution(const Domain& dom, const QualSubst& rho) const;

  /// Trace rendering: `a * W >= b` and `W = d * min{W1,...}` with the
  /// domain's operator and glb symbols; a top alpha factor and an empty glb
  /// are elided.
  std::string render(const Domain& dom) const;
  std::string render_constraint(const Domain& dom, const Constraint& c) const;

 private:
  std::vector<Constraint> items_;
};

} // namespace qlp
