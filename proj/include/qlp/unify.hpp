#pragma once

#include "qlp/syntax.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qlp {

/// An idempotent substitution: no variable in its domain occurs in any range
/// term. The engine maintains this discipline through fresh renaming.
class Substitution {
 public:
  Substitution() = default;
  static Substitution single(std::string var, Term t);

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, Term>& bindings() const { return map_; }
  const Term* find(const std::string& var) const;
  void bind(std::string var, Term t); // raw insert; drops identity bindings

  Term operator()(const Term& t) const;
  Atom operator()(const Atom& a) const;
  std::vector<Atom> operator()(const std::vector<Atom>& atoms) const;

  /// Keeps only bindings for the given variables, dropping identities.
  Substitution restricted(const std::set<std::string>& vars) const;

  bool is_idempotent() const;

  bool operator==(const Substitution& o) const { return map_ == o.map_; }

 private:
  std::map<std::string, Term> map_;
};

/// apply(compose(s1,s2), t) == apply(s2, apply(s1, t)).
Substitution compose(const Substitution& s1, const Substitution& s2);

/// Robinson most general unifier with occurs check; nullopt when the atoms
/// do not unify. When two variables meet, the second atom's variable is
/// eliminated, so unifying a goal atom against a renamed clause head leaves
/// the goal's variables intact whenever possible.
std::optional<Substitution> mgu(const Atom& a, const Atom& b);

/// One-sided matching: extends `acc` so that pattern . acc == target, treating
/// the target's variables as constants. Returns false (leaving `acc` in an
/// unspecified state) when no such extension exists.
bool match_into(const Term& pattern, const Term& target, Substitution& acc);
bool match_into(const Atom& pattern, const Atom& target, Substitution& acc);

struct FreshVars {
  std::string prefix = "_G";
  long counter = 0;
  std::string next() { return prefix + std::to_string(++counter); }
};

/// Variable-disjoint variant with fresh names; deterministic given the
/// counter state. Renaming a ground clause is the identity on its terms.
Clause rename_clause(const Clause& c, FreshVars& fresh);

std::string to_string(const Substitution& s); // "X = adam, Y = apple"

} // namespace qlp
