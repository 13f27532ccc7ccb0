#pragma once

#include "qlp/syntax.hpp"
#include "qlp/unify.hpp"

#include <vector>

namespace qlp::testing {

/// Textbook SLD resolution on an annotation-free program: leftmost
/// selection, clause order, chronological backtracking. Kept deliberately
/// separate from the engine as the classical reference for the B instance.
class ClassicalSld {
 public:
  explicit ClassicalSld(const Program& program, long budget = 200000) : budget_(budget) {
    for (const Clause& c : program.clauses) clauses_.push_back({c.head, c.body});
  }

  std::vector<Substitution> solve(const std::vector<Atom>& goal) {
    std::set<std::string> vars;
    for (const Atom& a : goal) collect_vars(a, vars);
    std::vector<Substitution> out;
    dfs(goal, Substitution{}, vars, out);
    return out;
  }

  bool truncated() const { return truncated_; }

 private:
  struct StrippedClause {
    Atom head;
    std::vector<Atom> body;
  };

  void dfs(std::vector<Atom> goals, const Substitution& sigma,
           const std::set<std::string>& goal_vars, std::vector<Substitution>& out) {
    if (truncated_) return;
    if (goals.empty()) {
      out.push_back(sigma.restricted(goal_vars));
      return;
    }
    Atom selected = goals.front();
    for (const StrippedClause& c : clauses_) {
      if (truncated_) return;
      Substitution renaming;
      std::set<std::string> cvars;
      collect_vars(c.head, cvars);
      for (const Atom& a : c.body) collect_vars(a, cvars);
      for (const std::string& v : cvars) renaming.bind(v, Term::var(fresh_.next()));
      auto u = mgu(selected, renaming(c.head));
      if (!u) continue;
      if (++steps_ > budget_) {
        truncated_ = true;
        return;
      }
      std::vector<Atom> next;
      for (const Atom& b : c.body) next.push_back((*u)(renaming(b)));
      for (std::size_t i = 1; i < goals.size(); ++i) next.push_back((*u)(goals[i]));
      dfs(std::move(next), compose(sigma, *u), goal_vars, out);
    }
  }

  std::vector<StrippedClause> clauses_;
  FreshVars fresh_{"_C", 0};
  long budget_;
  long steps_ = 0;
  bool truncated_ = false;
};

} // namespace qlp::testing
