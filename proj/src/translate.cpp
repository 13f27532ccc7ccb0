#include "qlp/translate.hpp"

#include <functional>
#include <map>

namespace qlp {

TranslatedProgram translate_program(const Program& program) {
  TranslatedProgram out{program.domain, {}};
  for (const Clause& c : program.clauses) {
    ConstrainedClause tc;
    tc.head = c.head;
    tc.attenuation = c.attenuation;
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      std::string w = "W" + std::to_string(i + 1);
      tc.body_wvars.push_back(w);
      tc.calls.push_back(ConstrainedCall{c.body[i], c.attenuation, w});
    }
    out.clauses.push_back(std::move(tc));
  }
  return out;
}

std::vector<TranslatedGoalCall> translate_goal(const InitialGoal& goal) {
  std::vector<TranslatedGoalCall> out;
  for (const GoalItem& it : goal.items)
    out.push_back(TranslatedGoalCall{it.atom, it.qvar, it.threshold});
  return out;
}

// ------------------------------------------------------------ interpreter

namespace {

struct TranslatedRun {
  const TranslatedProgram& tp;
  const SearchConfig& config;
  FreshVars fresh{"_T", 0};
  long steps = 0;
  bool truncated = false;
  std::vector<ComputedAnswer> answers;
  std::set<std::string> goal_vars;
  std::vector<std::string> goal_wvars;

  bool budget_left() {
    if (config.max_depth && steps >= *config.max_depth) {
      truncated = true;
      return false;
    }
    return true;
  }

  // Solves one call; invokes `found` per solution with the extended
  // substitution and the call's qualification value. `found` returns false
  // to stop the enumeration.
  bool solve_call(const Atom& goal_atom, const QualValue& alpha, const QualValue& beta,
                  const Substitution& sigma,
                  const std::function<bool(const Substitution&, const QualValue&)>& found) {
    const Domain& dom = tp.domain;
    for (const ConstrainedClause& clause : tp.clauses) {
      // enablement: d o Alpha >= Beta, evaluated on the ground alpha
      if (!enabled(dom, clause.attenuation, alpha, beta)) continue;
      if (clause.head.predicate != goal_atom.predicate ||
          clause.head.args.size() != goal_atom.args.size())
        continue;

      std::set<std::string> clause_vars;
      collect_vars(clause.head, clause_vars);
      for (const ConstrainedCall& call : clause.calls) collect_vars(call.atom, clause_vars);
      Substitution renaming;
      for (const std::string& v : clause_vars) renaming.bind(v, Term::var(fresh.next()));

      auto unifier = mgu(sigma(goal_atom), renaming(clause.head));
      if (!unifier) continue;
      if (!budget_left()) return false;
      ++steps;

      Substitution sigma1 = compose(sigma, *unifier);
      QualValue alpha1 = dom.attenuate(clause.attenuation, alpha);

      // body calls left to right, collecting the fresh W values
      std::function<bool(std::size_t, const Substitution&, std::vector<QualValue>)> body;
      body = [&](std::size_t i, const Substitution& s,
                 std::vector<QualValue> wvalues) -> bool {
        if (i == clause.calls.size()) {
          QualValue w = dom.attenuate(clause.attenuation, dom.big_glb(wvalues));
          return found(s, w);
        }
        Atom call_atom = renaming(clause.calls[i].atom);
        return solve_call(call_atom, alpha1, beta, s,
                          [&](const Substitution& s2, const QualValue& wi) {
                            auto next = wvalues;
                            next.push_back(wi);
                            return body(i + 1, s2, std::move(next));
                          });
      };
      if (!body(0, sigma1, {})) return false;
    }
    return true;
  }

  bool run_goal(const std::vector<TranslatedGoalCall>& goal, std::size_t i,
                const Substitution& sigma, QualSubst wvalues) {
    const Domain& dom = tp.domain;
    if (i == goal.size()) {
      ComputedAnswer a;
      a.sigma = sigma.restricted(goal_vars);
      a.mu = std::move(wvalues);
      answers.push_back(std::move(a));
      if (config.max_answers && static_cast<long>(answers.size()) >= *config.max_answers) {
        truncated = true;
        return false;
      }
      return true;
    }
    return solve_call(goal[i].atom, dom.top(), goal[i].beta, sigma,
                      [&](const Substitution& s2, const QualValue& w) {
                        QualSubst next = wvalues;
                        next.emplace(goal[i].wvar, w);
                        return run_goal(goal, i + 1, s2, std::move(next));
                      });
  }
};

} // namespace

SolveResult run_translated(const TranslatedProgram& tp,
                           const std::vector<TranslatedGoalCall>& goal,
                           const SearchConfig& config) {
  TranslatedRun run{tp, config};
  for (const TranslatedGoalCall& g : goal) {
    collect_vars(g.atom, run.goal_vars);
    run.goal_wvars.push_back(g.wvar);
  }
  run.run_goal(goal, 0, Substitution{}, {});
  return SolveResult{std::move(run.answers), run.truncated, run.steps};
}

// ---------------------------------------------------------------- emission

namespace {

std::string glb_helper_name(const Domain& dom) {
  switch (dom.kind()) {
    case Domain::Kind::Weight: return "max";
    case Domain::Kind::Product: return "glb";
    default: return "min"; // U and B: glb is the numeric minimum
  }
}

std::string atom_with_extras(const Atom& a, const std::string& alpha, const std::string& w,
                             const std::string& beta) {
  std::string s = a.predicate + "(";
  for (const Term& t : a.args) s += to_string(t) + ",";
  return s + alpha + "," + w + "," + beta + ")";
}

std::string emit_clause(const ConstrainedClause& c, const Domain& dom, Dialect dialect) {
  const std::string op = dom.op_symbol();
  const std::string helper = glb_helper_name(dom);
  const std::string d = dom.format_value(c.attenuation);
  const bool toy = dialect == Dialect::ToyLike;

  std::string s = atom_with_extras(c.head, "F", "W", "M");
  s += " :- ";
  s += "F" + op + d + ">=M";

  const std::string alpha_expr = "F" + op + d;
  for (std::size_t i = 0; i < c.calls.size(); ++i) {
    const std::string& w = c.body_wvars[i];
    // range pair Wi > bot, Wi <= top
    if (dom.kind() == Domain::Kind::Weight)
      s += ", " + w + "<inf, " + w + ">=0";
    else if (dom.kind() == Domain::Kind::Product)
      s += ", " + w + ">" + dom.format_value(dom.bot()) + ", " + w + "<=" +
           dom.format_value(dom.top());
    else
      s += ", " + w + ">0, " + w + "<=" + dom.format_value(dom.top());
    s += ", " + atom_with_extras(c.calls[i].atom, alpha_expr, w, "M");
  }

  std::string wlist;
  for (std::size_t i = 0; i < c.body_wvars.size(); ++i) {
    if (i) wlist += ",";
    wlist += c.body_wvars[i];
  }
  if (toy)
    s += ", W == " + d + " " + op + " " + helper + "1 [" + wlist + "]";
  else
    s += ", W = " + d + " " + op + " " + helper + "{" + wlist + "}";
  return s;
}

std::string toy_prelude(const Domain& dom) {
  const std::string h = glb_helper_name(dom);
  std::string s;
  s += h + "1 [] = " + dom.format_value(dom.top()) + "\n";
  s += h + "1 [X|Xs] = " + h + "2 X (" + h + "1 Xs)\n";
  if (dom.kind() == Domain::Kind::Weight)
    s += h + "2 W1 W2 = if W1 >= W2 then W1 else W2\n"; // glb in W is the numeric max
  else
    s += h + "2 W1 W2 = if W1 <= W2 then W1 else W2\n";
  return s;
}

std::string toy_data_decl(const TranslatedProgram& tp) {
  std::map<std::string, std::size_t> ctors;
  std::function<void(const Term&)> note = [&](const Term& t) {
    if (t.is_var()) return;
    ctors.emplace(t.name(), t.args().size());
    for (const Term& a : t.args()) note(a);
  };
  for (const ConstrainedClause& c : tp.clauses) {
    for (const Term& t : c.head.args) note(t);
    for (const ConstrainedCall& call : c.calls)
      for (const Term& t : call.atom.args) note(t);
  }
  if (ctors.empty()) return "";
  std::string s = "data term = ";
  bool first = true;
  for (const auto& [name, arity] : ctors) {
    if (arity != 0) continue;
    if (!first) s += " | ";
    s += name;
    first = false;
  }
  for (const auto& [name, arity] : ctors) {
    if (arity == 0) continue;
    if (!first) s += " | ";
    s += name;
    for (std::size_t i = 0; i < arity; ++i) s += " term";
    first = false;
  }
  return s + "\n";
}

} // namespace

std::string emit_text(const TranslatedProgram& tp, Dialect dialect) {
  std::string out;
  if (dialect == Dialect::ToyLike) {
    out += toy_prelude(tp.domain);
    out += toy_data_decl(tp);
  } else {
    out += "% constrained clauses over " + tp.domain.name() + "\n";
  }
  for (const ConstrainedClause& c : tp.clauses) {
    out += emit_clause(c, tp.domain, dialect);
    out += "\n";
  }
  return out;
}

} // namespace qlp
