#include "qlp/resolution.hpp"

#include "qlp/semantics.hpp"

#include <map>
#include <stdexcept>

namespace qlp {

std::string FreshQVars::next() {
  std::string name;
  do {
    name = "W" + std::to_string(next_index++);
  } while (used.count(name));
  used.insert(name);
  return name;
}

FreshQVars FreshQVars::for_goal(const InitialGoal& goal) {
  FreshQVars f;
  for (const GoalItem& it : goal.items) f.used.insert(it.qvar);
  return f;
}

GoalState initial_state(const Domain& dom, const InitialGoal& goal) {
  GoalState g;
  std::set<std::string> seen;
  for (const GoalItem& it : goal.items) {
    if (!seen.insert(it.qvar).second)
      throw std::invalid_argument("duplicate qualification variable '" + it.qvar + "'");
    if (!dom.contains(it.threshold) || dom.is_bot(it.threshold))
      throw std::invalid_argument("threshold for '" + it.qvar + "' must be a non-bottom " +
                                  dom.name() + " value");
    g.atoms.push_back(GoalAtom{it.atom, it.qvar});
    g.store.add_threshold(dom.top(), it.qvar, it.threshold);
  }
  return g;
}

std::optional<std::string> goal_invariant_violation(const Domain& dom, const GoalState& g) {
  if (!g.sigma.is_idempotent()) return "sigma is not idempotent";
  std::set<std::string> atom_vars;
  for (const GoalAtom& a : g.atoms) collect_vars(a.atom, atom_vars);
  for (const auto& [v, _] : g.sigma.bindings())
    if (atom_vars.count(v)) return "dom(sigma) meets var(atoms) at " + v;
  if (!g.store.is_admissible(dom)) return "store is not admissible";
  std::set<std::string> atom_qvars;
  for (const GoalAtom& a : g.atoms) {
    if (!atom_qvars.insert(a.qvar).second) return "duplicate atom qvar " + a.qvar;
    if (!g.store.threshold_for(a.qvar)) return "no threshold constraint for " + a.qvar;
  }
  for (const Constraint& c : g.store.items())
    if (const auto* t = std::get_if<ThresholdConstraint>(&c))
      if (!atom_qvars.count(t->var)) return "stray threshold constraint for " + t->var;
  return std::nullopt;
}

std::optional<StepResult> resolution_step(const Domain& dom, const GoalState& state,
                                          std::size_t index, const Clause& clause,
                                          FreshVars& fresh_vars, FreshQVars& fresh_qvars,
                                          bool prune) {
  if (state.solved() || index >= state.atoms.size())
    throw std::logic_error("resolution_step: invalid atom index");
  const GoalAtom& selected = state.atoms[index];
  const ThresholdConstraint* th = state.store.threshold_for(selected.qvar);
  if (!th) throw std::logic_error("selected atom has no threshold constraint");

  if (prune && !enabled(dom, clause.attenuation, th->alpha, th->beta)) return std::nullopt;

  const Clause variant = rename_clause(clause, fresh_vars);
  auto s1 = mgu(selected.atom, variant.head);
  if (!s1) return std::nullopt;

  StepResult result;
  result.unifier = *s1;
  for (std::size_t i = 0; i < index; ++i)
    result.state.atoms.push_back(GoalAtom{(*s1)(state.atoms[i].atom), state.atoms[i].qvar});
  for (const Atom& b : variant.body) {
    result.new_qvars.push_back(fresh_qvars.next());
    result.state.atoms.push_back(GoalAtom{(*s1)(b), result.new_qvars.back()});
  }
  for (std::size_t i = index + 1; i < state.atoms.size(); ++i)
    result.state.atoms.push_back(GoalAtom{(*s1)(state.atoms[i].atom), state.atoms[i].qvar});

  result.state.sigma = compose(state.sigma, *s1);
  result.state.store =
      state.store.resolve(dom, selected.qvar, clause.attenuation, result.new_qvars);
  return result;
}

std::vector<std::string> clause_labels(const Program& program) {
  std::map<std::string, int> counts;
  std::vector<std::string> labels;
  labels.reserve(program.clauses.size());
  for (const Clause& c : program.clauses)
    labels.push_back(c.head.predicate + "." + std::to_string(++counts[c.head.predicate]));
  return labels;
}

AnswerStream::AnswerStream(Program program, InitialGoal goal, SearchConfig config)
    : program_(std::move(program)), config_(std::move(config)) {
  goal_vars_ = goal_term_vars(goal);
  goal_qvars_ = goal_qvars(goal);
  clause_labels_ = clause_labels(program_);
  fresh_qvars_ = FreshQVars::for_goal(goal);
  GoalState g0 = initial_state(program_.domain, goal);
  std::size_t sel = g0.solved() ? 0 : select(g0);
  stack_.push_back(Frame{std::move(g0), sel, 0});
}

std::size_t AnswerStream::select(const GoalState& g) const {
  if (config_.custom_select) return config_.custom_select(g);
  return config_.selection == Selection::Leftmost ? 0 : g.atoms.size() - 1;
}

std::optional<ComputedAnswer> AnswerStream::next() {
  if (status_ != Status::Running) return std::nullopt;
  const Domain& dom = program_.domain;
  while (!stack_.empty()) {
    Frame& frame = stack_.back();
    if (frame.state.solved()) {
      ComputedAnswer answer;
      answer.sigma = frame.state.sigma.restricted(goal_vars_);
      QualSubst omega = frame.state.store.omega(dom);
      for (const std::string& w : goal_qvars_) {
        auto it = omega.find(w);
        if (it != omega.end()) answer.mu.emplace(w, it->second);
      }
      stack_.pop_back();
      ++answers_;
      if (config_.max_answers && answers_ >= *config_.max_answers) status_ = Status::Truncated;
      return answer;
    }
    if (frame.next_clause >= program_.clauses.size()) {
      stack_.pop_back();
      continue;
    }
    const std::size_t ci = frame.next_clause++;
    auto step = resolution_step(dom, frame.state, frame.selected, program_.clauses[ci],
                                fresh_vars_, fresh_qvars_, config_.prune);
    if (!step) continue;
    if (config_.max_depth && steps_ >= *config_.max_depth) {
      status_ = Status::Truncated;
      return std::nullopt;
    }
    ++steps_;
    if (config_.trace) {
      TraceEvent ev;
      ev.step = steps_;
      ev.selected = frame.state.atoms[frame.selected].atom;
      ev.qvar = frame.state.atoms[frame.selected].qvar;
      ev.clause_label = clause_labels_[ci];
      ev.unifier = step->unifier;
      ev.store_after = step->state.store.render(dom);
      config_.trace(ev);
    }
    std::size_t sel = step->state.solved() ? 0 : select(step->state);
    stack_.push_back(Frame{std::move(step->state), sel, 0});
  }
  status_ = Status::Exhausted;
  return std::nullopt;
}

SolveResult solve(const Program& program, const InitialGoal& goal, const SearchConfig& config) {
  AnswerStream stream(program, goal, config);
  SolveResult result;
  while (auto a = stream.next()) result.answers.push_back(std::move(*a));
  result.truncated = stream.status() == AnswerStream::Status::Truncated;
  result.steps = stream.steps();
  return result;
}

Verdict check_answer(const Program& program, const InitialGoal& goal, const Substitution& theta,
                     const QualSubst& rho, int oracle_depth) {
  const Domain& dom = program.domain;
  // theta = sigma.theta stability: the initial goal's sigma is the identity,
  // so this holds by construction.
  for (const GoalItem& it : goal.items) {
    auto v = rho.find(it.qvar);
    if (v == rho.end()) return Verdict::Invalid;
    if (!dom.contains(v->second) || dom.is_bot(v->second)) return Verdict::Invalid;
    if (!dom.leq(it.threshold, v->second)) return Verdict::Invalid; // rho not in Sol(Delta0)
  }

  std::vector<Term> seeds;
  for (const GoalItem& it : goal.items)
    for (const Term& t : it.atom.args) seeds.push_back(theta(t));
  int depth = 2;
  for (const Clause& c : program.clauses) {
    for (const Term& t : c.head.args) depth = std::max(depth, t.depth());
    for (const Atom& a : c.body)
      for (const Term& t : a.args) depth = std::max(depth, t.depth());
  }
  for (const Term& t : seeds) depth = std::max(depth, t.depth());
  Oracle oracle(program, build_universe(program, depth + 1, seeds));

  bool all_proved = true;
  std::vector<std::pair<Atom, QualValue>> unproved;
  for (const GoalItem& it : goal.items) {
    Atom target = theta(it.atom);
    const QualValue& claimed = rho.at(it.qvar);
    if (!oracle.provable(target, claimed, oracle_depth)) {
      all_proved = false;
      unproved.emplace_back(std::move(target), claimed);
    }
  }
  if (all_proved) return Verdict::Valid;

  // Certify invalidity through the least-model fragment: only trustworthy
  // when the fragment reached a fixpoint.
  LeastModelResult lm = least_model_over(program, oracle.universe(), 100);
  if (!lm.fixpoint_reached) return Verdict::Unknown;
  for (const auto& [atom, value] : unproved)
    if (!lm.fragment.member_all_instances(dom, atom, value)) return Verdict::Invalid;
  return Verdict::Unknown;
}

bool subsumes(const Domain& dom, const ComputedAnswer& general, const Substitution& theta,
              const QualSubst& rho, const std::set<std::string>& varset,
              const std::set<std::string>& warset) {
  Substitution eta;
  for (const std::string& v : varset) {
    Term pattern = general.sigma(Term::var(v));
    Term target = theta(Term::var(v));
    if (!match_into(pattern, target, eta)) return false;
  }
  for (const std::string& w : warset) {
    auto mu = general.mu.find(w);
    auto r = rho.find(w);
    const QualValue mu_v = mu == general.mu.end() ? dom.bot() : mu->second;
    const QualValue rho_v = r == rho.end() ? dom.bot() : r->second;
    if (!dom.leq(rho_v, mu_v)) return false;
  }
  return true;
}

} // namespace qlp
