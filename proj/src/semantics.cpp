#include "qlp/semantics.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qlp {

// ------------------------------------------------------ fragment & universe

InterpretationFragment::InterpretationFragment(std::vector<Term> universe)
    : universe_(std::move(universe)) {
  for (const Term& t : universe_) universe_keys_.insert(to_string(t));
}

bool InterpretationFragment::term_in_universe(const Term& t) const {
  return universe_keys_.count(to_string(t)) != 0;
}

bool InterpretationFragment::atom_in_universe(const Atom& a) const {
  for (const Term& t : a.args)
    if (!term_in_universe(t)) return false;
  return true;
}

namespace {
/// Antichain insertion; true when v was not already dominated.
bool antichain_insert(const Domain& dom, std::vector<QualValue>& chain, const QualValue& v) {
  for (const QualValue& e : chain)
    if (dom.leq(v, e)) return false;
  std::erase_if(chain, [&](const QualValue& e) { return dom.leq(e, v); });
  chain.push_back(v);
  return true;
}
} // namespace

bool InterpretationFragment::insert(const Domain& dom, const Atom& ground, const QualValue& v) {
  if (dom.is_bot(v)) return false;
  auto [it, _] = entries_.try_emplace(to_string(ground), ground, std::vector<QualValue>{});
  return antichain_insert(dom, it->second.second, v);
}

const std::vector<QualValue>* InterpretationFragment::apexes(const Atom& ground) const {
  auto it = entries_.find(to_string(ground));
  return it == entries_.end() ? nullptr : &it->second.second;
}

bool InterpretationFragment::member(const Domain& dom, const Atom& ground,
                                    const QualValue& v) const {
  const auto* chain = apexes(ground);
  if (!chain) return false;
  for (const QualValue& e : *chain)
    if (dom.leq(v, e)) return true;
  return false;
}

namespace {
void for_each_grounding(const std::vector<std::string>& vars, const std::vector<Term>& universe,
                        const std::function<void(const Substitution&)>& fn) {
  Substitution s;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) {
      fn(s);
      return;
    }
    for (const Term& t : universe) {
      s.bind(vars[i], t);
      rec(i + 1);
    }
  };
  rec(0);
}

std::vector<std::string> ordered_vars(const Atom& a) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    if (t.is_var()) {
      if (seen.insert(t.name()).second) out.push_back(t.name());
      return;
    }
    for (const Term& x : t.args()) walk(x);
  };
  for (const Term& t : a.args) walk(t);
  return out;
}
} // namespace

bool InterpretationFragment::member_all_instances(const Domain& dom, const Atom& atom,
                                                  const QualValue& v) const {
  std::vector<std::string> vars = ordered_vars(atom);
  if (vars.empty()) return member(dom, atom, v);
  bool all = true;
  for_each_grounding(vars, universe_, [&](const Substitution& s) {
    if (!all) return;
    if (!member(dom, s(atom), v)) all = false;
  });
  return all;
}

bool InterpretationFragment::includes(const Domain& dom,
                                      const InterpretationFragment& other) const {
  for (const auto& [_, entry] : other.entries_)
    for (const QualValue& v : entry.second)
      if (!member(dom, entry.first, v)) return false;
  return true;
}

bool InterpretationFragment::same_apexes(const InterpretationFragment& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  for (auto it = entries_.begin(), jt = other.entries_.begin(); it != entries_.end();
       ++it, ++jt) {
    if (it->first != jt->first) return false;
    // antichains compared as sets
    const auto& a = it->second.second;
    const auto& b = jt->second.second;
    if (a.size() != b.size()) return false;
    for (const QualValue& v : a)
      if (std::find(b.begin(), b.end(), v) == b.end()) return false;
  }
  return true;
}

std::size_t InterpretationFragment::apex_count() const {
  std::size_t n = 0;
  for (const auto& [_, entry] : entries_) n += entry.second.size();
  return n;
}

std::string InterpretationFragment::dump(const Domain& dom) const {
  std::vector<std::string> lines;
  for (const auto& [key, entry] : entries_)
    for (const QualValue& v : entry.second) lines.push_back(key + " # " + dom.format_value(v));
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const std::string& l : lines) {
    out += l;
    out += "\n";
  }
  return out;
}

std::vector<Term> build_universe(const Program& program, int depth,
                                 const std::vector<Term>& seeds) {
  std::map<std::string, std::size_t> ctors;
  std::function<void(const Term&)> note = [&](const Term& t) {
    if (t.is_var()) return;
    ctors.emplace(t.name(), t.args().size());
    for (const Term& a : t.args()) note(a);
  };
  for (const Clause& c : program.clauses) {
    for (const Term& t : c.head.args) note(t);
    for (const Atom& a : c.body)
      for (const Term& t : a.args) note(t);
  }
  for (const Term& t : seeds) note(t);

  bool has_constant = false;
  for (const auto& [_, arity] : ctors)
    if (arity == 0) has_constant = true;
  if (!has_constant) {
    // inject an artificial constant so the ground universe is nonempty
    int i = 0;
    while (ctors.count("c" + std::to_string(i))) ++i;
    ctors.emplace("c" + std::to_string(i), 0);
  }

  std::map<std::string, Term> terms;
  for (const auto& [name, arity] : ctors)
    if (arity == 0) terms.emplace(name, Term::app(name));

  for (int level = 2; level <= depth; ++level) {
    std::vector<Term> current;
    current.reserve(terms.size());
    for (const auto& [_, t] : terms) current.push_back(t);
    for (const auto& [name, arity] : ctors) {
      if (arity == 0) continue;
      std::vector<std::size_t> idx(arity, 0);
      while (true) {
        std::vector<Term> args;
        args.reserve(arity);
        for (std::size_t i = 0; i < arity; ++i) args.push_back(current[idx[i]]);
        Term t = Term::app(name, std::move(args));
        terms.emplace(to_string(t), t);
        std::size_t k = 0;
        for (; k < arity; ++k) {
          if (++idx[k] < current.size()) break;
          idx[k] = 0;
        }
        if (k == arity) break;
      }
    }
  }

  // ground subterms of the seeds, whatever their depth
  std::function<void(const Term&)> add_ground = [&](const Term& t) {
    if (t.is_var()) {
      return;
    }
    std::set<std::string> vars;
    collect_vars(t, vars);
    if (vars.empty()) terms.emplace(to_string(t), t);
    for (const Term& a : t.args()) add_ground(a);
  };
  for (const Term& t : seeds) add_ground(t);

  std::vector<Term> out;
  out.reserve(terms.size());
  for (const auto& [_, t] : terms) out.push_back(t);
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    int da = a.depth(), db = b.depth();
    if (da != db) return da < db;
    return to_string(a) < to_string(b);
  });
  return out;
}

// ---------------------------------------------------------------- QMP / T_P

bool qmp_check(const Domain& dom, const Clause& clause, const Substitution& theta,
               const std::vector<AnnotatedAtom>& premises, const AnnotatedAtom& conclusion) {
  if (dom.is_bot(conclusion.value)) return false;
  if (!(conclusion.atom == theta(clause.head))) return false;
  if (premises.size() != clause.body.size()) return false;
  std::vector<QualValue> values;
  values.reserve(premises.size());
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (dom.is_bot(premises[i].value)) return false;
    if (!(premises[i].atom == theta(clause.body[i]))) return false;
    values.push_back(premises[i].value);
  }
  return dom.leq(conclusion.value, dom.attenuate(clause.attenuation, dom.big_glb(values)));
}

InterpretationFragment tp_step(const Program& program, const InterpretationFragment& frag) {
  const Domain& dom = program.domain;
  InterpretationFragment next(frag.universe());
  for (const Clause& clause : program.clauses) {
    std::set<std::string> var_set;
    collect_vars(clause.head, var_set);
    for (const Atom& a : clause.body) collect_vars(a, var_set);
    std::vector<std::string> vars(var_set.begin(), var_set.end());

    for_each_grounding(vars, frag.universe(), [&](const Substitution& theta) {
      Atom head = theta(clause.head);
      if (!next.atom_in_universe(head)) return;
      std::vector<const std::vector<QualValue>*> body_apexes;
      body_apexes.reserve(clause.body.size());
      for (const Atom& b : clause.body) {
        const auto* chain = frag.apexes(theta(b));
        if (!chain || chain->empty()) return;
        body_apexes.push_back(chain);
      }
      // combinations of apex values, one per body atom
      std::vector<std::size_t> idx(body_apexes.size(), 0);
      while (true) {
        std::vector<QualValue> values;
        values.reserve(body_apexes.size());
        for (std::size_t i = 0; i < body_apexes.size(); ++i)
          values.push_back((*body_apexes[i])[idx[i]]);
        next.insert(dom, head, dom.attenuate(clause.attenuation, dom.big_glb(values)));
        std::size_t k = 0;
        for (; k < body_apexes.size(); ++k) {
          if (++idx[k] < body_apexes[k]->size()) break;
          idx[k] = 0;
        }
        if (k == body_apexes.size()) break;
      }
    });
  }
  return next;
}

LeastModelResult least_model_over(const Program& program, std::vector<Term> universe,
                                  int max_iters) {
  LeastModelResult result;
  result.fragment = InterpretationFragment(std::move(universe));
  for (int i = 0; i < max_iters; ++i) {
    InterpretationFragment next = tp_step(program, result.fragment);
    ++result.iterations;
    if (next.same_apexes(result.fragment)) {
      result.fixpoint_reached = true;
      return result;
    }
    result.fragment = std::move(next);
  }
  return result;
}

LeastModelResult least_model(const Program& program, int universe_depth, int max_iters) {
  return least_model_over(program, build_universe(program, universe_depth), max_iters);
}

bool is_model(const Program& program, const InterpretationFragment& frag) {
  return frag.includes(program.domain, tp_step(program, frag));
}

// ------------------------------------------------------------------- Oracle

Oracle::Oracle(Program program, std::vector<Term> universe)
    : program_(std::move(program)), universe_(std::move(universe)) {}

const std::vector<Oracle::Entry>& Oracle::derive(const Atom& target, int depth) {
  static const std::vector<Entry> kEmpty;
  if (depth <= 0) return kEmpty;
  const std::string key = std::to_string(depth) + ":" + to_string(target);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  // reserve the slot first: derive() never revisits the same key while
  // computing it (recursion always descends in depth)
  const Domain& dom = program_.domain;
  std::vector<Entry> result;

  for (std::size_t ci = 0; ci < program_.clauses.size(); ++ci) {
    const Clause& original = program_.clauses[ci];
    if (original.head.predicate != target.predicate ||
        original.head.args.size() != target.args.size())
      continue;

    // variant with fresh names so clause variables never capture target ones
    std::set<std::string> clause_vars;
    collect_vars(original.head, clause_vars);
    for (const Atom& a : original.body) collect_vars(a, clause_vars);
    Substitution renaming;
    for (const std::string& v : clause_vars) renaming.bind(v, Term::var(fresh_.next()));
    const Atom head = renaming(original.head);
    const std::vector<Atom> body = renaming(original.body);

    Substitution matcher;
    if (!match_into(head, target, matcher)) continue;

    std::vector<std::string> extra;
    {
      std::set<std::string> body_vars;
      for (const Atom& a : body) collect_vars(a, body_vars);
      for (const std::string& v : body_vars)
        if (!matcher.find(v)) extra.push_back(v);
    }

    for_each_grounding(extra, universe_, [&](const Substitution& grounding) {
      Substitution theta = matcher;
      for (const auto& [v, t] : grounding.bindings()) theta.bind(v, t);

      std::vector<std::vector<QualValue>> premise_values;
      premise_values.reserve(body.size());
      std::vector<Atom> premise_atoms;
      premise_atoms.reserve(body.size());
      for (const Atom& b : body) {
        Atom instance = theta(b);
        const auto& entries = derive(instance, depth - 1);
        if (entries.empty()) return;
        std::vector<QualValue> values;
        values.reserve(entries.size());
        for (const Entry& e : entries) values.push_back(e.value);
        premise_values.push_back(std::move(values));
        premise_atoms.push_back(std::move(instance));
      }

      // theta over the original clause's variable names, for proof trees
      Substitution theta_orig;
      for (const std::string& v : clause_vars) theta_orig.bind(v, theta(renaming(Term::var(v))));

      std::vector<std::size_t> idx(premise_values.size(), 0);
      while (true) {
        std::vector<QualValue> values;
        values.reserve(premise_values.size());
        for (std::size_t i = 0; i < premise_values.size(); ++i)
          values.push_back(premise_values[i][idx[i]]);
        QualValue v = dom.attenuate(original.attenuation, dom.big_glb(values));
        bool dominated = false;
        for (const Entry& e : result)
          if (dom.leq(v, e.value)) {
            dominated = true;
            break;
          }
        if (!dominated) {
          std::erase_if(result, [&](const Entry& e) { return dom.leq(e.value, v); });
          result.push_back(Entry{std::move(v), ci, theta_orig, values});
        }
        std::size_t k = 0;
        for (; k < premise_values.size(); ++k) {
          if (++idx[k] < premise_values[k].size()) break;
          idx[k] = 0;
        }
        if (k == premise_values.size()) break;
      }
    });
  }
  return memo_.emplace(key, std::move(result)).first->second;
}

bool Oracle::provable(const Atom& target, const QualValue& value, int depth) {
  const Domain& dom = program_.domain;
  if (dom.is_bot(value)) return false;
  for (const Entry& e : derive(target, depth))
    if (dom.leq(value, e.value)) return true;
  return false;
}

std::vector<QualValue> Oracle::derivable_values(const Atom& target, int depth) {
  std::vector<QualValue> out;
  for (const Entry& e : derive(target, depth)) out.push_back(e.value);
  return out;
}

std::optional<ProofTree> Oracle::prove(const Atom& target, const QualValue& value, int depth) {
  const Domain& dom = program_.domain;
  if (dom.is_bot(value)) return std::nullopt;
  const Entry* found = nullptr;
  for (const Entry& e : derive(target, depth))
    if (dom.leq(value, e.value)) {
      found = &e;
      break;
    }
  if (!found) return std::nullopt;
  // copy what we need before recursing: derive() may invalidate entry refs
  const Entry entry = *found;
  ProofTree tree{AnnotatedAtom{target, value}, entry.clause_index, entry.theta, {}};
  const Clause& clause = program_.clauses[entry.clause_index];
  for (std::size_t i = 0; i < clause.body.size(); ++i) {
    Atom premise = entry.theta(clause.body[i]);
    auto child = prove(premise, entry.child_values[i], depth - 1);
    if (!child) return std::nullopt; // child value came from derive(); cannot happen
    tree.children.push_back(std::move(*child));
  }
  return tree;
}

std::optional<ProofTree> qhl_prove(const Program& program, const AnnotatedAtom& target,
                                   int depth_bound) {
  int depth = 2;
  for (const Clause& c : program.clauses) {
    for (const Term& t : c.head.args) depth = std::max(depth, t.depth());
    for (const Atom& a : c.body)
      for (const Term& t : a.args) depth = std::max(depth, t.depth());
  }
  for (const Term& t : target.atom.args) depth = std::max(depth, t.depth());
  Oracle oracle(program, build_universe(program, depth + 1, target.atom.args));
  return oracle.prove(target.atom, target.value, depth_bound);
}

} // namespace qlp
