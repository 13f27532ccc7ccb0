#include "qlp/unify.hpp"

namespace qlp {

Substitution Substitution::single(std::string var, Term t) {
  Substitution s;
  s.bind(std::move(var), std::move(t));
  return s;
}

const Term* Substitution::find(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

void Substitution::bind(std::string var, Term t) {
  if (t.is_var() && t.name() == var) return;
  map_.insert_or_assign(std::move(var), std::move(t));
}

Term Substitution::operator()(const Term& t) const {
  if (t.is_var()) {
    const Term* bound = find(t.name());
    return bound ? *bound : t;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back((*this)(a));
    if (args.back() != a) changed = true;
  }
  return changed ? Term::app(t.name(), std::move(args)) : t;
}

Atom Substitution::operator()(const Atom& a) const {
  std::vector<Term> args;
  args.reserve(a.args.size());
  for (const Term& t : a.args) args.push_back((*this)(t));
  return Atom{a.predicate, std::move(args)};
}

std::vector<Atom> Substitution::operator()(const std::vector<Atom>& atoms) const {
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const Atom& a : atoms) out.push_back((*this)(a));
  return out;
}

Substitution Substitution::restricted(const std::set<std::string>& vars) const {
  Substitution out;
  for (const auto& [v, t] : map_)
    if (vars.count(v)) out.bind(v, t);
  return out;
}

bool Substitution::is_idempotent() const {
  for (const auto& [v, t] : map_) {
    std::set<std::string> range_vars;
    collect_vars(t, range_vars);
    for (const auto& rv : range_vars)
      if (map_.count(rv)) return false;
  }
  return true;
}

Substitution compose(const Substitution& s1, const Substitution& s2) {
  Substitution out;
  for (const auto& [v, t] : s1.bindings()) out.bind(v, s2(t));
  for (const auto& [v, t] : s2.bindings())
    if (!s1.find(v)) out.bind(v, t);
  return out;
}

namespace {

bool occurs(const std::string& var, const Term& t) {
  if (t.is_var()) return t.name() == var;
  for (const Term& a : t.args())
    if (occurs(var, a)) return true;
  return false;
}

bool unify_terms(const Term& a, const Term& b, Substitution& s) {
  Term t = s(a);
  Term u = s(b);
  if (t.is_var() && u.is_var()) {
    if (t.name() == u.name()) return true;
    s = compose(s, Substitution::single(u.name(), t)); // eliminate the right side
    return true;
  }
  if (t.is_var()) {
    if (occurs(t.name(), u)) return false;
    s = compose(s, Substitution::single(t.name(), u));
    return true;
  }
  if (u.is_var()) {
    if (occurs(u.name(), t)) return false;
    s = compose(s, Substitution::single(u.name(), t));
    return true;
  }
  if (t.name() != u.name() || t.args().size() != u.args().size()) return false;
  for (std::size_t i = 0; i < t.args().size(); ++i)
    if (!unify_terms(t.args()[i], u.args()[i], s)) return false;
  return true;
}

} // namespace

std::optional<Substitution> mgu(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return std::nullopt;
  Substitution s;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!unify_terms(a.args[i], b.args[i], s)) return std::nullopt;
  return s;
}

bool match_into(const Term& pattern, const Term& target, Substitution& acc) {
  if (pattern.is_var()) {
    if (const Term* bound = acc.find(pattern.name())) return *bound == target;
    acc.bind(pattern.name(), target);
    return true;
  }
  if (target.is_var()) return false;
  if (pattern.name() != target.name() || pattern.args().size() != target.args().size())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_into(pattern.args()[i], target.args()[i], acc)) return false;
  return true;
}

bool match_into(const Atom& pattern, const Atom& target, Substitution& acc) {
  if (pattern.predicate != target.predicate || pattern.args.size() != target.args.size())
    return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_into(pattern.args[i], target.args[i], acc)) return false;
  return true;
}

Clause rename_clause(const Clause& c, FreshVars& fresh) {
  std::set<std::string> vars;
  collect_vars(c.head, vars);
  for (const Atom& a : c.body) collect_vars(a, vars);
  Substitution renaming;
  for (const std::string& v : vars) renaming.bind(v, Term::var(fresh.next()));
  return Clause{renaming(c.head), c.attenuation, renaming(c.body)};
}

std::string to_string(const Substitution& s) {
  std::string out;
  for (const auto& [v, t] : s.bindings()) {
    if (!out.empty()) out += ", ";
    out += v + " = " + to_string(t);
  }
  return out;
}

} // namespace qlp
