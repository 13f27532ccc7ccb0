#include "qlp/constraints.hpp"

#include <functional>
#include <stdexcept>

namespace qlp {

bool enabled(const Domain& dom, const QualValue& d, const QualValue& alpha,
             const QualValue& beta) {
  return dom.leq(beta, dom.attenuate(d, alpha));
}

void ConstraintStore::add_threshold(QualValue alpha, std::string var, QualValue beta) {
  items_.push_back(ThresholdConstraint{std::move(alpha), std::move(var), std::move(beta)});
}

void ConstraintStore::add_defining(std::string var, QualValue factor,
                                   std::vector<std::string> deps) {
  items_.push_back(DefiningConstraint{std::move(var), std::move(factor), std::move(deps)});
}

namespace {
const std::string& lhs_var(const Constraint& c) {
  if (const auto* t = std::get_if<ThresholdConstraint>(&c)) return t->var;
  return std::get<DefiningConstraint>(c).var;
}
} // namespace

const ThresholdConstraint* ConstraintStore::threshold_for(const std::string& var) const {
  for (const Constraint& c : items_)
    if (const auto* t = std::get_if<ThresholdConstraint>(&c))
      if (t->var == var) return t;
  return nullptr;
}

bool ConstraintStore::has_constraint_for(const std::string& var) const {
  for (const Constraint& c : items_)
    if (lhs_var(c) == var) return true;
  return false;
}

std::set<std::string> ConstraintStore::war() const {
  std::set<std::string> out;
  for (const Constraint& c : items_) {
    out.insert(lhs_var(c));
    if (const auto* d = std::get_if<DefiningConstraint>(&c))
      out.insert(d->deps.begin(), d->deps.end());
  }
  return out;
}

std::set<std::string> ConstraintStore::dom() const {
  std::set<std::string> out;
  for (const Constraint& c : items_) out.insert(lhs_var(c));
  return out;
}

ConstraintStore ConstraintStore::resolve(const Domain& dom, const std::string& w,
                                         const QualValue& d,
                                         const std::vector<std::string>& fresh) const {
  for (const std::string& f : fresh)
    if (has_constraint_for(f))
      throw std::logic_error("fresh qualification variable '" + f + "' already constrained");
  ConstraintStore out;
  const ThresholdConstraint* found = nullptr;
  for (const Constraint& c : items_) {
    const auto* t = std::get_if<ThresholdConstraint>(&c);
    if (t && t->var == w) {
      found = t;
      // replaced in place: keeps trace rendering aligned with the goal layout
      out.add_defining(w, d, fresh);
    } else {
      out.items_.push_back(c);
    }
  }
  if (!found) throw std::logic_error("no threshold constraint for '" + w + "'");
  const QualValue new_alpha = dom.attenuate(d, found->alpha);
  for (const std::string& f : fresh) out.add_threshold(new_alpha, f, found->beta);
  return out;
}

bool ConstraintStore::is_admissible(const Domain& dom) const {
  // one and only one constraint per variable in war()
  std::set<std::string> lhs;
  for (const Constraint& c : items_)
    if (!lhs.insert(lhs_var(c)).second) return false;
  for (const std::string& v : war())
    if (!lhs.count(v)) return false;

  // satisfiability, exact for goal-shaped stores: alpha >= beta per threshold
  // (and no bottom components anywhere)
  for (const Constraint& c : items_) {
    if (const auto* t = std::get_if<ThresholdConstraint>(&c)) {
      if (dom.is_bot(t->alpha) || dom.is_bot(t->beta)) return false;
      if (!dom.leq(t->beta, t->alpha)) return false;
    } else {
      if (dom.is_bot(std::get<DefiningConstraint>(c).factor)) return false;
    }
  }

  // acyclicity of the dependency relation
  std::map<std::string, const DefiningConstraint*> defs;
  for (const Constraint& c : items_)
    if (const auto* d = std::get_if<DefiningConstraint>(&c)) defs[d->var] = d;
  std::map<std::string, int> state; // 0 unseen, 1 on stack, 2 done
  std::function<bool(const std::string&)> cyclic = [&](const std::string& v) -> bool {
    auto it = defs.find(v);
    if (it == defs.end()) return false;
    int& st = state[v];
    if (st == 1) return true;
    if (st == 2) return false;
    st = 1;
    for (const std::string& dep : it->second->deps)
      if (cyclic(dep)) return true;
    st = 2;
    return false;
  };
  for (const auto& [v, _] : defs)
    if (cyclic(v)) return false;
  return true;
}

bool ConstraintStore::is_solved(const Domain& dom) const {
  for (const Constraint& c : items_)
    if (std::holds_alternative<ThresholdConstraint>(c)) return false;
  return is_admissible(dom);
}

QualSubst ConstraintStore::omega(const Domain& dom) const {
  if (!is_solved(dom)) throw std::logic_error("omega requires a solved constraint store");
  std::map<std::string, const DefiningConstraint*> defs;
  for (const Constraint& c : items_) {
    const auto& d = std::get<DefiningConstraint>(c);
    defs[d.var] = &d;
  }
  QualSubst out;
  std::function<const QualValue&(const std::string&)> eval =
      [&](const std::string& v) -> const QualValue& {
    auto done = out.find(v);
    if (done != out.end()) return done->second;
    const DefiningConstraint* d = defs.at(v); // solved => every dep is defined
    std::vector<QualValue> dep_values;
    dep_values.reserve(d->deps.size());
    for (const std::string& dep : d->deps) dep_values.push_back(eval(dep));
    return out.emplace(v, dom.attenuate(d->factor, dom.big_glb(dep_values))).first->second;
  };
  for (const auto& [v, _] : defs) eval(v);
  return out;
}

bool ConstraintStore::check_solution(const Domain& dom, const QualSubst& rho) const {
  auto value_of = [&](const std::string& v) -> const QualValue* {
    auto it = rho.find(v);
    return it == rho.end() ? nullptr : &it->second;
  };
  for (const Constraint& c : items_) {
    if (const auto* t = std::get_if<ThresholdConstraint>(&c)) {
      const QualValue* w = value_of(t->var);
      if (!w) return false;
      if (!dom.leq(t->beta, dom.attenuate(t->alpha, *w))) return false;
    } else {
      const auto& d = std::get<DefiningConstraint>(c);
      const QualValue* w = value_of(d.var);
      if (!w) return false;
      std::vector<QualValue> dep_values;
      for (const std::string& dep : d.deps) {
        const QualValue* dv = value_of(dep);
        if (!dv) return false;
        dep_values.push_back(*dv);
      }
      if (!(*w == dom.attenuate(d.factor, dom.big_glb(dep_values)))) return false;
    }
  }
  return true;
}

std::string ConstraintStore::render_constraint(const Domain& dom, const Constraint& c) const {
  if (const auto* t = std::get_if<ThresholdConstraint>(&c)) {
    std::string lhs = dom.is_top(t->alpha)
                          ? t->var
                          : dom.format_value(t->alpha) + " " + dom.op_symbol() + " " + t->var;
    return lhs + " >= " + dom.format_value(t->beta);
  }
  const auto& d = std::get<DefiningConstraint>(c);
  if (d.deps.empty()) return d.var + " = " + dom.format_value(d.factor);
  std::string deps;
  for (std::size_t i = 0; i < d.deps.size(); ++i) {
    if (i) deps += ",";
    deps += d.deps[i];
  }
  return d.var + " = " + dom.format_value(d.factor) + " " + dom.op_symbol() + " " +
         dom.glb_name() + "{" + deps + "}";
}

std::string ConstraintStore::render(const Domain& dom) const {
  std::string out;
  for (const Constraint& c : items_) {
    if (!out.empty()) out += ", ";
    out += render_constraint(dom, c);
  }
  return out;
}

} // namespace qlp
