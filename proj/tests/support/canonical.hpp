#pragma once

#include "qlp/resolution.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace qlp::testing {

/// Renders an answer with free variables renamed by first occurrence, so
/// alpha-equivalent answers compare equal.
inline std::string canon_answer(const Domain& dom, const Substitution& sigma,
                                const QualSubst& mu, const std::vector<std::string>& goal_vars) {
  std::map<std::string, std::string> renames;
  std::function<std::string(const Term&)> canon = [&](const Term& t) -> std::string {
    if (t.is_var()) {
      auto [it, fresh] = renames.emplace(t.name(), "_r" + std::to_string(renames.size()));
      (void)fresh;
      return it->second;
    }
    if (t.args().empty()) return t.name();
    std::string s = t.name() + "(";
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i) s += ",";
      s += canon(t.args()[i]);
    }
    return s + ")";
  };
  std::string out;
  for (const std::string& v : goal_vars) out += v + "=" + canon(sigma(Term::var(v))) + ";";
  for (const auto& [w, q] : mu) out += w + "=" + dom.format_value(q) + ";";
  return out;
}

inline std::vector<std::string> canon_answers(const Domain& dom,
                                              const std::vector<ComputedAnswer>& answers,
                                              const std::vector<std::string>& goal_vars) {
  std::vector<std::string> out;
  out.reserve(answers.size());
  for (const ComputedAnswer& a : answers) out.push_back(canon_answer(dom, a.sigma, a.mu, goal_vars));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace qlp::testing
