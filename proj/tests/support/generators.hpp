#pragma once

#include "qlp/syntax.hpp"

#include <random>
#include <string>
#include <vector>

namespace qlp::testing {

// Random desk-scale programs: <= 6 clauses, term depth <= 2, flat bodies
// (variables and constants only). Attenuation and threshold ranges are
// chosen so that every search is finite under pruning and every derivation
// fits in oracle depth 6:
//   U: rules attenuate by <= 0.7 and thresholds are >= 0.2,
//   W: rules cost >= 1 and thresholds are <= 4,
//   B: programs are stratified (no recursion).
struct GenConfig {
  Domain domain = Domain::certainty();
  bool stratified = false; // body predicates strictly below the head's
  bool allow_constructor = true;
};

class ProgramGen {
 public:
  ProgramGen(std::mt19937& rng, GenConfig config) : rng_(rng), config_(std::move(config)) {}

  Program program() {
    constants_ = {"a", "b"};
    if (flip(0.4)) constants_.push_back("c");
    use_constructor_ = config_.allow_constructor && flip(0.35);
    int npreds = 2 + pick(3);
    preds_.clear();
    const char* names[] = {"p", "q", "r", "s", "t0"};
    for (int i = 0; i < npreds; ++i) preds_.push_back({names[i], 1 + pick(2)});

    Program prog{config_.domain, {}};
    int nclauses = 3 + pick(4);
    for (int i = 0; i < nclauses; ++i) prog.clauses.push_back(gen_clause(i, nclauses));
    return prog;
  }

  InitialGoal goal(const Program& prog) {
    InitialGoal g;
    int items = 1 + pick(2);
    int var_counter = 0;
    for (int i = 0; i < items; ++i) {
      const auto& [name, arity] = preds_[pick((int)preds_.size())];
      std::vector<Term> args;
      for (int a = 0; a < arity; ++a) {
        if (flip(0.6))
          args.push_back(Term::var("X" + std::to_string(var_counter++)));
        else
          args.push_back(Term::app(constants_[pick((int)constants_.size())]));
      }
      g.items.push_back(GoalItem{Atom{name, std::move(args)}, "W" + std::to_string(i + 1),
                                 goal_threshold(config_.domain)});
    }
    return g;
  }

 private:
  bool flip(double p) { return std::uniform_real_distribution<>(0, 1)(rng_) < p; }
  int pick(int n) { return std::uniform_int_distribution<>(0, n - 1)(rng_); }

  Clause gen_clause(int index, int total) {
    int pred_idx = pick((int)preds_.size());
    const auto& [name, arity] = preds_[pred_idx];
    std::vector<std::string> head_vars;
    std::vector<Term> head_args;
    for (int a = 0; a < arity; ++a) {
      if (flip(0.55)) {
        std::string v = a == 0 ? "X" : "Y";
        head_vars.push_back(v);
        Term var = Term::var(v);
        if (use_constructor_ && flip(0.3)) var = Term::app("f", {var});
        head_args.push_back(var);
      } else {
        Term t = Term::app(constants_[pick((int)constants_.size())]);
        if (use_constructor_ && flip(0.2)) t = Term::app("f", {t});
        head_args.push_back(t);
      }
    }
    Atom head{name, std::move(head_args)};

    // early clauses lean toward facts so programs have something to derive
    int body_size = index < 2 ? (flip(0.75) ? 0 : 1) : pick(3);
    if (config_.stratified && pred_idx == 0) body_size = 0;
    std::vector<Atom> body;
    for (int b = 0; b < body_size; ++b) {
      int bp = config_.stratified ? pick(pred_idx == 0 ? 1 : pred_idx) : pick((int)preds_.size());
      if (config_.stratified && bp >= pred_idx) bp = pred_idx == 0 ? 0 : pred_idx - 1;
      const auto& [bname, barity] = preds_[bp];
      std::vector<Term> args;
      for (int a = 0; a < barity; ++a) {
        if (!head_vars.empty() && flip(0.6))
          args.push_back(Term::var(head_vars[pick((int)head_vars.size())]));
        else if (flip(0.3))
          args.push_back(Term::var("Z")); // extra body variable
        else
          args.push_back(Term::app(constants_[pick((int)constants_.size())]));
      }
      body.push_back(Atom{bname, std::move(args)});
    }
    if (config_.stratified && pred_idx == 0) body.clear();

    return Clause{std::move(head), attenuation(config_.domain, body.empty()), std::move(body)};
  }

  QualValue attenuation(const Domain& d, bool fact) {
    switch (d.kind()) {
      case Domain::Kind::Bool: return QualValue::boolean(true);
      case Domain::Kind::Cert: {
        if (fact) {
          const Rational vals[] = {Rational(1), Rational(9, 10), Rational(4, 5)};
          return QualValue::certainty(vals[pick(3)]);
        }
        const Rational vals[] = {Rational(3, 10), Rational(2, 5), Rational(1, 2),
                                 Rational(3, 5), Rational(7, 10)};
        return QualValue::certainty(vals[pick(5)]);
      }
      case Domain::Kind::Weight:
        if (fact) return QualValue::weight(pick(3)); // 0..2; 0 is top, still valid
        return QualValue::weight(1 + pick(3));       // rules cost at least 1
      case Domain::Kind::Product:
        return QualValue::pair(attenuation(d.left(), fact), attenuation(d.right(), fact));
    }
    return d.top();
  }

  QualValue goal_threshold(const Domain& d) {
    switch (d.kind()) {
      case Domain::Kind::Bool: return QualValue::boolean(true);
      case Domain::Kind::Cert: {
        const Rational vals[] = {Rational(1, 5), Rational(3, 10), Rational(2, 5)};
        return QualValue::certainty(vals[pick(3)]);
      }
      case Domain::Kind::Weight: return QualValue::weight(3 + pick(2)); // 3 or 4
      case Domain::Kind::Product:
        return QualValue::pair(goal_threshold(d.left()), goal_threshold(d.right()));
    }
    return d.top();
  }

  std::mt19937& rng_;
  GenConfig config_;
  std::vector<std::string> constants_;
  std::vector<std::pair<std::string, int>> preds_;
  bool use_constructor_ = false;
};

} // namespace qlp::testing
