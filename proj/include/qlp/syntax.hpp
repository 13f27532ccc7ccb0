#pragma once

#include "qlp/domain.hpp"

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qlp {

/// First-order term: a variable (name starting uppercase or '_') or a
/// constructor application. Immutable; copies share structure.
class Term {
 public:
  static Term var(std::string name);
  static Term app(std::string constructor, std::vector<Term> args = {});

  bool is_var() const { return node_->is_var; }
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
  bool operator<(const Term& o) const; // structural, for ordered containers

  /// Constants have depth 1; an application is 1 + the max argument depth.
  int depth() const;

 private:
  struct Node {
    bool is_var;
    std::string name;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;
  bool operator==(const Atom& o) const { return predicate == o.predicate && args == o.args; }
  bool operator!=(const Atom& o) const { return !(*this == o); }
};

struct Clause {
  Atom head;
  QualValue attenuation; // never the domain's bottom
  std::vector<Atom> body;
};

struct Program {
  Domain domain;
  std::vector<Clause> clauses; // order is the search order
};

struct GoalItem {
  Atom atom;
  std::string qvar;    // qualification variable annotating the atom
  QualValue threshold; // never bottom; top when the goal states no bound
};

struct InitialGoal {
  std::vector<GoalItem> items;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line, int column)
      : std::runtime_error(std::move(msg)), line(line), column(column) {}
  int line;
  int column;
};

/// Parses a program, one clause per line: `atom <-LIT- [atom {, atom}]`.
/// Blank lines and `%` comments are ignored. Constructor and predicate
/// arities must be consistent; attenuation literals must belong to the
/// domain and differ from its bottom.
Program parse_program(std::string_view text, const Domain& domain);

/// Parses a goal `atom#W {, atom#W} [| W >= LIT {, W >= LIT}]`. Over the
/// weight domain `W <= LIT` is accepted as a synonym (the domain order is
/// reversed numeric order); `>=` always means the domain order. Atoms
/// without an explicit bound get the vacuous threshold top.
InitialGoal parse_goal(std::string_view text, const Domain& domain);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Clause& c, const Domain& domain);
std::string to_string(const Program& p);
std::string to_string(const InitialGoal& g, const Domain& domain);

void collect_vars(const Term& t, std::set<std::string>& out);
void collect_vars(const Atom& a, std::set<std::string>& out);
std::set<std::string> goal_term_vars(const InitialGoal& g);
std::set<std::string> goal_qvars(const InitialGoal& g);

} // namespace qlp
