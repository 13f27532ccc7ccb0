#include "qlp/syntax.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace qlp {

// --------------------------------------------------------------------- Term

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{true, std::move(name), {}}));
}

Term Term::app(std::string constructor, std::vector<Term> args) {
  return Term(std::make_shared<const Node>(Node{false, std::move(constructor), std::move(args)}));
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (node_->is_var != o.node_->is_var || node_->name != o.node_->name) return false;
  return node_->args == o.node_->args;
}

bool Term::operator<(const Term& o) const {
  if (node_->is_var != o.node_->is_var) return node_->is_var && !o.node_->is_var;
  if (node_->name != o.node_->name) return node_->name < o.node_->name;
  return node_->args < o.node_->args;
}

int Term::depth() const {
  if (is_var() || args().empty()) return 1;
  int m = 0;
  for (const Term& t : args()) m = std::max(m, t.depth());
  return 1 + m;
}

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

void collect_vars(const Atom& a, std::set<std::string>& out) {
  for (const Term& t : a.args) collect_vars(t, out);
}

std::set<std::string> goal_term_vars(const InitialGoal& g) {
  std::set<std::string> out;
  for (const GoalItem& it : g.items) collect_vars(it.atom, out);
  return out;
}

std::set<std::string> goal_qvars(const InitialGoal& g) {
  std::set<std::string> out;
  for (const GoalItem& it : g.items) out.insert(it.qvar);
  return out;
}

// ----------------------------------------------------------------- printing

std::string to_string(const Term& t) {
  if (t.is_var() || t.args().empty()) return t.name();
  std::string s = t.name() + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) s += ",";
    s += to_string(t.args()[i]);
  }
  return s + ")";
}

std::string to_string(const Atom& a) {
  if (a.args.empty()) return a.predicate;
  std::string s = a.predicate + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ",";
    s += to_string(a.args[i]);
  }
  return s + ")";
}

std::string to_string(const Clause& c, const Domain& domain) {
  std::string s = to_string(c.head) + " <-" + domain.format_value(c.attenuation) + "-";
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    s += i ? ", " : " ";
    s += to_string(c.body[i]);
  }
  return s;
}

std::string to_string(const Program& p) {
  std::string s;
  for (const Clause& c : p.clauses) {
    s += to_string(c, p.domain);
    s += "\n";
  }
  return s;
}

std::string to_string(const InitialGoal& g, const Domain& domain) {
  std::string s;
  for (std::size_t i = 0; i < g.items.size(); ++i) {
    if (i) s += ", ";
    s += to_string(g.items[i].atom) + "#" + g.items[i].qvar;
  }
  std::string bounds;
  for (const GoalItem& it : g.items) {
    if (domain.is_top(it.threshold)) continue; // vacuous
    if (!bounds.empty()) bounds += ", ";
    bounds += it.qvar + " >= " + domain.format_value(it.threshold);
  }
  if (!bounds.empty()) s += " | " + bounds;
  return s;
}

// ------------------------------------------------------------------- parser

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line;
  int col_base = 1; // column of text[0] in the original source line

  int column() const { return col_base + static_cast<int>(pos); }
  bool eof() const { return pos >= text.size(); }
  char peek() const { return eof() ? '\0' : text[pos]; }
  void skip_ws() {
    while (!eof() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  [[noreturn]] void error(const std::string& msg) const { throw ParseError(msg, line, column()); }
  bool try_consume(std::string_view s) {
    if (text.substr(pos, s.size()) == s) {
      pos += s.size();
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (peek() != c) error(std::string("expected '") + c + "' " + what);
    ++pos;
  }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string parse_identifier(Cursor& cur) {
  cur.skip_ws();
  if (!ident_start(cur.peek())) cur.error("expected an identifier");
  std::size_t start = cur.pos;
  while (!cur.eof() && ident_char(cur.peek())) ++cur.pos;
  return std::string(cur.text.substr(start, cur.pos - start));
}

bool is_variable_name(const std::string& name) {
  return std::isupper(static_cast<unsigned char>(name[0])) || name[0] == '_';
}

Term parse_term(Cursor& cur);

std::vector<Term> parse_arg_list(Cursor& cur) {
  std::vector<Term> args;
  cur.expect('(', "before argument list");
  while (true) {
    args.push_back(parse_term(cur));
    cur.skip_ws();
    if (cur.try_consume(",")) continue;
    cur.expect(')', "after argument list");
    break;
  }
  return args;
}

Term parse_term(Cursor& cur) {
  std::string name = parse_identifier(cur);
  if (is_variable_name(name)) return Term::var(std::move(name));
  cur.skip_ws();
  if (cur.peek() == '(') return Term::app(std::move(name), parse_arg_list(cur));
  return Term::app(std::move(name));
}

Atom parse_atom(Cursor& cur) {
  std::string name = parse_identifier(cur);
  if (is_variable_name(name)) cur.error("predicate names must start lowercase");
  cur.skip_ws();
  if (cur.peek() == '(') return Atom{std::move(name), parse_arg_list(cur)};
  return Atom{std::move(name), {}};
}

// Scans a value literal: either a balanced parenthesized group or a run of
// literal characters (digits, '.', '/', letters for `inf`).
std::string scan_value_literal(Cursor& cur, char stop) {
  cur.skip_ws();
  std::size_t start = cur.pos;
  if (cur.peek() == '(') {
    int depth = 0;
    while (!cur.eof()) {
      char c = cur.peek();
      if (c == '(') ++depth;
      else if (c == ')') {
        --depth;
        if (depth == 0) {
          ++cur.pos;
          break;
        }
      }
      ++cur.pos;
    }
    if (cur.pos == start) cur.error("expected a value literal");
  } else {
    while (!cur.eof()) {
      char c = cur.peek();
      if (c == stop || c == ',' || c == ' ' || c == '\t') break;
      ++cur.pos;
    }
  }
  if (cur.pos == start) cur.error("expected a value literal");
  return std::string(cur.text.substr(start, cur.pos - start));
}

QualValue parse_value_or_fail(Cursor& cur, const Domain& domain, const std::string& literal,
                              const char* role) {
  auto v = domain.parse_value(literal);
  if (!v)
    cur.error(std::string("'") + literal + "' is not a valid " + domain.name() + " " + role);
  return *v;
}

struct ArityTable {
  std::map<std::string, std::size_t> predicates;
  std::map<std::string, std::size_t> constructors;

  void note_term(const Term& t, Cursor& cur) {
    if (t.is_var()) return;
    auto [it, fresh] = constructors.emplace(t.name(), t.args().size());
    if (!fresh && it->second != t.args().size())
      cur.error("constructor '" + t.name() + "' used with arities " +
                std::to_string(it->second) + " and " + std::to_string(t.args().size()));
    for (const Term& a : t.args()) note_term(a, cur);
  }
  void note_atom(const Atom& a, Cursor& cur) {
    auto [it, fresh] = predicates.emplace(a.predicate, a.args.size());
    if (!fresh && it->second != a.args.size())
      cur.error("predicate '" + a.predicate + "' used with arities " +
                std::to_string(it->second) + " and " + std::to_string(a.args.size()));
    for (const Term& t : a.args) note_term(t, cur);
  }
};

} // namespace

Program parse_program(std::string_view text, const Domain& domain) {
  Program program{domain, {}};
  ArityTable arities;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (end == text.size() && raw.empty()) break;

    std::string_view content = raw.substr(0, std::min(raw.find('%'), raw.size()));
    bool blank = true;
    for (char c : content)
      if (c != ' ' && c != '\t' && c != '\r') blank = false;
    if (blank) continue;

    Cursor cur{content, 0, line_no};
    Atom head = parse_atom(cur);
    cur.skip_ws();
    if (!cur.try_consume("<-")) cur.error("expected '<-' after clause head");
    std::string literal = scan_value_literal(cur, '-');
    if (!cur.try_consume("-")) cur.error("expected '-' closing the attenuation literal");
    QualValue d = parse_value_or_fail(cur, domain, literal, "attenuation value");
    if (domain.is_bot(d)) cur.error("attenuation value must not be the bottom of " + domain.name());

    std::vector<Atom> body;
    cur.skip_ws();
    if (!cur.eof() && cur.peek() != '\r') {
      while (true) {
        body.push_back(parse_atom(cur));
        cur.skip_ws();
        if (cur.try_consume(",")) continue;
        break;
      }
      cur.skip_ws();
      if (!cur.eof() && cur.peek() != '\r') cur.error("unexpected trailing text after clause");
    }

    arities.note_atom(head, cur);
    for (const Atom& a : body) arities.note_atom(a, cur);
    program.clauses.push_back(Clause{std::move(head), std::move(d), std::move(body)});
  }
  return program;
}

InitialGoal parse_goal(std::string_view text, const Domain& domain) {
  Cursor cur{text, 0, 1};
  InitialGoal goal;
  std::set<std::string> seen_qvars;

  while (true) {
    Atom atom = parse_atom(cur);
    cur.skip_ws();
    cur.expect('#', "after goal atom (every atom carries a qualification variable)");
    std::string qvar = parse_identifier(cur);
    if (!is_variable_name(qvar)) cur.error("qualification variables must start uppercase");
    if (!seen_qvars.insert(qvar).second)
      cur.error("duplicate qualification variable '" + qvar + "'");
    goal.items.push_back(GoalItem{std::move(atom), std::move(qvar), domain.top()});
    cur.skip_ws();
    if (cur.try_consume(",")) continue;
    break;
  }

  cur.skip_ws();
  if (cur.try_consume("|")) {
    std::set<std::string> bounded;
    while (true) {
      std::string qvar = parse_identifier(cur);
      auto item = std::find_if(goal.items.begin(), goal.items.end(),
                               [&](const GoalItem& it) { return it.qvar == qvar; });
      if (item == goal.items.end())
        cur.error("bound refers to unknown qualification variable '" + qvar + "'");
      if (!bounded.insert(qvar).second)
        cur.error("more than one bound for qualification variable '" + qvar + "'");
      cur.skip_ws();
      bool synonym = false;
      if (cur.try_consume(">=")) {
        // canonical: domain order
      } else if (cur.try_consume("<=")) {
        if (domain.kind() != Domain::Kind::Weight)
          cur.error("'<=' bounds are only accepted over the weight domain");
        synonym = true; // numeric <= is exactly the weight-domain order
      } else {
        cur.error("expected '>=' (or '<=' over the weight domain) in a bound");
      }
      (void)synonym;
      std::string literal = scan_value_literal(cur, '\0');
      QualValue beta = parse_value_or_fail(cur, domain, literal, "threshold value");
      if (domain.is_bot(beta))
        cur.error("threshold value must not be the bottom of " + domain.name());
      item->threshold = beta;
      cur.skip_ws();
      if (cur.try_consume(",")) continue;
      break;
    }
  }
  cur.skip_ws();
  if (!cur.eof() && cur.peek() != '\r') cur.error("unexpected trailing text after goal");
  if (goal.items.empty()) cur.error("goal must contain at least one atom");
  return goal;
}

} // namespace qlp
