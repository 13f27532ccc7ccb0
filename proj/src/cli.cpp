#include "qlp/cli.hpp"

#include "qlp/resolution.hpp"
#include "qlp/semantics.hpp"
#include "qlp/syntax.hpp"
#include "qlp/translate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace qlp {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Domain domain_from_flag(const std::string& flag) {
  auto d = Domain::parse_spec(flag);
  if (!d)
    throw CLI::ValidationError("--domain", "expected b, u, w, or prod:<d1>,<d2>, got '" + flag +
                                               "'");
  return *d;
}

struct AnswerPrinter {
  bool json;
  std::ostream& out;
  const Domain& dom;

  void answer(const ComputedAnswer& a, long steps) {
    if (json) {
      nlohmann::json record;
      record["status"] = "answer";
      record["bindings"] = nlohmann::json::object();
      for (const auto& [v, t] : a.sigma.bindings()) record["bindings"][v] = to_string(t);
      record["qualifications"] = nlohmann::json::object();
      for (const auto& [w, q] : a.mu) record["qualifications"][w] = dom.format_value(q);
      record["steps"] = steps;
      out << record.dump() << "\n";
      return;
    }
    std::string bindings = to_string(a.sigma);
    std::string quals;
    for (const auto& [w, q] : a.mu) {
      if (!quals.empty()) quals += ", ";
      quals += w + " = " + dom.format_value(q);
    }
    if (bindings.empty()) bindings = "true";
    out << bindings;
    if (!quals.empty()) out << " | " << quals;
    out << "\n";
  }

  void final_status(bool truncated, long steps) {
    if (json) {
      nlohmann::json record;
      record["status"] = truncated ? "truncated" : "exhausted";
      record["bindings"] = nlohmann::json::object();
      record["qualifications"] = nlohmann::json::object();
      record["steps"] = steps;
      out << record.dump() << "\n";
      return;
    }
    out << (truncated ? "truncated" : "exhausted") << " after " << steps << " steps\n";
  }
};

int cmd_solve(const std::string& program_path, const std::string& goal_text, const Domain& dom,
              const SearchConfig& base_config, bool json, bool trace, std::ostream& out,
              std::ostream& err) {
  Program program = parse_program(read_file(program_path), dom);
  InitialGoal goal = parse_goal(goal_text, dom);

  SearchConfig config = base_config;
  if (trace)
    config.trace = [&](const TraceEvent& ev) {
      err << "step " << ev.step << ": " << to_string(ev.selected) << "#" << ev.qvar << " by "
          << ev.clause_label;
      if (!ev.unifier.empty()) err << " with {" << to_string(ev.unifier) << "}";
      err << "\n  " << ev.store_after << "\n";
    };

  AnswerPrinter printer{json, out, dom};
  AnswerStream stream(program, goal, config);
  long count = 0;
  while (auto a = stream.next()) {
    ++count;
    printer.answer(*a, stream.steps());
  }
  printer.final_status(stream.status() == AnswerStream::Status::Truncated, stream.steps());
  return count > 0 ? 0 : 1;
}

int cmd_model(const std::string& program_path, const Domain& dom, int depth, int iters,
              std::ostream& out, std::ostream& err) {
  Program program = parse_program(read_file(program_path), dom);
  LeastModelResult lm = least_model(program, depth, iters);
  out << lm.fragment.dump(dom);
  if (lm.fixpoint_reached)
    err << "fixpoint reached after " << lm.iterations << " iterations\n";
  else
    err << "iteration limit (" << iters << ") reached before a fixpoint\n";
  return 0;
}

int cmd_translate(const std::string& program_path, const Domain& dom, const std::string& dialect,
                  std::ostream& out) {
  Program program = parse_program(read_file(program_path), dom);
  Dialect d = dialect == "toy_like" ? Dialect::ToyLike : Dialect::Generic;
  out << emit_text(translate_program(program), d);
  return 0;
}

int cmd_check(const std::string& program_path, const std::string& goal_text,
              const std::string& answer_text, const Domain& dom, int oracle_depth,
              std::ostream& out) {
  Program program = parse_program(read_file(program_path), dom);
  InitialGoal goal = parse_goal(goal_text, dom);
  const std::set<std::string> qvars = goal_qvars(goal);

  // answer syntax: `X = term, W = value, ...`; names in the goal's
  // qualification-variable set take values, the rest take terms
  Substitution theta;
  QualSubst rho;
  std::size_t pos = 0;
  const std::string& s = answer_text;
  auto skip_ws = [&] { while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos; };
  while (true) {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (pos == start) throw ParseError("expected a variable name in the answer", 1, (int)pos + 1);
    std::string name = s.substr(start, pos - start);
    skip_ws();
    if (pos >= s.size() || s[pos] != '=')
      throw ParseError("expected '=' after '" + name + "'", 1, (int)pos + 1);
    ++pos;
    skip_ws();
    std::size_t vstart = pos;
    int depth = 0;
    while (pos < s.size() && (depth > 0 || s[pos] != ',')) {
      if (s[pos] == '(') ++depth;
      if (s[pos] == ')') --depth;
      ++pos;
    }
    std::string value = s.substr(vstart, pos - vstart);
    while (!value.empty() && (value.back() == ' ' || value.back() == '\t')) value.pop_back();
    if (qvars.count(name)) {
      auto v = dom.parse_value(value);
      if (!v) throw ParseError("'" + value + "' is not a " + dom.name() + " value", 1,
                               (int)vstart + 1);
      rho.emplace(name, *v);
    } else {
      // reuse the goal parser for a single term by parsing `p(term)#W`
      InitialGoal probe = parse_goal("p(" + value + ")#W0", dom);
      theta.bind(name, probe.items[0].atom.args[0]);
    }
    skip_ws();
    if (pos < s.size() && s[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  for (const GoalItem& it : goal.items)
    if (!rho.count(it.qvar))
      throw ParseError("answer gives no value for qualification variable '" + it.qvar + "'", 1,
                       1);

  switch (check_answer(program, goal, theta, rho, oracle_depth)) {
    case Verdict::Valid: out << "valid\n"; return 0;
    case Verdict::Invalid: out << "invalid\n"; return 1;
    case Verdict::Unknown: out << "unknown\n"; return 3;
  }
  return 2;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qualified logic programming: solve, model, translate, check"};
  app.require_subcommand(1);

  std::string domain_flag = "u";
  std::string program_path, goal_text, answer_text, dialect = "generic";
  long max_answers = 0;
  long max_depth = 10000;
  std::string select = "leftmost";
  bool trace = false, json = false;
  int model_depth = 2, model_iters = 20, oracle_depth = 6;

  auto add_domain = [&](CLI::App* cmd) {
    cmd->add_option("--domain", domain_flag, "qualification domain: b, u, w, or prod:<d1>,<d2>")
        ->capture_default_str();
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve a goal against a program");
  solve_cmd->add_option("program", program_path, "program file (.qlp)")->required();
  solve_cmd->add_option("goal", goal_text, "goal text")->required();
  add_domain(solve_cmd);
  solve_cmd->add_option("--max-answers", max_answers, "stop after this many answers");
  solve_cmd->add_option("--max-depth", max_depth, "resolution step budget")
      ->capture_default_str();
  solve_cmd->add_option("--select", select, "atom selection: leftmost or rightmost")
      ->check(CLI::IsMember({"leftmost", "rightmost"}))
      ->capture_default_str();
  solve_cmd->add_flag("--trace", trace, "print one line per resolution step to stderr");
  solve_cmd->add_flag("--json", json, "machine-readable output, one JSON object per line");

  CLI::App* model_cmd = app.add_subcommand("model", "dump the bounded least-model fragment");
  model_cmd->add_option("program", program_path, "program file (.qlp)")->required();
  add_domain(model_cmd);
  model_cmd->add_option("--depth", model_depth, "ground-term depth bound")
      ->capture_default_str();
  model_cmd->add_option("--iters", model_iters, "iteration limit")->capture_default_str();

  CLI::App* translate_cmd =
      app.add_subcommand("translate", "emit the constrained-clause translation");
  translate_cmd->add_option("program", program_path, "program file (.qlp)")->required();
  add_domain(translate_cmd);
  translate_cmd->add_option("--dialect", dialect, "generic or toy_like")
      ->check(CLI::IsMember({"generic", "toy_like"}))
      ->capture_default_str();

  CLI::App* check_cmd = app.add_subcommand("check", "verify a claimed answer against the oracle");
  check_cmd->add_option("program", program_path, "program file (.qlp)")->required();
  check_cmd->add_option("goal", goal_text, "goal text")->required();
  check_cmd->add_option("answer", answer_text, "answer text, e.g. \"X = adam, W1 = 0.5\"")
      ->required();
  add_domain(check_cmd);
  check_cmd->add_option("--oracle-depth", oracle_depth, "proof depth bound for the oracle")
      ->capture_default_str();

  std::vector<const char*> argv;
  argv.push_back("qlp");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    Domain dom = domain_from_flag(domain_flag);
    if (solve_cmd->parsed()) {
      SearchConfig config;
      config.selection = select == "rightmost" ? Selection::Rightmost : Selection::Leftmost;
      if (max_answers > 0) config.max_answers = max_answers;
      config.max_depth = max_depth;
      return cmd_solve(program_path, goal_text, dom, config, json, trace, out, err);
    }
    if (model_cmd->parsed()) return cmd_model(program_path, dom, model_depth, model_iters, out, err);
    if (translate_cmd->parsed()) return cmd_translate(program_path, dom, dialect, out);
    if (check_cmd->parsed())
      return cmd_check(program_path, goal_text, answer_text, dom, oracle_depth, out);
  } catch (const ParseError& e) {
    err << "parse error at " << e.line << ":" << e.column << ": " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

} // namespace qlp
