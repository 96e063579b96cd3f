#include "cospan/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "cospan/compare.hpp"
#include "cospan/dynamics.hpp"
#include "cospan/errors.hpp"
#include "cospan/modelio.hpp"
#include "cospan/morphexpr.hpp"
#include "cospan/opennet.hpp"

namespace cospan::cli {

namespace {

// Raised for problems with the user's models or arguments after parsing.
struct Failure {
  std::string message;
};

struct Resolved {
  std::string name;  // expression name, or "result" for inline text
  MorphExpr expr;
};

Resolved resolve(const ModelFile &model, const std::string &text) {
  if (const auto *named = model.find_expr(text)) return {named->name, named->expr};
  return {"result", parse_expr(text)};
}

std::string plural(std::size_t n, const char *word) {
  return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

std::string summary(const OpenPetriNet &net) {
  return plural(net.net().states().size(), "state") + ", " +
         plural(net.net().transitions().size(), "transition") + ", dom " +
         net.dom_object().to_string() + ", cod " + net.cod_object().to_string();
}

void write_output(const std::string &path, const std::string &payload,
                  std::ostream &out) {
  if (path.empty() || path == "-") {
    out << payload;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Failure{"cannot write '" + path + "'"};
  file << payload;
}

std::pair<std::string, double> parse_assignment(const std::string &item,
                                                const char *flag) {
  auto eq = item.find('=');
  double value = 0.0;
  if (eq == std::string::npos || eq == 0)
    throw Failure{std::string("--") + flag + " expects name=value, got '" + item + "'"};
  const char *begin = item.data() + eq + 1;
  const char *end = item.data() + item.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (begin == end || ec != std::errc{} || ptr != end)
    throw Failure{std::string("--") + flag + ": invalid number in '" + item + "'"};
  return {item.substr(0, eq), value};
}

bool color_enabled() {
  const char *v = std::getenv("COSPAN_COLOR");
  if (!v) return false;
  std::string s(v);
  return s == "1" || s == "always" || s == "yes";
}

// -- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string file;
  std::string expr;
};

void cmd_eval(const EvalArgs &a, std::ostream &out) {
  auto model = load_model(a.file);
  auto r = resolve(model, a.expr);
  auto net = evaluate(r.expr, model.generators);
  out << summary(net) << "\n\n" << write_generator(r.name, net);
}

// -- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::string file;
  std::string expr;
  std::string output;
  std::optional<double> t0;
  std::optional<double> t_end;
  std::optional<double> step;
  std::vector<std::string> rates;
  std::vector<std::string> init;
};

void cmd_simulate(const SimulateArgs &a, std::ostream &out, std::ostream &err) {
  auto model = load_model(a.file);
  auto r = resolve(model, a.expr);
  auto net = evaluate(r.expr, model.generators).net();

  SimSettings settings = model.sim.value_or(SimSettings{});
  for (const auto &item : a.rates) {
    auto [name, v] = parse_assignment(item, "rate");
    settings.rates[name] = v;
  }
  for (const auto &item : a.init) {
    auto [name, v] = parse_assignment(item, "init");
    settings.initial[name] = v;
  }

  SimConfig cfg;
  cfg.t0 = a.t0.value_or(settings.t0.value_or(0.0));
  auto t_end = a.t_end ? a.t_end : settings.t_end;
  if (!t_end) throw Failure{"no end time: set t_end in [sim] or pass --t-end"};
  cfg.t_end = *t_end;
  cfg.step = a.step.value_or(settings.step.value_or(kDefaultStep));
  cfg.rates = settings.rates;
  cfg.initial = settings.initial;

  std::vector<std::string> unbound;
  for (const auto &p : net.rate_params())
    if (!cfg.rates.count(p)) unbound.push_back(p);
  if (!unbound.empty()) {
    std::string names;
    for (const auto &u : unbound) names += (names.empty() ? "" : ", ") + u;
    throw Failure{"UnboundRate: no value for " + names};
  }

  auto traj = simulate(net, cfg);
  write_output(a.output, write_csv(traj), out);

  err << "simulated " << traj.steps() << " steps to t=" << format_real(cfg.t_end)
      << "; final";
  for (std::size_t i = 0; i < traj.states.size(); ++i)
    err << (i ? ", " : " ") << traj.states.label(i) << "="
        << format_real(traj.values.back()[i]);
  err << "\n";
}

// -- diff ------------------------------------------------------------------

struct DiffArgs {
  std::vector<std::string> operands;
};

void cmd_diff(const DiffArgs &a, std::ostream &out) {
  std::string file_a = a.operands[0], expr_a = a.operands[1];
  std::string file_b = a.operands.size() == 4 ? a.operands[2] : file_a;
  std::string expr_b = a.operands.back();

  auto model_a = load_model(file_a);
  auto model_b = file_b == file_a ? model_a : load_model(file_b);
  auto ra = resolve(model_a, expr_a);
  auto rb = resolve(model_b, expr_b);
  auto net_a = evaluate(ra.expr, model_a.generators).net();
  auto net_b = evaluate(rb.expr, model_b.generators).net();

  auto ed = diff_expr(ra.expr, rb.expr);
  auto nd = diff_net(net_a, net_b);
  if (ed.identical() && nd.identical()) {
    out << "identical\n";
    return;
  }

  const bool color = color_enabled();
  auto line = [&](char sign, const std::string &text) {
    const char *start = sign == '+' ? "\x1b[32m" : sign == '-' ? "\x1b[31m" : "";
    if (color && *start) out << start;
    out << sign << text;
    if (color && *start) out << "\x1b[0m";
    out << "\n";
  };

  for (const auto &s : ed.shared) out << "shared: " << print_expr(s.expr) << "\n";
  for (const auto &s : ed.substitutions)
    out << "substitution at " << path_to_string(s.path) << ": "
        << print_expr(s.left) << " → " << print_expr(s.right) << "\n";

  for (const auto &s : nd.matched_states) line(' ', "state " + s);
  for (const auto &s : nd.removed_states) line('-', "state " + s);
  for (const auto &s : nd.added_states) line('+', "state " + s);
  for (const auto &t : nd.matched_transitions) line(' ', "transition " + t);
  for (const auto &t : nd.removed_transitions) line('-', "transition " + t);
  for (const auto &t : nd.added_transitions) line('+', "transition " + t);
}

// -- dot -------------------------------------------------------------------

struct DotArgs {
  std::string file;
  std::string expr;
  std::string output;
};

void cmd_dot(const DotArgs &a, std::ostream &out) {
  auto model = load_model(a.file);
  auto r = resolve(model, a.expr);
  write_output(a.output, export_dot(evaluate(r.expr, model.generators)), out);
}

// -- check -----------------------------------------------------------------

struct CheckArgs {
  std::string file;
};

std::string law_report(const OpenPetriNet &g) {
  try {
    bool left = is_isomorphic(compose(identity_open(g.dom_object()), g), g).has_value();
    bool right = is_isomorphic(compose(g, identity_open(g.cod_object())), g).has_value();
    bool unit = is_isomorphic(tensor(g, identity_open(LabeledSet{})), g).has_value();
    if (left && right && unit) return "";
    std::string failed;
    if (!left) failed += " left-identity";
    if (!right) failed += " right-identity";
    if (!unit) failed += " tensor-unit";
    return "law check failed:" + failed;
  } catch (const TooLarge &) {
    return "skip";
  }
}

bool cmd_check(const CheckArgs &a, std::ostream &out) {
  std::ifstream in(a.file, std::ios::binary);
  if (!in) throw Failure{"cannot open model file '" + a.file + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  auto report = read_model(buf.str());

  std::size_t failures = report.problems.size();
  for (const auto &p : report.problems) out << "FAIL " << p.to_string() << "\n";

  for (const auto &[name, g] : report.model.generators.bindings()) {
    auto laws = law_report(g);
    bool conserves = conserves_tokens(g.net());
    out << (laws.empty() || laws == "skip" ? "ok   " : "FAIL ") << "generator "
        << name << ": " << summary(g) << "; conserves tokens: "
        << (conserves ? "yes" : "no") << "; laws: "
        << (laws.empty() ? "ok" : laws == "skip" ? "skipped (too large)" : laws)
        << "\n";
    if (!laws.empty() && laws != "skip") ++failures;
  }

  for (const auto &e : report.model.expressions) {
    try {
      auto sig = typecheck(e.expr, report.model.generators);
      auto net = evaluate(e.expr, report.model.generators);
      if (net.dom_object() != sig.dom || net.cod_object() != sig.cod)
        throw Failure{"evaluated boundaries disagree with the typechecker"};
      out << "ok   expr " << e.name << ": " << print_expr(e.expr) << " : "
          << sig.dom.to_string() << " -> " << sig.cod.to_string()
          << "; conserves tokens: " << (conserves_tokens(net.net()) ? "yes" : "no")
          << "\n";
    } catch (const Error &ex) {
      out << "FAIL expr " << e.name << ": " << ex.what() << "\n";
      ++failures;
    } catch (const Failure &f) {
      out << "FAIL expr " << e.name << ": " << f.message << "\n";
      ++failures;
    }
  }

  if (failures == 0)
    out << "all checks passed\n";
  else
    out << plural(failures, "failure") << "\n";
  return failures == 0;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Compose open Petri nets, compare models and simulate them.",
               "cospan"};
  app.require_subcommand(1, 1);

  EvalArgs eval_args;
  auto *eval = app.add_subcommand("eval", "Evaluate an expression and list the net");
  eval->add_option("file", eval_args.file, "Model file")->required();
  eval->add_option("expr", eval_args.expr, "Expression name or inline expression")
      ->required();

  SimulateArgs sim_args;
  auto *sim = app.add_subcommand("simulate", "Integrate the mass-action dynamics");
  sim->add_option("file", sim_args.file, "Model file")->required();
  sim->add_option("expr", sim_args.expr, "Expression name or inline expression")
      ->required();
  sim->add_option("-o,--output", sim_args.output, "CSV output path (default stdout)");
  sim->add_option("--t0", sim_args.t0, "Start time");
  sim->add_option("--t-end", sim_args.t_end, "End time");
  sim->add_option("--step", sim_args.step, "Step size");
  sim->add_option("--rate", sim_args.rates, "Rate binding name=value (repeatable)");
  sim->add_option("--init", sim_args.init, "Initial value state=value (repeatable)");

  DiffArgs diff_args;
  auto *diff = app.add_subcommand(
      "diff", "Compare two expressions: FILE EXPR [FILE_B] EXPR_B");
  diff->add_option("operands", diff_args.operands, "FILE EXPR [FILE_B] EXPR_B")
      ->required()
      ->expected(3, 4);

  DotArgs dot_args;
  auto *dot = app.add_subcommand("dot", "Export the evaluated net as Graphviz DOT");
  dot->add_option("file", dot_args.file, "Model file")->required();
  dot->add_option("expr", dot_args.expr, "Expression name or inline expression")
      ->required();
  dot->add_option("-o,--output", dot_args.output, "Output path (default stdout)");

  CheckArgs check_args;
  auto *check = app.add_subcommand("check", "Validate a model file");
  check->add_option("file", check_args.file, "Model file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval->parsed()) cmd_eval(eval_args, out);
    else if (sim->parsed()) cmd_simulate(sim_args, out, err);
    else if (diff->parsed()) cmd_diff(diff_args, out);
    else if (dot->parsed()) cmd_dot(dot_args, out);
    else if (check->parsed()) return cmd_check(check_args, out) ? kExitOk : kExitModelError;
  } catch (const Failure &f) {
    err << "error: " << f.message << "\n";
    return kExitModelError;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitModelError;
  }
  return kExitOk;
}

}  // namespace cospan::cli
