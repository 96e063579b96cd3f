#include "cospan/modelio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <fstream>
#include <sstream>
#include <utility>

#include "cospan/errors.hpp"

namespace cospan {

const NamedExpr *ModelFile::find_expr(std::string_view name) const {
  for (const auto &e : expressions)
    if (e.name == name) return &e;
  return nullptr;
}

bool operator==(const ModelFile &a, const ModelFile &b) {
  return a.generators.bindings() == b.generators.bindings() &&
         a.expressions == b.expressions && a.sim == b.sim;
}

bool is_valid_label(std::string_view label) {
  if (label.empty()) return false;
  auto first = static_cast<unsigned char>(label.front());
  if (std::isdigit(first) || first == '\'') return false;
  if (label.find("->") != std::string_view::npos) return false;
  for (char c : label) {
    auto u = static_cast<unsigned char>(c);
    if (std::isspace(u) || std::iscntrl(u)) return false;
    if (std::string_view(",;:#[]()=+*<>\"").find(c) != std::string_view::npos)
      return false;
  }
  return true;
}

std::string Diagnostic::to_string() const {
  std::string out = "line " + std::to_string(line) + ": ";
  if (!entity.empty()) out += entity + ": ";
  return out + reason;
}

// ---------------------------------------------------------------------------
// Reading

namespace {

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Comma-separated list; an all-blank value is the empty list.
std::vector<std::string_view> split_list(std::string_view s) {
  if (trim(s).empty()) return {};
  return split(s, ',');
}

struct Line {
  std::size_t number;
  std::string_view text;
};

struct Section {
  std::string kind;
  std::string name;
  std::size_t line;
  std::vector<Line> body;
};

// Internal signal for a problem on one line; collected into diagnostics.
struct LineProblem {
  std::size_t line;
  std::string reason;
};

struct RawArcTerm {
  unsigned count;
  std::string label;
};

struct RawTransition {
  std::size_t line;
  std::string name;
  std::string rate;
  std::vector<RawArcTerm> inputs;
  std::vector<RawArcTerm> outputs;
};

struct RawPort {
  std::string port;
  std::string state;
};

struct RawGenerator {
  std::optional<std::vector<std::string>> states;
  std::size_t states_line = 0;
  std::optional<std::vector<RawPort>> dom;
  std::optional<std::vector<RawPort>> cod;
  std::size_t dom_line = 0;
  std::size_t cod_line = 0;
  std::vector<RawTransition> transitions;
};

bool is_identifier(const std::string &name) {
  try {
    auto e = parse_expr(name);
    return e.kind() == MorphExpr::Kind::Gen && e.name() == name;
  } catch (const SyntaxError &) {
    return false;
  }
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  ModelReport run() {
    auto sections = split_sections();
    for (auto &s : sections) {
      if (s.kind == "generator") read_generator(s);
    }
    for (auto &s : sections) {
      if (s.kind == "expr") read_expr(s);
      else if (s.kind == "sim") read_sim(s);
    }
    std::stable_sort(report_.problems.begin(), report_.problems.end(),
                     [](const Diagnostic &a, const Diagnostic &b) {
                       return a.line < b.line;
                     });
    return std::move(report_);
  }

 private:
  void parse_problem(std::size_t line, std::string reason) {
    report_.problems.push_back(
        {Diagnostic::Kind::Parse, line, {}, std::move(reason)});
  }

  void validation_problem(std::size_t line, std::string entity,
                          std::string reason) {
    report_.problems.push_back({Diagnostic::Kind::Validation, line,
                                std::move(entity), std::move(reason)});
  }

  std::vector<Section> split_sections() {
    std::vector<Section> sections;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text_.size()) {
      auto end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      auto raw = text_.substr(start, end - start);
      start = end + 1;
      ++number;

      auto hash = raw.find('#');
      auto line = trim(raw.substr(0, hash));
      if (line.empty()) {
        if (end == text_.size()) break;
        continue;
      }

      if (line.front() == '[') {
        if (line.back() != ']') {
          parse_problem(number, "unterminated section header");
          sections.push_back({"", "", number, {}});
          continue;
        }
        auto inner = trim(line.substr(1, line.size() - 2));
        auto space = inner.find_first_of(" \t");
        std::string kind(inner.substr(0, space));
        std::string name(space == std::string_view::npos
                             ? std::string_view{}
                             : trim(inner.substr(space)));
        if (kind == "sim") {
          if (!name.empty()) parse_problem(number, "[sim] takes no name");
        } else if (kind == "generator" || kind == "expr") {
          if (name.empty())
            parse_problem(number, "[" + kind + "] section needs a name");
          else if (!is_valid_label(name) ||
                   (kind == "generator" && !is_identifier(name)))
            parse_problem(number, "invalid " + kind + " name '" + name + "'");
        } else {
          parse_problem(number, "unknown section '[" + std::string(inner) + "]'");
          kind.clear();
        }
        sections.push_back({kind, name, number, {}});
        if (end == text_.size()) break;
        continue;
      }

      if (sections.empty()) {
        parse_problem(number, "content outside of any section");
        sections.push_back({"", "", number, {}});
      }
      sections.back().body.push_back({number, line});
      if (end == text_.size()) break;
    }
    return sections;
  }

  // -- generators ----------------------------------------------------------

  static std::vector<std::string> parse_labels(std::string_view value,
                                               std::size_t line) {
    std::vector<std::string> out;
    for (auto item : split_list(value)) {
      if (!is_valid_label(item))
        throw LineProblem{line, "invalid label '" + std::string(item) + "'"};
      out.emplace_back(item);
    }
    return out;
  }

  static std::vector<RawPort> parse_ports(std::string_view value,
                                          std::size_t line) {
    std::vector<RawPort> out;
    for (auto item : split_list(value)) {
      auto eq = item.find('=');
      auto port = trim(item.substr(0, eq));
      auto state = eq == std::string_view::npos ? port : trim(item.substr(eq + 1));
      if (!is_valid_label(port) || !is_valid_label(state))
        throw LineProblem{line, "invalid boundary entry '" + std::string(item) + "'"};
      out.push_back({std::string(port), std::string(state)});
    }
    return out;
  }

  static std::vector<RawArcTerm> parse_side(std::string_view side,
                                            std::size_t line) {
    std::vector<RawArcTerm> out;
    if (trim(side).empty()) return out;
    for (auto term : split(side, '+')) {
      std::size_t digits = 0;
      while (digits < term.size() &&
             std::isdigit(static_cast<unsigned char>(term[digits])))
        ++digits;
      unsigned count = 1;
      if (digits) {
        auto [ptr, ec] = std::from_chars(term.data(), term.data() + digits, count);
        if (ec != std::errc{} || count == 0)
          throw LineProblem{line, "invalid multiplicity in '" + std::string(term) + "'"};
      }
      auto label = trim(term.substr(digits));
      if (!is_valid_label(label))
        throw LineProblem{line, "invalid arc term '" + std::string(term) + "'"};
      out.push_back({count, std::string(label)});
    }
    return out;
  }

  static RawTransition parse_transition(std::string_view rest, std::size_t line) {
    auto colon = rest.find(':');
    if (colon == std::string_view::npos)
      throw LineProblem{line, "transition line needs ':'"};
    std::vector<std::string> head;
    std::istringstream words{std::string(rest.substr(0, colon))};
    for (std::string w; words >> w;) head.push_back(w);
    if (head.empty() || head.size() > 2)
      throw LineProblem{line, "expected 'transition <name> [<rate>]: ...'"};
    for (const auto &w : head)
      if (!is_valid_label(w))
        throw LineProblem{line, "invalid transition name or rate '" + w + "'"};

    auto body = rest.substr(colon + 1);
    auto arrow = body.find("->");
    if (arrow == std::string_view::npos ||
        body.find("->", arrow + 2) != std::string_view::npos)
      throw LineProblem{line, "transition needs exactly one '->'"};
    return {line, head[0], head.size() == 2 ? head[1] : head[0],
            parse_side(body.substr(0, arrow), line),
            parse_side(body.substr(arrow + 2), line)};
  }

  void read_generator(const Section &s) {
    RawGenerator raw;
    bool ok = !s.name.empty();
    for (const auto &l : s.body) {
      try {
        if (l.text.starts_with("transition") && l.text.size() > 10 &&
            std::isspace(static_cast<unsigned char>(l.text[10]))) {
          raw.transitions.push_back(parse_transition(l.text.substr(10), l.number));
          continue;
        }
        auto colon = l.text.find(':');
        if (colon == std::string_view::npos)
          throw LineProblem{l.number, "expected 'key: value'"};
        auto key = trim(l.text.substr(0, colon));
        auto value = l.text.substr(colon + 1);
        auto once = [&](bool present) {
          if (present)
            throw LineProblem{l.number, "'" + std::string(key) + "' given twice"};
        };
        if (key == "states") {
          once(raw.states.has_value());
          raw.states = parse_labels(value, l.number);
          raw.states_line = l.number;
        } else if (key == "dom") {
          once(raw.dom.has_value());
          raw.dom = parse_ports(value, l.number);
          raw.dom_line = l.number;
        } else if (key == "cod") {
          once(raw.cod.has_value());
          raw.cod = parse_ports(value, l.number);
          raw.cod_line = l.number;
        } else {
          throw LineProblem{l.number, "unknown generator key '" + std::string(key) + "'"};
        }
      } catch (const LineProblem &p) {
        parse_problem(p.line, p.reason);
        ok = false;
      }
    }
    declared_generators_.push_back(s.name);
    if (!ok) return;
    build_generator(s, raw);
  }

  void build_generator(const Section &s, const RawGenerator &raw) {
    const std::string entity = "generator " + s.name;
    const auto before = report_.problems.size();
    auto problem = [&](std::size_t line, std::string reason) {
      validation_problem(line, entity, std::move(reason));
    };

    if (report_.model.generators.contains(s.name))
      return problem(s.line, "defined more than once");
    if (!raw.states) return problem(s.line, "missing 'states' line");

    std::vector<std::string> seen;
    for (const auto &st : *raw.states) {
      if (std::find(seen.begin(), seen.end(), st) != seen.end())
        problem(raw.states_line, "duplicate state '" + st + "'");
      seen.push_back(st);
    }
    if (report_.problems.size() != before) return;
    LabeledSet states(*raw.states);

    auto leg = [&](const std::optional<std::vector<RawPort>> &ports,
                   std::size_t line, const char *which) -> std::optional<FinFn> {
      std::vector<std::string> port_labels, images;
      bool good = true;
      for (const auto &p : ports.value_or(std::vector<RawPort>{})) {
        if (!states.contains(p.state)) {
          problem(line, std::string(which) + " references undeclared state '" +
                            p.state + "'");
          good = false;
        }
        if (std::find(port_labels.begin(), port_labels.end(), p.port) !=
            port_labels.end()) {
          problem(line, std::string(which) + " repeats port '" + p.port +
                            "'; name ports explicitly as port=state");
          good = false;
        }
        port_labels.push_back(p.port);
        images.push_back(p.state);
      }
      if (!good) return std::nullopt;
      return FinFn::from_labels(LabeledSet(std::move(port_labels)), states, images);
    };
    auto dom = leg(raw.dom, raw.dom_line, "dom");
    auto cod = leg(raw.cod, raw.cod_line, "cod");

    std::vector<Transition> transitions;
    std::vector<std::string> names;
    for (const auto &t : raw.transitions) {
      if (std::find(names.begin(), names.end(), t.name) != names.end())
        problem(t.line, "duplicate transition name '" + t.name + "'");
      names.push_back(t.name);
      bool good = true;
      auto side = [&](const std::vector<RawArcTerm> &terms) {
        Multiset m(states.size(), 0);
        for (const auto &term : terms) {
          auto idx = states.index_of(term.label);
          if (!idx) {
            problem(t.line, "transition " + t.name +
                                " references undeclared state '" + term.label + "'");
            good = false;
            continue;
          }
          m[*idx] += term.count;
        }
        return m;
      };
      auto in = side(t.inputs);
      auto out = side(t.outputs);
      if (good) transitions.push_back({t.name, t.rate, std::move(in), std::move(out)});
    }
    if (report_.problems.size() != before) return;

    report_.model.generators.bind(
        s.name, OpenPetriNet(PetriNet(states, std::move(transitions)),
                             std::move(*dom), std::move(*cod)));
  }

  // -- expressions ---------------------------------------------------------

  void read_expr(const Section &s) {
    if (s.name.empty()) return;
    const std::string entity = "expr " + s.name;
    if (s.body.empty()) return parse_problem(s.line, entity + " has no body");

    std::string text;
    for (std::size_t i = 0; i < s.body.size(); ++i) {
      if (i) text += '\n';
      text += s.body[i].text;
    }
    std::optional<MorphExpr> expr;
    try {
      expr = parse_expr(text);
    } catch (const SyntaxError &e) {
      auto line = s.body[std::min(e.line(), s.body.size()) - 1].number;
      return parse_problem(line, entity + ": " + e.what());
    }

    if (report_.model.find_expr(s.name))
      return validation_problem(s.line, entity, "defined more than once");
    bool good = true;
    for (const auto &g : generator_names(*expr)) {
      if (std::find(declared_generators_.begin(), declared_generators_.end(), g) ==
          declared_generators_.end()) {
        validation_problem(s.line, entity, "references undefined generator '" + g + "'");
        good = false;
      } else if (!report_.model.generators.contains(g)) {
        good = false;  // already reported against the generator itself
      }
    }
    if (good) report_.model.expressions.push_back({s.name, *expr});
  }

  // -- simulation settings -------------------------------------------------

  static double parse_real(std::string_view text, std::size_t line) {
    double value = 0.0;
    auto t = trim(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
      throw LineProblem{line, "invalid number '" + std::string(t) + "'"};
    return value;
  }

  void read_sim(const Section &s) {
    if (sim_seen_)
      return validation_problem(s.line, "sim", "more than one [sim] section");
    sim_seen_ = true;

    SimSettings sim;
    const auto before = report_.problems.size();
    auto assignments = [&](std::string_view value, std::size_t line,
                           std::map<std::string, double> &into, const char *what) {
      for (auto item : split_list(value)) {
        auto eq = item.find('=');
        if (eq == std::string_view::npos)
          throw LineProblem{line, "expected name=value in '" + std::string(item) + "'"};
        std::string name(trim(item.substr(0, eq)));
        if (!is_valid_label(name))
          throw LineProblem{line, "invalid name '" + name + "'"};
        double v = parse_real(item.substr(eq + 1), line);
        if (!into.emplace(name, v).second)
          validation_problem(line, "sim", std::string(what) + " '" + name +
                                              "' given more than once");
        else if (!std::isfinite(v) || v < 0.0)
          validation_problem(line, "sim", std::string(what) + " '" + name +
                                              "' must be finite and nonnegative");
      }
    };

    for (const auto &l : s.body) {
      try {
        auto colon = l.text.find(':');
        if (colon == std::string_view::npos)
          throw LineProblem{l.number, "expected 'key: value'"};
        auto key = trim(l.text.substr(0, colon));
        auto value = l.text.substr(colon + 1);
        auto scalar = [&](std::optional<double> &field) {
          if (field) throw LineProblem{l.number, "'" + std::string(key) + "' given twice"};
          field = parse_real(value, l.number);
          if (!std::isfinite(*field))
            validation_problem(l.number, "sim", std::string(key) + " must be finite");
        };
        if (key == "t0") scalar(sim.t0);
        else if (key == "t_end") scalar(sim.t_end);
        else if (key == "step") {
          scalar(sim.step);
          if (*sim.step <= 0.0)
            validation_problem(l.number, "sim", "step must be positive");
        } else if (key == "rates") assignments(value, l.number, sim.rates, "rate");
        else if (key == "init") assignments(value, l.number, sim.initial, "initial value");
        else throw LineProblem{l.number, "unknown sim key '" + std::string(key) + "'"};
      } catch (const LineProblem &p) {
        parse_problem(p.line, p.reason);
      }
    }
    if (sim.t0 && sim.t_end && *sim.t_end <= *sim.t0)
      validation_problem(s.line, "sim", "t_end must be greater than t0");
    if (report_.problems.size() == before) report_.model.sim = std::move(sim);
  }

  std::string_view text_;
  ModelReport report_;
  std::vector<std::string> declared_generators_;
  bool sim_seen_ = false;
};

}  // namespace

ModelReport read_model(std::string_view text) { return Reader(text).run(); }

ModelFile parse_model(std::string_view text) {
  auto report = read_model(text);
  if (!report.problems.empty()) {
    const auto &p = report.problems.front();
    if (p.kind == Diagnostic::Kind::Parse) throw ParseError(p.line, p.reason);
    throw ValidationError(p.entity, p.reason + " (line " + std::to_string(p.line) + ")");
  }
  return std::move(report.model);
}

ModelFile load_model(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

// ---------------------------------------------------------------------------
// Writing

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

namespace {

std::string join(const std::vector<std::string> &items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string write_ports(const FinFn &leg) {
  std::vector<std::string> items;
  for (std::size_t p = 0; p < leg.source().size(); ++p) {
    const auto &port = leg.source().label(p);
    const auto &state = leg.image_label(p);
    items.push_back(port == state ? port : port + "=" + state);
  }
  return join(items, ", ");
}

std::string write_side(const LabeledSet &states, const Multiset &m) {
  std::vector<std::string> terms;
  for (std::size_t s = 0; s < m.size(); ++s) {
    if (!m[s]) continue;
    terms.push_back(m[s] == 1 ? states.label(s)
                              : std::to_string(m[s]) + " " + states.label(s));
  }
  return join(terms, " + ");
}

std::string write_assignments(const std::map<std::string, double> &values) {
  std::vector<std::string> items;
  for (const auto &[name, v] : values) items.push_back(name + "=" + format_real(v));
  return join(items, ", ");
}

}  // namespace

std::string write_generator(const std::string &name, const OpenPetriNet &net) {
  const auto &states = net.net().states();
  std::string out = "[generator " + name + "]\n";
  out += "states: " + join(states.labels(), ", ") + "\n";
  out += "dom: " + write_ports(net.dom()) + "\n";
  out += "cod: " + write_ports(net.cod()) + "\n";
  for (const auto &t : net.net().transitions()) {
    out += "transition " + t.name;
    if (t.rate_param != t.name) out += " " + t.rate_param;
    out += ":";
    auto in = write_side(states, t.inputs);
    if (!in.empty()) out += " " + in;
    out += " ->";
    auto outs = write_side(states, t.outputs);
    if (!outs.empty()) out += " " + outs;
    out += "\n";
  }
  return out;
}

std::string write_model(const ModelFile &model) {
  std::vector<std::string> sections;
  for (const auto &[name, net] : model.generators.bindings())
    sections.push_back(write_generator(name, net));
  for (const auto &e : model.expressions)
    sections.push_back("[expr " + e.name + "]\n" + print_expr(e.expr) + "\n");
  if (model.sim) {
    const auto &sim = *model.sim;
    std::string s = "[sim]\n";
    if (sim.t0) s += "t0: " + format_real(*sim.t0) + "\n";
    if (sim.t_end) s += "t_end: " + format_real(*sim.t_end) + "\n";
    if (sim.step) s += "step: " + format_real(*sim.step) + "\n";
    if (!sim.rates.empty()) s += "rates: " + write_assignments(sim.rates) + "\n";
    if (!sim.initial.empty()) s += "init: " + write_assignments(sim.initial) + "\n";
    sections.push_back(std::move(s));
  }
  return join(sections, "\n");
}

namespace {

std::string dot_quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_dot(const OpenPetriNet &open) {
  const auto &net = open.net();
  const auto &states = net.states();
  std::ostringstream out;
  out << "digraph open_petri_net {\n  rankdir=LR;\n";

  auto state_id = [](std::size_t s) { return "s" + std::to_string(s); };
  auto transition_id = [](std::size_t t) { return "t" + std::to_string(t); };

  for (std::size_t s = 0; s < states.size(); ++s)
    out << "  " << state_id(s) << " [label=" << dot_quote(states.label(s))
        << ", shape=circle];\n";
  for (std::size_t t = 0; t < net.transitions().size(); ++t)
    out << "  " << transition_id(t)
        << " [label=" << dot_quote(net.transitions()[t].name)
        << ", shape=square];\n";
  for (std::size_t p = 0; p < open.dom_object().size(); ++p)
    out << "  d" << p << " [label=" << dot_quote(open.dom_object().label(p))
        << ", shape=diamond];\n";
  for (std::size_t p = 0; p < open.cod_object().size(); ++p)
    out << "  c" << p << " [label=" << dot_quote(open.cod_object().label(p))
        << ", shape=diamond];\n";

  auto arc = [&](const std::string &from, const std::string &to, unsigned count) {
    out << "  " << from << " -> " << to;
    if (count > 1) out << " [label=\"" << count << "\"]";
    out << ";\n";
  };
  for (std::size_t t = 0; t < net.transitions().size(); ++t) {
    const auto &tr = net.transitions()[t];
    for (std::size_t s = 0; s < states.size(); ++s)
      if (tr.inputs[s]) arc(state_id(s), transition_id(t), tr.inputs[s]);
    for (std::size_t s = 0; s < states.size(); ++s)
      if (tr.outputs[s]) arc(transition_id(t), state_id(s), tr.outputs[s]);
  }
  for (std::size_t p = 0; p < open.dom_object().size(); ++p)
    out << "  d" << p << " -> " << state_id(open.dom()(p)) << " [style=dashed];\n";
  for (std::size_t p = 0; p < open.cod_object().size(); ++p)
    out << "  " << state_id(open.cod()(p)) << " -> c" << p << " [style=dashed];\n";

  out << "}\n";
  return out.str();
}

namespace {

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string write_csv(const Trajectory &t) {
  std::string out = "t";
  for (const auto &label : t.states.labels()) out += "," + csv_field(label);
  out += '\n';
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    out += format_real(t.times[k]);
    for (double v : t.values[k]) out += "," + format_real(v);
    out += '\n';
  }
  return out;
}

}  // namespace cospan
