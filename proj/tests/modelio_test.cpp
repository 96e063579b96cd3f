#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <random>
#include <sstream>

#include "cospan/errors.hpp"
#include "cospan/modelio.hpp"
#include "support/fixtures.hpp"

using namespace cospan;
using namespace cospan::test;

namespace {

std::size_t count_of(const std::string &text, const std::string &needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++n;
  return n;
}

std::vector<std::string> split_lines(const std::string &text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

OpenPetriNet sir() {
  auto m = load_model(model_path("sir.model"));
  return evaluate(m.find_expr("SIR")->expr, m.generators);
}

template <class E>
std::optional<E> error_of(const std::string &text) {
  try {
    parse_model(text);
  } catch (const E &e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return std::nullopt;
}

std::size_t parse_error_line(const std::string &text) {
  auto e = error_of<ParseError>(text);
  return e ? e->line() : 0;
}

}  // namespace

TEST(LoadModel, BundledSir) {
  auto m = load_model(model_path("sir.model"));
  EXPECT_EQ(m.generators.bindings().size(), 2u);
  ASSERT_NE(m.generators.find("F"), nullptr);
  EXPECT_EQ(*m.generators.find("F"), infection_F());
  EXPECT_EQ(*m.generators.find("G"), recovery_G());
  ASSERT_EQ(m.expressions.size(), 1u);
  EXPECT_EQ(m.expressions[0].name, "SIR");
  ASSERT_TRUE(m.sim);
  EXPECT_EQ(m.sim->t_end, 40.0);
  EXPECT_EQ(m.sim->rates.at("β"), 0.5);
  EXPECT_EQ(m.sim->initial.at("S"), 0.99);
}

TEST(LoadModel, AllBundledModelsEvaluate) {
  for (const char *name : {"sir.model", "sird.model", "malaria.model"}) {
    auto m = load_model(model_path(name));
    for (const auto &e : m.expressions) EXPECT_NO_THROW(evaluate(e.expr, m.generators)) << name;
  }
  auto malaria = load_model(model_path("malaria.model"));
  auto net = evaluate(malaria.expressions[0].expr, malaria.generators).net();
  EXPECT_EQ(net.states(), (LabeledSet{"S_p", "I_p", "I_m", "S_m"}));
  EXPECT_EQ(net.transitions().size(), 4u);
}

TEST(LoadModel, MissingFile) {
  EXPECT_THROW(load_model(model_path("no_such.model")), Error);
}

TEST(ParseModel, OptionalRateAndPortBoundaries) {
  auto m = parse_model(
      "[generator K]\n"
      "states: A, B\n"
      "dom: in=A\n"
      "cod: B, out=A\n"
      "transition t k: 2 A -> B\n"
      "transition src: -> A\n");
  const auto &k = *m.generators.find("K");
  EXPECT_EQ(k.dom_object(), LabeledSet{"in"});
  EXPECT_EQ(k.cod_object(), (LabeledSet{"B", "out"}));
  EXPECT_EQ(k.cod().image_label(1), "A");
  ASSERT_EQ(k.net().transitions().size(), 2u);
  EXPECT_EQ(k.net().transitions()[0].rate_param, "k");
  EXPECT_EQ(k.net().transitions()[0].inputs, (Multiset{2, 0}));
  EXPECT_EQ(k.net().transitions()[1].rate_param, "src");
  EXPECT_EQ(k.net().transitions()[1].inputs, (Multiset{0, 0}));
}

TEST(ParseModel, ValidationErrors) {
  auto e = error_of<ValidationError>(
      "[generator F]\nstates: S\ntransition t: S -> X\n");
  ASSERT_TRUE(e);
  EXPECT_NE(std::string(e->what()).find("X"), std::string::npos);

  e = error_of<ValidationError>("[generator F]\nstates: S\n\n[generator F]\nstates: A\n");
  ASSERT_TRUE(e);
  EXPECT_NE(std::string(e->what()).find("F"), std::string::npos);

  error_of<ValidationError>("[generator F]\nstates: S, S\n");
  error_of<ValidationError>("[generator F]\nstates: S\ndom: Q\n");
  error_of<ValidationError>("[generator F]\nstates: S\ndom: S, S\n");
}

TEST(ParseModel, ParseErrorsCarryLines) {
  EXPECT_EQ(parse_error_line("states: S\n"), 1u);
  EXPECT_EQ(parse_error_line("[generator F]\nstates: S\ntransition t: S -> 2\n"), 3u);
  EXPECT_EQ(parse_error_line("# note\n\n[sim]\nt_end: abc\n"), 4u);
  EXPECT_EQ(parse_error_line("[bogus]\n"), 1u);
  EXPECT_EQ(parse_error_line("[expr e]\nF ;\n\n"), 2u);
}

TEST(ReadModel, CollectsEveryProblem) {
  auto r = read_model(
      "[generator F]\nstates: S\ntransition t: S -> X\n"
      "[generator G]\nstates: A\n"
      "[expr e]\nF ;\n");
  ASSERT_EQ(r.problems.size(), 2u);
  EXPECT_EQ(r.problems[0].kind, Diagnostic::Kind::Validation);
  EXPECT_EQ(r.problems[0].line, 3u);
  EXPECT_EQ(r.problems[1].kind, Diagnostic::Kind::Parse);
  EXPECT_EQ(r.problems[1].line, 7u);
  EXPECT_NE(r.model.generators.find("G"), nullptr);
  EXPECT_EQ(r.model.generators.find("F"), nullptr);
}

TEST(Labels, Validity) {
  for (const char *ok : {"S", "I_p", "R'", "α", "x1"}) EXPECT_TRUE(is_valid_label(ok)) << ok;
  for (const char *bad : {"", "1x", "'a", "a b", "a,b", "a;b", "a->b", "a#", "a[", "a="})
    EXPECT_FALSE(is_valid_label(bad)) << bad;
}

TEST(WriteModel, SavesAndReloadsBundledModels) {
  for (const char *name : {"sir.model", "sird.model", "malaria.model"}) {
    auto m = load_model(model_path(name));
    EXPECT_EQ(parse_model(write_model(m)), m) << name;
  }
}

TEST(WriteModelProperty, RoundTripsRandomModels) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> real(0.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    ModelFile m;
    const std::vector<std::string> names{"f", "g", "h", "F2", "β_x"};
    for (const auto &n : names) {
      auto dom = boundary_object("x", rng() % 3);
      auto cod = boundary_object("y", rng() % 3);
      m.generators.bind(n, random_open(rng, dom, cod, 4, 3));
    }
    for (int k = 0; k < static_cast<int>(rng() % 3); ++k)
      m.expressions.push_back({"e" + std::to_string(k), random_expr(rng, 3)});
    if (rng() % 2) {
      SimSettings s;
      if (rng() % 2) s.t0 = real(rng);
      s.t_end = real(rng) + 10.0;
      if (rng() % 2) s.step = real(rng) / 1000.0;
      s.rates = {{"k0", real(rng)}, {"k1", real(rng)}};
      s.initial = {{"a", real(rng)}, {"b", 1.0 / 3.0}};
      m.sim = s;
    }
    auto text = write_model(m);
    ASSERT_EQ(parse_model(text), m) << text;
    ASSERT_EQ(write_model(parse_model(text)), text);
  }
}

TEST(ExportDot, SirCounts) {
  auto dot = export_dot(sir());
  EXPECT_EQ(dot.rfind("digraph open_petri_net {", 0), 0u);
  EXPECT_EQ(count_of(dot, "shape=circle"), 3u);
  EXPECT_EQ(count_of(dot, "shape=square"), 2u);
  EXPECT_EQ(count_of(dot, "shape=diamond"), 2u);
  EXPECT_EQ(count_of(dot, "style=dashed"), 2u);
  EXPECT_EQ(count_of(dot, " -> "), 7u);
  EXPECT_EQ(count_of(dot, "[label=\"2\"]"), 1u);
  EXPECT_NE(dot.find("t0 -> s1 [label=\"2\"];"), std::string::npos);
}

TEST(ExportDot, DegenerateNets) {
  auto empty = export_dot(identity_open(LabeledSet{}));
  EXPECT_EQ(empty, "digraph open_petri_net {\n  rankdir=LR;\n}\n");

  auto id = export_dot(identity_open(LabeledSet{"I"}));
  EXPECT_EQ(count_of(id, "shape=circle"), 1u);
  EXPECT_EQ(count_of(id, "shape=square"), 0u);
  EXPECT_EQ(count_of(id, "shape=diamond"), 2u);
  EXPECT_EQ(count_of(id, "style=dashed"), 2u);
}

TEST(ExportDot, QuotesAwkwardLabels) {
  LabeledSet s{"a\"b"};
  OpenPetriNet n(PetriNet(s, {}), FinFn(LabeledSet{}, s, {}), FinFn(LabeledSet{}, s, {}));
  EXPECT_NE(export_dot(n).find("label=\"a\\\"b\""), std::string::npos);
}

TEST(ExportDot, Deterministic) {
  EXPECT_EQ(export_dot(sir()), export_dot(sir()));
}

TEST(FormatReal, ShortestRoundTrip) {
  EXPECT_EQ(format_real(0.5), "0.5");
  EXPECT_EQ(format_real(0.0), "0");
  EXPECT_EQ(format_real(40.0), "40");
  EXPECT_EQ(format_real(0.1 + 0.2), "0.30000000000000004");
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> real(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    double x = real(rng);
    ASSERT_EQ(std::strtod(format_real(x).c_str(), nullptr), x);
  }
}

TEST(WriteCsv, HeaderRowsAndExactValues) {
  SimConfig c;
  c.t_end = 1.0;
  c.step = 0.1;
  c.rates = {{"α", 1.0}, {"β", 0.5}};
  c.initial = {{"S", 0.99}, {"I", 0.01}, {"R", 0.0}};
  auto traj = simulate(sir().net(), c);
  auto lines = split_lines(write_csv(traj));
  ASSERT_EQ(lines.size(), traj.steps() + 2);
  EXPECT_EQ(lines[0], "t,S,I,R");
  EXPECT_EQ(lines[1], "0,0.99,0.01,0");
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::istringstream row(lines[k + 1]);
    std::vector<double> cells;
    for (std::string cell; std::getline(row, cell, ',');)
      cells.push_back(std::strtod(cell.c_str(), nullptr));
    ASSERT_EQ(cells.size(), 4u);
    ASSERT_EQ(cells[0], traj.times[k]);
    for (std::size_t i = 0; i < 3; ++i) ASSERT_EQ(cells[i + 1], traj.values[k][i]);
  }
}

TEST(WriteCsv, NoStatesGivesTimeColumnOnly) {
  Trajectory t{LabeledSet{}, {0.0, 0.5}, {{}, {}}};
  EXPECT_EQ(write_csv(t), "t\n0\n0.5\n");
}
