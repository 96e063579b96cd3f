#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cospan/dynamics.hpp"
#include "cospan/morphexpr.hpp"
#include "cospan/opennet.hpp"

namespace cospan {

struct NamedExpr {
  std::string name;
  MorphExpr expr;

  friend bool operator==(const NamedExpr &, const NamedExpr &) = default;
};

/// Contents of a `[sim]` section. Every field is optional in the file.
struct SimSettings {
  std::optional<double> t0;
  std::optional<double> t_end;
  std::optional<double> step;
  RateBinding rates;
  Marking initial;

  friend bool operator==(const SimSettings &, const SimSettings &) = default;
};

/// A model file:
///
///   [generator F]
///   states: S, I
///   dom: S
///   cod: I
///   transition α: S + I -> 2 I      # rate parameter defaults to the name
///
///   [expr SIR]
///   F ; G
///
///   [sim]
///   t_end: 40
///   rates: α=1, β=0.5
///   init: S=0.99, I=0.01, R=0
///
/// Boundary entries are state labels, or `port=state` when the port label
/// differs from the state it lands on.
struct ModelFile {
  Environment generators;
  std::vector<NamedExpr> expressions;
  std::optional<SimSettings> sim;

  const NamedExpr *find_expr(std::string_view name) const;
};

bool operator==(const ModelFile &a, const ModelFile &b);

/// True for labels usable in model files and identity objects.
bool is_valid_label(std::string_view label);

/// One problem found while reading a model file.
struct Diagnostic {
  enum class Kind { Parse, Validation };
  Kind kind;
  std::size_t line;
  std::string entity;  // empty for parse problems
  std::string reason;

  std::string to_string() const;
};

/// Reads as much of the model as is valid, collecting every problem.
/// Entities with problems are left out of `model`.
struct ModelReport {
  ModelFile model;
  std::vector<Diagnostic> problems;
};

ModelReport read_model(std::string_view text);

/// Strict reading: throws ParseError or ValidationError for the first problem.
ModelFile parse_model(std::string_view text);
ModelFile load_model(const std::filesystem::path &path);

std::string write_generator(const std::string &name, const OpenPetriNet &net);
std::string write_model(const ModelFile &model);

/// Graphviz digraph. States are circles, transitions squares, boundary ports
/// diamonds.
std::string export_dot(const OpenPetriNet &net);

/// Shortest decimal text that reads back to exactly `x`.
std::string format_real(double x);

/// "t,<state>,..." header then one row per recorded time.
std::string write_csv(const Trajectory &t);

}  // namespace cospan
