#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cospan/finset.hpp"
#include "cospan/opennet.hpp"

namespace cospan {

/// Immutable point-free morphism expression. Copies share structure.
///
/// Compose nodes are stored in diagrammatic order: compose(l, r) runs l
/// first, then r.
class MorphExpr {
 public:
  enum class Kind { Gen, Id, Compose, Tensor };

  static MorphExpr gen(std::string name);
  static MorphExpr id(LabeledSet object);
  static MorphExpr compose(MorphExpr first, MorphExpr second);
  static MorphExpr tensor(MorphExpr left, MorphExpr right);

  Kind kind() const { return node_->kind; }
  bool is_binary() const {
    return kind() == Kind::Compose || kind() == Kind::Tensor;
  }

  /// Generator name; only meaningful for Gen nodes.
  const std::string &name() const { return node_->name; }
  /// Identity object; only meaningful for Id nodes.
  const LabeledSet &object() const { return node_->object; }
  const MorphExpr &left() const;
  const MorphExpr &right() const;
  const MorphExpr &child(std::size_t i) const { return i == 0 ? left() : right(); }

  friend bool operator==(const MorphExpr &a, const MorphExpr &b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    LabeledSet object;
    std::vector<MorphExpr> children;
  };

  explicit MorphExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Named generator open nets available to an expression.
class Environment {
 public:
  /// Throws ValidationError on a duplicate name.
  void bind(std::string name, OpenPetriNet net);

  const OpenPetriNet *find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  const std::vector<std::pair<std::string, OpenPetriNet>> &bindings() const {
    return bindings_;
  }
  std::size_t size() const { return bindings_.size(); }

 private:
  std::vector<std::pair<std::string, OpenPetriNet>> bindings_;
};

/// Parses the infix formula syntax:
///
///   f ; g          f then g (diagrammatic composition, lowest precedence)
///   g ∘ f          f then g (mathematical order)
///   f * g, f ⊗ g   monoidal product
///   id[a, b]       identity on the object [a, b]
///   compose(f, g, ...), otimes(f, g, ...)
///
/// Binary operators are left-associative and `·` is accepted for `;`.
/// Throws SyntaxError carrying a 1-based line and column.
MorphExpr parse_expr(std::string_view text);

/// Canonical infix text; parse_expr(print_expr(e)) == e.
std::string print_expr(const MorphExpr &e);

/// Every generator name referenced by `e`, in first-occurrence order.
std::vector<std::string> generator_names(const MorphExpr &e);

struct Signature {
  LabeledSet dom;
  LabeledSet cod;
};

/// Throws UnboundGenerator or BoundaryMismatch.
Signature typecheck(const MorphExpr &e, const Environment &env);

OpenPetriNet evaluate(const MorphExpr &e, const Environment &env);

}  // namespace cospan
