#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cospan/morphexpr.hpp"
#include "cospan/opennet.hpp"

namespace cospan {

/// Position of a subtree: child indices from the root (0 = left, 1 = right).
using ExprPath = std::vector<std::size_t>;

/// "root", or child steps joined by '.', e.g. "left.right".
std::string path_to_string(const ExprPath &path);

/// The subtree of `e` at `path`. Throws Error for an invalid path.
const MorphExpr &subtree_at(const MorphExpr &e, const ExprPath &path);

/// Copy of `e` with the subtree at `path` replaced.
MorphExpr replace_at(const MorphExpr &e, const ExprPath &path,
                     const MorphExpr &replacement);

struct SharedSubtree {
  MorphExpr expr;
  ExprPath left_path;
  ExprPath right_path;
};

struct Substitution {
  ExprPath path;
  MorphExpr left;
  MorphExpr right;
};

struct ExprDiff {
  std::vector<SharedSubtree> shared;
  std::vector<Substitution> substitutions;

  bool identical() const { return substitutions.empty(); }
};

/// Simultaneous top-down walk. Equal subtrees are shared, nodes with the same
/// operator recurse, anything else is a substitution. Entries appear in
/// pre-order.
ExprDiff diff_expr(const MorphExpr &a, const MorphExpr &b);

/// Arc multiset keyed by state label.
using LabeledArcs = std::map<std::string, unsigned>;

struct TransitionKey {
  std::string name;
  LabeledArcs inputs;
  LabeledArcs outputs;

  friend bool operator==(const TransitionKey &, const TransitionKey &) = default;
};

TransitionKey transition_key(const PetriNet &net, std::size_t transition);

/// Label-anchored comparison of two nets, relative to a -> b. Matched and
/// removed entries follow a's order, added entries follow b's.
struct NetDiff {
  std::vector<std::string> matched_states;
  std::vector<std::string> added_states;
  std::vector<std::string> removed_states;
  std::vector<std::string> matched_transitions;
  std::vector<std::string> added_transitions;
  std::vector<std::string> removed_transitions;

  bool identical() const {
    return added_states.empty() && removed_states.empty() &&
           added_transitions.empty() && removed_transitions.empty();
  }
};

/// States match by label; transitions match on (name, inputs, outputs).
NetDiff diff_net(const PetriNet &a, const PetriNet &b);

}  // namespace cospan
