#include "cospan/compare.hpp"

#include <algorithm>

#include "cospan/errors.hpp"

namespace cospan {

std::string path_to_string(const ExprPath &path) {
  if (path.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += path[i] == 0 ? "left" : "right";
  }
  return out;
}

const MorphExpr &subtree_at(const MorphExpr &e, const ExprPath &path) {
  const MorphExpr *node = &e;
  for (auto step : path) {
    if (!node->is_binary() || step > 1)
      throw Error("invalid expression path " + path_to_string(path));
    node = &node->child(step);
  }
  return *node;
}

namespace {

MorphExpr replace_from(const MorphExpr &e, const ExprPath &path, std::size_t depth,
                       const MorphExpr &replacement) {
  if (depth == path.size()) return replacement;
  if (!e.is_binary() || path[depth] > 1)
    throw Error("invalid expression path " + path_to_string(path));
  auto l = path[depth] == 0 ? replace_from(e.left(), path, depth + 1, replacement)
                            : e.left();
  auto r = path[depth] == 1 ? replace_from(e.right(), path, depth + 1, replacement)
                            : e.right();
  return e.kind() == MorphExpr::Kind::Compose ? MorphExpr::compose(l, r)
                                              : MorphExpr::tensor(l, r);
}

void walk(const MorphExpr &a, const MorphExpr &b, ExprPath &path, ExprDiff &out) {
  if (a == b) {
    out.shared.push_back({a, path, path});
    return;
  }
  if (a.is_binary() && a.kind() == b.kind()) {
    for (std::size_t i = 0; i < 2; ++i) {
      path.push_back(i);
      walk(a.child(i), b.child(i), path, out);
      path.pop_back();
    }
    return;
  }
  out.substitutions.push_back({path, a, b});
}

}  // namespace

MorphExpr replace_at(const MorphExpr &e, const ExprPath &path,
                     const MorphExpr &replacement) {
  return replace_from(e, path, 0, replacement);
}

ExprDiff diff_expr(const MorphExpr &a, const MorphExpr &b) {
  ExprDiff out;
  ExprPath path;
  walk(a, b, path, out);
  return out;
}

TransitionKey transition_key(const PetriNet &net, std::size_t transition) {
  const auto &t = net.transitions().at(transition);
  TransitionKey key{t.name, {}, {}};
  for (std::size_t s = 0; s < net.states().size(); ++s) {
    if (t.inputs[s]) key.inputs[net.states().label(s)] = t.inputs[s];
    if (t.outputs[s]) key.outputs[net.states().label(s)] = t.outputs[s];
  }
  return key;
}

NetDiff diff_net(const PetriNet &a, const PetriNet &b) {
  NetDiff d;
  for (const auto &s : a.states().labels())
    (b.states().contains(s) ? d.matched_states : d.removed_states).push_back(s);
  for (const auto &s : b.states().labels())
    if (!a.states().contains(s)) d.added_states.push_back(s);

  std::vector<TransitionKey> keys_b;
  for (std::size_t i = 0; i < b.transitions().size(); ++i)
    keys_b.push_back(transition_key(b, i));
  std::vector<bool> b_matched(keys_b.size(), false);

  for (std::size_t i = 0; i < a.transitions().size(); ++i) {
    auto key = transition_key(a, i);
    auto it = std::find(keys_b.begin(), keys_b.end(), key);
    if (it != keys_b.end()) {
      b_matched[static_cast<std::size_t>(it - keys_b.begin())] = true;
      d.matched_transitions.push_back(key.name);
    } else {
      d.removed_transitions.push_back(key.name);
    }
  }
  for (std::size_t i = 0; i < keys_b.size(); ++i)
    if (!b_matched[i]) d.added_transitions.push_back(keys_b[i].name);
  return d;
}

}  // namespace cospan
