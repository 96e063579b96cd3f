#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cospan {

/// A finite set whose elements are distinct text labels. The label order is
/// the canonical element order; element i is addressed by index i.
class LabeledSet {
 public:
  LabeledSet() = default;
  explicit LabeledSet(std::vector<std::string> labels);
  LabeledSet(std::initializer_list<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::string &label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string> &labels() const { return labels_; }

  std::optional<std::size_t> index_of(std::string_view label) const;
  bool contains(std::string_view label) const {
    return index_of(label).has_value();
  }

  /// Renders as "[a, b, c]".
  std::string to_string() const;

  friend bool operator==(const LabeledSet &, const LabeledSet &) = default;

 private:
  std::vector<std::string> labels_;
};

/// A total function between labeled finite sets, stored as one target index
/// per source element.
class FinFn {
 public:
  FinFn() = default;
  FinFn(LabeledSet source, LabeledSet target, std::vector<std::size_t> map);

  /// Builds a function from per-source-element target labels.
  static FinFn from_labels(LabeledSet source, LabeledSet target,
                           const std::vector<std::string> &images);

  const LabeledSet &source() const { return source_; }
  const LabeledSet &target() const { return target_; }
  const std::vector<std::size_t> &map() const { return map_; }

  std::size_t operator()(std::size_t i) const { return map_.at(i); }
  const std::string &image_label(std::size_t i) const {
    return target_.label(map_.at(i));
  }

  friend bool operator==(const FinFn &, const FinFn &) = default;

 private:
  LabeledSet source_;
  LabeledSet target_;
  std::vector<std::size_t> map_;
};

/// Returns `label` with apostrophes appended until it is not taken.
std::string fresh_label(std::string label,
                        const std::vector<std::string> &taken);

FinFn identity_fn(const LabeledSet &a);

/// x |-> g(f(x)). Throws MismatchedSets unless f.target() == g.source().
FinFn compose_fn(const FinFn &f, const FinFn &g);

struct Coproduct {
  LabeledSet apex;
  FinFn inj1;
  FinFn inj2;
};

/// Disjoint union. Labels of `b` that collide receive apostrophe suffixes.
Coproduct coproduct(const LabeledSet &a, const LabeledSet &b);

struct Pushout {
  LabeledSet apex;
  FinFn left;   // M -> P
  FinFn right;  // N -> P
};

/// Gluing of f: Y -> M and g: Y -> N along Y. Each class of the quotient of
/// M + N is named after its lexicographically least member label and classes
/// appear in order of their first member in M + N.
Pushout pushout(const FinFn &f, const FinFn &g);

}  // namespace cospan
