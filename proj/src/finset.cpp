#include "cospan/finset.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>
#include <utility>

#include "cospan/errors.hpp"

namespace cospan {

namespace {

// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace

LabeledSet::LabeledSet(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  std::unordered_set<std::string_view> seen;
  for (const auto &l : labels_) {
    if (l.empty()) throw InvalidSet("empty label in set");
    if (!seen.insert(l).second)
      throw InvalidSet("duplicate label '" + l + "' in set");
  }
}

LabeledSet::LabeledSet(std::initializer_list<std::string> labels)
    : LabeledSet(std::vector<std::string>(labels)) {}

std::optional<std::size_t> LabeledSet::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::string LabeledSet::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) out += ", ";
    out += labels_[i];
  }
  return out + "]";
}

FinFn::FinFn(LabeledSet source, LabeledSet target, std::vector<std::size_t> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (map_.size() != source_.size())
    throw InvalidSet("function is not total: " + std::to_string(map_.size()) +
                     " images for " + std::to_string(source_.size()) +
                     " source elements");
  for (auto image : map_)
    if (image >= target_.size())
      throw InvalidSet("function image out of range of target " +
                       target_.to_string());
}

FinFn FinFn::from_labels(LabeledSet source, LabeledSet target,
                         const std::vector<std::string> &images) {
  std::vector<std::size_t> map;
  map.reserve(images.size());
  for (const auto &img : images) {
    auto idx = target.index_of(img);
    if (!idx)
      throw InvalidSet("'" + img + "' is not a member of " + target.to_string());
    map.push_back(*idx);
  }
  return FinFn(std::move(source), std::move(target), std::move(map));
}

std::string fresh_label(std::string label,
                        const std::vector<std::string> &taken) {
  while (std::find(taken.begin(), taken.end(), label) != taken.end())
    label += '\'';
  return label;
}

FinFn identity_fn(const LabeledSet &a) {
  std::vector<std::size_t> map(a.size());
  std::iota(map.begin(), map.end(), std::size_t{0});
  return FinFn(a, a, std::move(map));
}

FinFn compose_fn(const FinFn &f, const FinFn &g) {
  if (f.target() != g.source())
    throw MismatchedSets("cannot compose: " + f.target().to_string() +
                         " is not " + g.source().to_string());
  std::vector<std::size_t> map;
  map.reserve(f.source().size());
  for (auto image : f.map()) map.push_back(g(image));
  return FinFn(f.source(), g.target(), std::move(map));
}

Coproduct coproduct(const LabeledSet &a, const LabeledSet &b) {
  std::vector<std::string> labels = a.labels();
  labels.reserve(a.size() + b.size());
  for (const auto &l : b.labels()) labels.push_back(fresh_label(l, labels));

  LabeledSet apex(std::move(labels));
  std::vector<std::size_t> m1(a.size()), m2(b.size());
  std::iota(m1.begin(), m1.end(), std::size_t{0});
  std::iota(m2.begin(), m2.end(), a.size());
  return {apex, FinFn(a, apex, std::move(m1)), FinFn(b, apex, std::move(m2))};
}

Pushout pushout(const FinFn &f, const FinFn &g) {
  if (f.source() != g.source())
    throw MismatchedSets("pushout legs have different sources: " +
                         f.source().to_string() + " vs " +
                         g.source().to_string());

  auto sum = coproduct(f.target(), g.target());
  const std::size_t n = sum.apex.size();
  UnionFind classes(n);
  for (std::size_t y = 0; y < f.source().size(); ++y)
    classes.unite(sum.inj1(f(y)), sum.inj2(g(y)));

  // Canonical name per root: lexicographically least member label.
  std::vector<std::optional<std::string>> name(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto root = classes.find(i);
    const auto &label = sum.apex.label(i);
    if (!name[root] || label < *name[root]) name[root] = label;
  }

  std::vector<std::size_t> class_index(n, n);
  std::vector<std::string> labels;
  std::vector<std::size_t> quotient(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto root = classes.find(i);
    if (class_index[root] == n) {
      class_index[root] = labels.size();
      labels.push_back(*name[root]);
    }
    quotient[i] = class_index[root];
  }

  LabeledSet apex(std::move(labels));
  FinFn to_apex(sum.apex, apex, std::move(quotient));
  return {apex, compose_fn(sum.inj1, to_apex), compose_fn(sum.inj2, to_apex)};
}

}  // namespace cospan
