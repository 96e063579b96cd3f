#include <gtest/gtest.h>

#include <random>

#include "cospan/errors.hpp"
#include "cospan/finset.hpp"
#include "support/oracles.hpp"

using namespace cospan;
using cospan::test::for_each_function;
using cospan::test::partition_closure;

namespace {

FinFn fn(const LabeledSet &s, const LabeledSet &t, std::vector<std::string> images) {
  return FinFn::from_labels(s, t, images);
}

}  // namespace

TEST(LabeledSet, RejectsDuplicateAndEmptyLabels) {
  EXPECT_THROW(LabeledSet({"S", "S"}), InvalidSet);
  EXPECT_THROW(LabeledSet({""}), InvalidSet);
  LabeledSet s{"S", "I", "R"};
  EXPECT_EQ(s.index_of("I"), 1u);
  EXPECT_FALSE(s.index_of("D"));
  EXPECT_EQ(s.to_string(), "[S, I, R]");
}

TEST(FinFn, MustBeTotalAndInRange) {
  LabeledSet a{"x", "y"};
  LabeledSet b{"p"};
  EXPECT_THROW(FinFn(a, b, {0}), InvalidSet);
  EXPECT_THROW(FinFn(a, b, {0, 1}), InvalidSet);
  EXPECT_THROW(fn(a, b, {"p", "q"}), InvalidSet);
}

TEST(IdentityFn, Examples) {
  auto id = identity_fn(LabeledSet{"S", "I"});
  EXPECT_EQ(id.image_label(0), "S");
  EXPECT_EQ(id.image_label(1), "I");
  EXPECT_EQ(id.source(), id.target());

  auto empty = identity_fn(LabeledSet{});
  EXPECT_TRUE(empty.map().empty());

  auto single = identity_fn(LabeledSet{"y"});
  EXPECT_EQ(single.image_label(0), "y");
}

TEST(ComposeFn, Examples) {
  LabeledSet y{"y"}, i{"I"}, sir{"S", "I", "R"};
  auto h = compose_fn(fn(y, i, {"I"}), fn(i, sir, {"I"}));
  EXPECT_EQ(h.source(), y);
  EXPECT_EQ(h.target(), sir);
  EXPECT_EQ(h.image_label(0), "I");

  auto f = fn(LabeledSet{"a", "b"}, LabeledSet{"m"}, {"m", "m"});
  EXPECT_EQ(compose_fn(f, identity_fn(f.target())), f);

  auto g = fn(LabeledSet{"m"}, LabeledSet{"p"}, {"p"});
  auto fg = compose_fn(f, g);
  EXPECT_EQ(fg.image_label(0), "p");
  EXPECT_EQ(fg.image_label(1), "p");
}

TEST(ComposeFn, MismatchedSets) {
  auto f = fn(LabeledSet{"a"}, LabeledSet{"m", "n"}, {"m"});
  auto g = fn(LabeledSet{"n", "m"}, LabeledSet{"p"}, {"p", "p"});
  EXPECT_THROW(compose_fn(f, g), MismatchedSets);
}

TEST(Coproduct, PrimesCollidingLabels) {
  auto c = coproduct(LabeledSet{"I", "R"}, LabeledSet{"I", "R"});
  EXPECT_EQ(c.apex, (LabeledSet{"I", "R", "I'", "R'"}));
  EXPECT_EQ(c.inj1.image_label(0), "I");
  EXPECT_EQ(c.inj1.image_label(1), "R");
  EXPECT_EQ(c.inj2.image_label(0), "I'");
  EXPECT_EQ(c.inj2.image_label(1), "R'");
}

TEST(Coproduct, EmptyIsUnitAndDisjointNamesUntouched) {
  EXPECT_EQ(coproduct(LabeledSet{}, LabeledSet{"S", "I"}).apex, (LabeledSet{"S", "I"}));
  EXPECT_EQ(coproduct(LabeledSet{"a"}, LabeledSet{"b"}).apex, (LabeledSet{"a", "b"}));
}

TEST(Coproduct, RepeatedPrimingStaysFresh) {
  auto c = coproduct(LabeledSet{"I", "I'"}, LabeledSet{"I", "I'"});
  EXPECT_EQ(c.apex, (LabeledSet{"I", "I'", "I''", "I'''"}));
}

TEST(Pushout, SirGluing) {
  LabeledSet y{"y"}, m{"S", "I"}, n{"I", "R"};
  auto p = pushout(fn(y, m, {"I"}), fn(y, n, {"I"}));
  EXPECT_EQ(p.apex, (LabeledSet{"S", "I", "R"}));
  EXPECT_EQ(p.left.image_label(1), "I");
  EXPECT_EQ(p.right.image_label(0), "I");
  EXPECT_EQ(p.right.image_label(1), "R");
}

TEST(Pushout, EmptyBoundaryIsCoproduct) {
  LabeledSet y{}, m{"S", "I"}, n{"I", "R"};
  auto p = pushout(FinFn(y, m, {}), FinFn(y, n, {}));
  EXPECT_EQ(p.apex, (LabeledSet{"S", "I", "I'", "R"}));
  EXPECT_EQ(p.apex, coproduct(m, n).apex);
}

TEST(Pushout, CollapsesToOneClass) {
  // Brute force: M + N = {m, n1, n2}; relations m~n1, m~n2 give one block.
  LabeledSet y{"y1", "y2"}, m{"m"}, n{"n1", "n2"};
  auto f = fn(y, m, {"m", "m"});
  auto g = fn(y, n, {"n1", "n2"});
  auto p = pushout(f, g);
  EXPECT_EQ(test::block_count(partition_closure(1, 2, f.map(), g.map())), 1u);
  EXPECT_EQ(p.apex.size(), 1u);
  EXPECT_EQ(p.apex.label(0), "m");
}

TEST(Pushout, MismatchedSources) {
  auto f = fn(LabeledSet{"y"}, LabeledSet{"m"}, {"m"});
  auto g = fn(LabeledSet{"z"}, LabeledSet{"n"}, {"n"});
  EXPECT_THROW(pushout(f, g), MismatchedSets);
}

namespace {

struct RandomCospan {
  FinFn f, g;
};

RandomCospan random_cospan(std::mt19937_64 &rng, std::size_t max_size) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  auto set = [&](const std::string &prefix, std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
    return LabeledSet(labels);
  };
  // M and N share a label alphabet so the collision rule is exercised.
  auto y = set("y", pick(0, max_size));
  auto m = set("v", pick(1, max_size));
  auto n = set("v", pick(1, max_size));
  std::vector<std::size_t> fm(y.size()), gm(y.size());
  for (auto &x : fm) x = pick(0, m.size() - 1);
  for (auto &x : gm) x = pick(0, n.size() - 1);
  return {FinFn(y, m, fm), FinFn(y, n, gm)};
}

}  // namespace

TEST(PushoutProperty, LegsCommute) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    auto [f, g] = random_cospan(rng, 8);
    auto p = pushout(f, g);
    ASSERT_EQ(compose_fn(f, p.left), compose_fn(g, p.right));
  }
}

TEST(PushoutProperty, UniversalProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t max_size = trial < 50 ? 3 : 5;
    auto [f, g] = random_cospan(rng, max_size);
    auto p = pushout(f, g);
    const auto ms = f.target().size(), ns = g.target().size(), ps = p.apex.size();
    const std::size_t max_q = max_size == 3 ? 3 : 2;

    for (std::size_t q = 1; q <= max_q; ++q) {
      for_each_function(ms, q, [&](const std::vector<std::size_t> &mq) {
        for_each_function(ns, q, [&](const std::vector<std::size_t> &nq) {
          for (std::size_t y = 0; y < f.source().size(); ++y)
            if (mq[f(y)] != nq[g(y)]) return;
          std::size_t mediators = 0;
          for_each_function(ps, q, [&](const std::vector<std::size_t> &u) {
            for (std::size_t i = 0; i < ms; ++i)
              if (u[p.left(i)] != mq[i]) return;
            for (std::size_t i = 0; i < ns; ++i)
              if (u[p.right(i)] != nq[i]) return;
            ++mediators;
          });
          ASSERT_EQ(mediators, 1u);
        });
      });
    }
  }
}

TEST(PushoutProperty, AgreesWithPartitionClosure) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 2000; ++i) {
    auto [f, g] = random_cospan(rng, 6);
    auto p = pushout(f, g);
    const auto ms = f.target().size();
    auto expected = partition_closure(ms, g.target().size(), f.map(), g.map());
    ASSERT_EQ(p.apex.size(), test::block_count(expected));
    for (std::size_t a = 0; a < expected.size(); ++a)
      for (std::size_t b = 0; b < expected.size(); ++b) {
        auto pa = a < ms ? p.left(a) : p.right(a - ms);
        auto pb = b < ms ? p.left(b) : p.right(b - ms);
        ASSERT_EQ(expected[a] == expected[b], pa == pb);
      }
  }
}

TEST(CoproductProperty, InjectionsPartitionTheApex) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    auto [f, g] = random_cospan(rng, 6);
    auto c = coproduct(f.target(), g.target());
    ASSERT_EQ(c.apex.size(), f.target().size() + g.target().size());
    std::vector<int> hits(c.apex.size(), 0);
    for (auto x : c.inj1.map()) ++hits[x];
    for (auto x : c.inj2.map()) ++hits[x];
    for (auto h : hits) ASSERT_EQ(h, 1);
  }
}

TEST(PushoutProperty, DeterministicAndEmptyBoundaryIsCoproduct) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 500; ++i) {
    auto [f, g] = random_cospan(rng, 6);
    ASSERT_EQ(pushout(f, g).apex, pushout(f, g).apex);
    LabeledSet none;
    auto empty = pushout(FinFn(none, f.target(), {}), FinFn(none, g.target(), {}));
    ASSERT_EQ(empty.apex, coproduct(f.target(), g.target()).apex);
  }
}
