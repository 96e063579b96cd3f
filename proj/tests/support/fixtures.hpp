#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cospan/finset.hpp"
#include "cospan/morphexpr.hpp"
#include "cospan/opennet.hpp"

#ifndef COSPAN_MODELS_DIR
#error "COSPAN_MODELS_DIR must point at the bundled models directory"
#endif

namespace cospan::test {

inline std::string model_path(const std::string &name) {
  return std::string(COSPAN_MODELS_DIR) + "/" + name;
}

using Terms = std::vector<std::pair<std::string, unsigned>>;

inline Transition make_transition(const LabeledSet &states, std::string name,
                                  std::string rate, const Terms &in,
                                  const Terms &out) {
  return {std::move(name), std::move(rate), make_multiset(states, in),
          make_multiset(states, out)};
}

inline OpenPetriNet make_open(const LabeledSet &states,
                              std::vector<Transition> transitions,
                              const std::vector<std::string> &dom,
                              const std::vector<std::string> &cod) {
  return OpenPetriNet(PetriNet(states, std::move(transitions)),
                      FinFn::from_labels(LabeledSet(dom), states, dom),
                      FinFn::from_labels(LabeledSet(cod), states, cod));
}

/// Infection: S + I -> 2 I, boundary [S] -> [I].
inline OpenPetriNet infection_F() {
  LabeledSet s{"S", "I"};
  return make_open(s, {make_transition(s, "α", "α", {{"S", 1}, {"I", 1}}, {{"I", 2}})},
                   {"S"}, {"I"});
}

/// Recovery: I -> R, boundary [I] -> [R].
inline OpenPetriNet recovery_G() {
  LabeledSet s{"I", "R"};
  return make_open(s, {make_transition(s, "β", "β", {{"I", 1}}, {{"R", 1}})},
                   {"I"}, {"R"});
}

/// Recovery or death: I -> R, I -> D, boundary [I] -> [R, D].
inline OpenPetriNet recovery_death_H() {
  LabeledSet s{"I", "R", "D"};
  return make_open(s,
                   {make_transition(s, "β", "β", {{"I", 1}}, {{"R", 1}}),
                    make_transition(s, "γ", "γ", {{"I", 1}}, {{"D", 1}})},
                   {"I"}, {"R", "D"});
}

inline Environment epidemic_env() {
  Environment env;
  env.bind("F", infection_F());
  env.bind("G", recovery_G());
  env.bind("H", recovery_death_H());
  return env;
}

// ---------------------------------------------------------------------------
// Random generators

inline LabeledSet boundary_object(const std::string &prefix, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return LabeledSet(std::move(labels));
}

/// Random open net X -> Y with 1..max_states states, up to max_transitions
/// transitions, arc multiplicities up to 2 and rate parameters drawn from a
/// small shared pool so that composition has to rename collisions.
inline OpenPetriNet random_open(std::mt19937_64 &rng, const LabeledSet &dom,
                                const LabeledSet &cod, std::size_t max_states,
                                std::size_t max_transitions) {
  static const std::vector<std::string> pool{"a", "b", "c", "d", "e", "f"};
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };

  std::vector<std::string> labels = pool;
  std::shuffle(labels.begin(), labels.end(), rng);
  labels.resize(pick(1, max_states));
  LabeledSet states(labels);

  std::vector<Transition> transitions;
  const auto nt = pick(0, max_transitions);
  for (std::size_t t = 0; t < nt; ++t) {
    Multiset in(states.size()), out(states.size());
    for (auto &m : in) m = static_cast<unsigned>(pick(0, 2) == 0 ? pick(1, 2) : 0);
    for (auto &m : out) m = static_cast<unsigned>(pick(0, 2) == 0 ? pick(1, 2) : 0);
    transitions.push_back({"t" + std::to_string(t), "k" + std::to_string(pick(0, 2)),
                           std::move(in), std::move(out)});
  }

  std::vector<std::size_t> dmap(dom.size()), cmap(cod.size());
  for (auto &d : dmap) d = pick(0, states.size() - 1);
  for (auto &c : cmap) c = pick(0, states.size() - 1);
  return OpenPetriNet(PetriNet(states, std::move(transitions)),
                      FinFn(dom, states, std::move(dmap)),
                      FinFn(cod, states, std::move(cmap)));
}

/// Random token-conserving closed net: every transition moves as many tokens
/// out as it takes in.
inline PetriNet random_conserving_net(std::mt19937_64 &rng) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const auto ns = pick(1, 6);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < ns; ++i) labels.push_back("X" + std::to_string(i));
  LabeledSet states(labels);

  std::vector<Transition> transitions;
  const auto nt = pick(1, 6);
  for (std::size_t t = 0; t < nt; ++t) {
    Multiset in(ns, 0), out(ns, 0);
    const auto tokens = pick(1, 3);
    for (std::size_t k = 0; k < tokens; ++k) {
      ++in[pick(0, ns - 1)];
      ++out[pick(0, ns - 1)];
    }
    transitions.push_back({"t" + std::to_string(t), "k" + std::to_string(t),
                           std::move(in), std::move(out)});
  }
  return PetriNet(states, std::move(transitions));
}

/// Random expression over a fixed pool of generator names and small identity
/// objects, up to the given depth.
inline MorphExpr random_expr(std::mt19937_64 &rng, int depth) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  if (depth == 0 || pick(0, 3) == 0) {
    if (pick(0, 4) == 0) {
      static const std::vector<std::string> labels{"S", "I", "R'", "x_1", "α"};
      std::vector<std::string> obj;
      for (const auto &l : labels)
        if (pick(0, 1)) obj.push_back(l);
      return MorphExpr::id(LabeledSet(obj));
    }
    static const std::vector<std::string> names{"f", "g", "h", "F2", "β_x"};
    return MorphExpr::gen(names[static_cast<std::size_t>(pick(0, 4))]);
  }
  auto l = random_expr(rng, depth - 1);
  auto r = random_expr(rng, depth - 1);
  return pick(0, 1) ? MorphExpr::compose(l, r) : MorphExpr::tensor(l, r);
}

}  // namespace cospan::test
