#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cospan/finset.hpp"

namespace cospan {

/// Arc multiplicities of one side of a transition, one entry per state of the
/// owning net (zero means no arc).
using Multiset = std::vector<unsigned>;

struct Transition {
  std::string name;
  std::string rate_param;
  Multiset inputs;
  Multiset outputs;

  friend bool operator==(const Transition &, const Transition &) = default;
};

class PetriNet {
 public:
  PetriNet() = default;
  /// Throws InvalidNet if transition names repeat or an arc vector does not
  /// cover exactly the given states.
  PetriNet(LabeledSet states, std::vector<Transition> transitions);

  const LabeledSet &states() const { return states_; }
  const std::vector<Transition> &transitions() const { return transitions_; }

  std::optional<std::size_t> transition_index(const std::string &name) const;

  /// Distinct rate parameter names in order of first use.
  std::vector<std::string> rate_params() const;

  friend bool operator==(const PetriNet &, const PetriNet &) = default;

 private:
  LabeledSet states_;
  std::vector<Transition> transitions_;
};

/// Builds a multiset over `states` from (label, multiplicity) pairs;
/// repeated labels accumulate.
Multiset make_multiset(const LabeledSet &states,
                       const std::vector<std::pair<std::string, unsigned>> &terms);

/// A Petri net with domain and codomain legs into its states: the cospan
/// dom.source() -> net.states() <- cod.source().
class OpenPetriNet {
 public:
  OpenPetriNet() = default;
  OpenPetriNet(PetriNet net, FinFn dom, FinFn cod);

  const PetriNet &net() const { return net_; }
  const FinFn &dom() const { return dom_; }
  const FinFn &cod() const { return cod_; }

  const LabeledSet &dom_object() const { return dom_.source(); }
  const LabeledSet &cod_object() const { return cod_.source(); }

  friend bool operator==(const OpenPetriNet &, const OpenPetriNet &) = default;

 private:
  PetriNet net_;
  FinFn dom_;
  FinFn cod_;
};

/// Serial composition: f first, then g, glued along f's codomain and g's
/// domain. Throws MismatchedBoundary when those objects differ.
OpenPetriNet compose(const OpenPetriNet &f, const OpenPetriNet &g);

/// Parallel, non-interacting composition; boundaries concatenate.
OpenPetriNet tensor(const OpenPetriNet &f, const OpenPetriNet &g);

OpenPetriNet identity_open(const LabeledSet &x);

/// Witness that two nets are isomorphic: state i of the first net maps to
/// state `states[i]` of the second, likewise for transitions.
struct Isomorphism {
  std::vector<std::size_t> states;
  std::vector<std::size_t> transitions;
};

/// Largest number of states, and of transitions, the exact search accepts.
inline constexpr std::size_t kIsoSearchBound = 12;

/// Exact isomorphism search on closed nets. Arcs and multiplicities must
/// correspond and rate parameters must be renamed consistently. Throws
/// TooLarge beyond kIsoSearchBound.
std::optional<Isomorphism> is_isomorphic(const PetriNet &a, const PetriNet &b);

/// As above, additionally requiring both legs to commute port by port. Port
/// labels of the boundary objects are not compared, only their positions.
std::optional<Isomorphism> is_isomorphic(const OpenPetriNet &a,
                                         const OpenPetriNet &b);

}  // namespace cospan
