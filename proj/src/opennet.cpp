#include "cospan/opennet.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_set>
#include <utility>

#include "cospan/errors.hpp"

namespace cospan {

PetriNet::PetriNet(LabeledSet states, std::vector<Transition> transitions)
    : states_(std::move(states)), transitions_(std::move(transitions)) {
  std::unordered_set<std::string> names;
  for (const auto &t : transitions_) {
    if (t.name.empty()) throw InvalidNet("transition with empty name");
    if (t.rate_param.empty())
      throw InvalidNet("transition '" + t.name + "' has no rate parameter");
    if (!names.insert(t.name).second)
      throw InvalidNet("duplicate transition name '" + t.name + "'");
    if (t.inputs.size() != states_.size() || t.outputs.size() != states_.size())
      throw InvalidNet("arcs of transition '" + t.name +
                       "' do not cover the net's states");
  }
}

std::optional<std::size_t> PetriNet::transition_index(
    const std::string &name) const {
  for (std::size_t i = 0; i < transitions_.size(); ++i)
    if (transitions_[i].name == name) return i;
  return std::nullopt;
}

std::vector<std::string> PetriNet::rate_params() const {
  std::vector<std::string> out;
  for (const auto &t : transitions_)
    if (std::find(out.begin(), out.end(), t.rate_param) == out.end())
      out.push_back(t.rate_param);
  return out;
}

Multiset make_multiset(
    const LabeledSet &states,
    const std::vector<std::pair<std::string, unsigned>> &terms) {
  Multiset m(states.size(), 0);
  for (const auto &[label, count] : terms) {
    auto idx = states.index_of(label);
    if (!idx) throw InvalidNet("arc references unknown state '" + label + "'");
    m[*idx] += count;
  }
  return m;
}

OpenPetriNet::OpenPetriNet(PetriNet net, FinFn dom, FinFn cod)
    : net_(std::move(net)), dom_(std::move(dom)), cod_(std::move(cod)) {
  if (dom_.target() != net_.states())
    throw InvalidNet("domain leg does not land in the net's states");
  if (cod_.target() != net_.states())
    throw InvalidNet("codomain leg does not land in the net's states");
}

namespace {

Multiset push_forward(const Multiset &m, const FinFn &leg) {
  Multiset out(leg.target().size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) out[leg(i)] += m[i];
  return out;
}

// Appends the transitions of `right` to `left`, pushing arcs through the
// given legs and priming colliding transition names and rate parameters of
// `right`.
std::vector<Transition> merge_transitions(const PetriNet &left,
                                          const FinFn &left_leg,
                                          const PetriNet &right,
                                          const FinFn &right_leg) {
  std::vector<Transition> out;
  out.reserve(left.transitions().size() + right.transitions().size());

  std::vector<std::string> names;
  for (const auto &t : left.transitions()) {
    out.push_back({t.name, t.rate_param, push_forward(t.inputs, left_leg),
                   push_forward(t.outputs, left_leg)});
    names.push_back(t.name);
  }

  std::vector<std::string> params = left.rate_params();
  std::vector<std::pair<std::string, std::string>> renamed;
  for (const auto &p : right.rate_params()) {
    auto fresh = fresh_label(p, params);
    params.push_back(fresh);
    renamed.emplace_back(p, std::move(fresh));
  }
  auto rename_param = [&](const std::string &p) {
    for (const auto &[from, to] : renamed)
      if (from == p) return to;
    return p;
  };

  for (const auto &t : right.transitions()) {
    auto name = fresh_label(t.name, names);
    names.push_back(name);
    out.push_back({std::move(name), rename_param(t.rate_param),
                   push_forward(t.inputs, right_leg),
                   push_forward(t.outputs, right_leg)});
  }
  return out;
}

}  // namespace

OpenPetriNet compose(const OpenPetriNet &f, const OpenPetriNet &g) {
  if (f.cod_object() != g.dom_object())
    throw MismatchedBoundary("cannot compose: codomain " +
                             f.cod_object().to_string() + " is not domain " +
                             g.dom_object().to_string());

  auto glued = pushout(f.cod(), g.dom());
  PetriNet net(glued.apex, merge_transitions(f.net(), glued.left, g.net(),
                                             glued.right));
  return OpenPetriNet(std::move(net), compose_fn(f.dom(), glued.left),
                      compose_fn(g.cod(), glued.right));
}

namespace {

FinFn tensor_legs(const FinFn &f_leg, const FinFn &g_leg, const Coproduct &apex) {
  auto boundary = coproduct(f_leg.source(), g_leg.source());
  std::vector<std::size_t> map;
  map.reserve(boundary.apex.size());
  for (auto image : f_leg.map()) map.push_back(apex.inj1(image));
  for (auto image : g_leg.map()) map.push_back(apex.inj2(image));
  return FinFn(boundary.apex, apex.apex, std::move(map));
}

}  // namespace

OpenPetriNet tensor(const OpenPetriNet &f, const OpenPetriNet &g) {
  auto sum = coproduct(f.net().states(), g.net().states());
  PetriNet net(sum.apex,
               merge_transitions(f.net(), sum.inj1, g.net(), sum.inj2));
  return OpenPetriNet(std::move(net), tensor_legs(f.dom(), g.dom(), sum),
                      tensor_legs(f.cod(), g.cod(), sum));
}

OpenPetriNet identity_open(const LabeledSet &x) {
  return OpenPetriNet(PetriNet(x, {}), identity_fn(x), identity_fn(x));
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace {

constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

// Per-state profile of one transition: (input multiplicity, output
// multiplicity) of that state.
using ArcPair = std::pair<unsigned, unsigned>;

struct NetView {
  const PetriNet *net;
  // Port positions that each state receives on the dom and cod legs.
  std::vector<std::vector<std::size_t>> dom_ports;
  std::vector<std::vector<std::size_t>> cod_ports;
  std::vector<std::size_t> param_of;  // transition -> rate parameter index
  std::size_t num_params = 0;

  // Sorted arc profiles of a state across transitions; isomorphism-invariant.
  std::vector<std::vector<ArcPair>> state_signature;
  // Sorted (input, output) multiplicity lists of each transition.
  std::vector<std::pair<std::vector<unsigned>, std::vector<unsigned>>>
      transition_signature;
  // For each ordered state pair, the sorted multiset of joint arc profiles
  // over all transitions touching either.
  std::vector<std::vector<std::vector<std::array<unsigned, 4>>>> pair_profile;
};

NetView make_view(const PetriNet &net, const FinFn *dom, const FinFn *cod) {
  NetView v;
  v.net = &net;
  const auto ns = net.states().size();
  const auto &ts = net.transitions();
  v.dom_ports.resize(ns);
  v.cod_ports.resize(ns);
  if (dom)
    for (std::size_t p = 0; p < dom->map().size(); ++p)
      v.dom_ports[(*dom)(p)].push_back(p);
  if (cod)
    for (std::size_t p = 0; p < cod->map().size(); ++p)
      v.cod_ports[(*cod)(p)].push_back(p);

  auto params = net.rate_params();
  v.num_params = params.size();
  for (const auto &t : ts)
    v.param_of.push_back(static_cast<std::size_t>(
        std::find(params.begin(), params.end(), t.rate_param) - params.begin()));

  v.state_signature.resize(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    for (const auto &t : ts)
      if (t.inputs[s] || t.outputs[s])
        v.state_signature[s].emplace_back(t.inputs[s], t.outputs[s]);
    std::sort(v.state_signature[s].begin(), v.state_signature[s].end());
  }

  for (const auto &t : ts) {
    std::vector<unsigned> in, out;
    for (std::size_t s = 0; s < ns; ++s) {
      if (t.inputs[s]) in.push_back(t.inputs[s]);
      if (t.outputs[s]) out.push_back(t.outputs[s]);
    }
    std::sort(in.begin(), in.end());
    std::sort(out.begin(), out.end());
    v.transition_signature.emplace_back(std::move(in), std::move(out));
  }

  v.pair_profile.assign(ns, std::vector<std::vector<std::array<unsigned, 4>>>(ns));
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t r = 0; r < ns; ++r) {
      auto &prof = v.pair_profile[s][r];
      for (const auto &t : ts) {
        std::array<unsigned, 4> entry{t.inputs[s], t.outputs[s], t.inputs[r],
                                      t.outputs[r]};
        if (entry != std::array<unsigned, 4>{}) prof.push_back(entry);
      }
      std::sort(prof.begin(), prof.end());
    }
  return v;
}

class IsoSearch {
 public:
  IsoSearch(const NetView &a, const NetView &b) : a_(a), b_(b) {}

  std::optional<Isomorphism> run() {
    const auto ns = a_.net->states().size();
    candidates_.resize(ns);
    for (std::size_t s = 0; s < ns; ++s) {
      for (std::size_t r = 0; r < ns; ++r)
        if (a_.state_signature[s] == b_.state_signature[r] &&
            a_.dom_ports[s] == b_.dom_ports[r] &&
            a_.cod_ports[s] == b_.cod_ports[r])
          candidates_[s].push_back(r);
      if (candidates_[s].empty()) return std::nullopt;
    }

    order_.resize(ns);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](auto x, auto y) {
      return candidates_[x].size() < candidates_[y].size();
    });

    state_map_.assign(ns, kUnassigned);
    state_used_.assign(ns, false);
    if (!assign_state(0)) return std::nullopt;
    return Isomorphism{state_map_, transition_map_};
  }

 private:
  bool consistent(std::size_t s, std::size_t r) const {
    if (a_.pair_profile[s][s] != b_.pair_profile[r][r]) return false;
    for (std::size_t k = 0; k < order_.size(); ++k) {
      auto other = order_[k];
      auto image = state_map_[other];
      if (image == kUnassigned) continue;
      if (a_.pair_profile[s][other] != b_.pair_profile[r][image]) return false;
    }
    return true;
  }

  bool assign_state(std::size_t depth) {
    if (depth == order_.size()) return match_transitions();
    auto s = order_[depth];
    for (auto r : candidates_[s]) {
      if (state_used_[r] || !consistent(s, r)) continue;
      state_map_[s] = r;
      state_used_[r] = true;
      if (assign_state(depth + 1)) return true;
      state_map_[s] = kUnassigned;
      state_used_[r] = false;
    }
    return false;
  }

  bool match_transitions() {
    const auto nt = a_.net->transitions().size();
    transition_map_.assign(nt, kUnassigned);
    transition_used_.assign(nt, false);
    param_fwd_.assign(a_.num_params, kUnassigned);
    param_bwd_.assign(b_.num_params, kUnassigned);
    return assign_transition(0);
  }

  bool arcs_correspond(std::size_t t, std::size_t u) const {
    if (a_.transition_signature[t] != b_.transition_signature[u]) return false;
    const auto &ta = a_.net->transitions()[t];
    const auto &tb = b_.net->transitions()[u];
    for (std::size_t s = 0; s < state_map_.size(); ++s) {
      auto r = state_map_[s];
      if (ta.inputs[s] != tb.inputs[r] || ta.outputs[s] != tb.outputs[r])
        return false;
    }
    return true;
  }

  bool assign_transition(std::size_t t) {
    if (t == transition_map_.size()) return true;
    auto pa = a_.param_of[t];
    for (std::size_t u = 0; u < transition_map_.size(); ++u) {
      if (transition_used_[u] || !arcs_correspond(t, u)) continue;
      auto pb = b_.param_of[u];
      bool fresh = param_fwd_[pa] == kUnassigned;
      if (fresh ? param_bwd_[pb] != kUnassigned : param_fwd_[pa] != pb)
        continue;
      if (fresh) {
        param_fwd_[pa] = pb;
        param_bwd_[pb] = pa;
      }
      transition_map_[t] = u;
      transition_used_[u] = true;
      if (assign_transition(t + 1)) return true;
      transition_map_[t] = kUnassigned;
      transition_used_[u] = false;
      if (fresh) {
        param_fwd_[pa] = kUnassigned;
        param_bwd_[pb] = kUnassigned;
      }
    }
    return false;
  }

  const NetView &a_;
  const NetView &b_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> state_map_;
  std::vector<bool> state_used_;
  std::vector<std::size_t> transition_map_;
  std::vector<bool> transition_used_;
  std::vector<std::size_t> param_fwd_;
  std::vector<std::size_t> param_bwd_;
};

void check_bound(const PetriNet &n) {
  if (n.states().size() > kIsoSearchBound ||
      n.transitions().size() > kIsoSearchBound)
    throw TooLarge("isomorphism search is exact only up to " +
                   std::to_string(kIsoSearchBound) +
                   " states and transitions; net has " +
                   std::to_string(n.states().size()) + " states and " +
                   std::to_string(n.transitions().size()) + " transitions");
}

std::optional<Isomorphism> search(const PetriNet &a, const FinFn *a_dom,
                                  const FinFn *a_cod, const PetriNet &b,
                                  const FinFn *b_dom, const FinFn *b_cod) {
  check_bound(a);
  check_bound(b);
  if (a.states().size() != b.states().size() ||
      a.transitions().size() != b.transitions().size() ||
      a.rate_params().size() != b.rate_params().size())
    return std::nullopt;
  auto va = make_view(a, a_dom, a_cod);
  auto vb = make_view(b, b_dom, b_cod);
  return IsoSearch(va, vb).run();
}

}  // namespace

std::optional<Isomorphism> is_isomorphic(const PetriNet &a, const PetriNet &b) {
  return search(a, nullptr, nullptr, b, nullptr, nullptr);
}

std::optional<Isomorphism> is_isomorphic(const OpenPetriNet &a,
                                         const OpenPetriNet &b) {
  check_bound(a.net());
  check_bound(b.net());
  if (a.dom().map().size() != b.dom().map().size() ||
      a.cod().map().size() != b.cod().map().size())
    return std::nullopt;
  return search(a.net(), &a.dom(), &a.cod(), b.net(), &b.dom(), &b.cod());
}

}  // namespace cospan
