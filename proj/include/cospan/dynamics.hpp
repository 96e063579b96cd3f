#pragma once

#include <map>
#include <string>
#include <vector>

#include "cospan/opennet.hpp"

namespace cospan {

/// Rate constant per rate parameter name.
using RateBinding = std::map<std::string, double>;

/// Concentration per state label.
using Marking = std::map<std::string, double>;

inline constexpr double kDefaultStep = 0.01;

struct SimConfig {
  double t0 = 0.0;
  double t_end = 1.0;
  double step = kDefaultStep;
  Marking initial;
  RateBinding rates;
};

/// States sampled at every integrator step. `values[k][i]` is the
/// concentration of `states.label(i)` at `times[k]`.
struct Trajectory {
  LabeledSet states;
  std::vector<double> times;
  std::vector<std::vector<double>> values;

  std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
};

/// Mass-action vector field of a net with bound rates, over dense state
/// vectors in canonical state order.
class MassActionSystem {
 public:
  /// Throws UnboundRate for the first parameter without a value and
  /// InvalidConfig for negative or non-finite rates.
  MassActionSystem(const PetriNet &net, const RateBinding &rates);

  std::size_t dimension() const { return dimension_; }

  /// dx_i/dt = sum_t k_t (out_i(t) - in_i(t)) prod_j x_j^in_j(t)
  void derivative(const std::vector<double> &x, std::vector<double> &dxdt) const;

 private:
  struct Reaction {
    double rate;
    std::vector<std::pair<std::size_t, unsigned>> reactants;
    std::vector<std::pair<std::size_t, int>> net_change;
  };

  std::size_t dimension_;
  std::vector<Reaction> reactions_;
};

/// Dense state vector for `m` in the net's state order. Throws
/// MarkingMismatch unless `m` covers exactly the net's states.
std::vector<double> marking_vector(const PetriNet &net, const Marking &m);

std::vector<double> vector_field(const PetriNet &net, const RateBinding &rates,
                                 const Marking &m);

/// Classical fixed-step RK4 from cfg.t0 to cfg.t_end, recording every step.
/// The final step is shortened to land exactly on t_end.
Trajectory simulate(const PetriNet &net, const SimConfig &cfg);

/// True iff every transition has equal total input and output multiplicity.
bool conserves_tokens(const PetriNet &net);

}  // namespace cospan
