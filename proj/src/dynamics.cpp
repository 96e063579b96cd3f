#include "cospan/dynamics.hpp"

#include <cmath>
#include <numeric>

#include "cospan/errors.hpp"

namespace cospan {

MassActionSystem::MassActionSystem(const PetriNet &net, const RateBinding &rates)
    : dimension_(net.states().size()) {
  for (const auto &t : net.transitions()) {
    auto it = rates.find(t.rate_param);
    if (it == rates.end()) throw UnboundRate(t.rate_param);
    if (!std::isfinite(it->second) || it->second < 0.0)
      throw InvalidConfig("rate '" + t.rate_param +
                          "' must be a finite nonnegative number");

    Reaction r{it->second, {}, {}};
    for (std::size_t s = 0; s < dimension_; ++s) {
      if (t.inputs[s]) r.reactants.emplace_back(s, t.inputs[s]);
      int change = static_cast<int>(t.outputs[s]) - static_cast<int>(t.inputs[s]);
      if (change) r.net_change.emplace_back(s, change);
    }
    reactions_.push_back(std::move(r));
  }
}

void MassActionSystem::derivative(const std::vector<double> &x,
                                  std::vector<double> &dxdt) const {
  dxdt.assign(dimension_, 0.0);
  for (const auto &r : reactions_) {
    double flux = r.rate;
    for (auto [s, power] : r.reactants)
      for (unsigned k = 0; k < power; ++k) flux *= x[s];
    for (auto [s, change] : r.net_change) dxdt[s] += change * flux;
  }
}

std::vector<double> marking_vector(const PetriNet &net, const Marking &m) {
  const auto &states = net.states();
  for (const auto &[label, value] : m)
    if (!states.contains(label))
      throw MarkingMismatch("marking names '" + label +
                            "', which is not a state of the net");
  std::vector<double> x;
  x.reserve(states.size());
  for (const auto &label : states.labels()) {
    auto it = m.find(label);
    if (it == m.end())
      throw MarkingMismatch("marking has no value for state '" + label + "'");
    x.push_back(it->second);
  }
  return x;
}

std::vector<double> vector_field(const PetriNet &net, const RateBinding &rates,
                                 const Marking &m) {
  MassActionSystem system(net, rates);
  auto x = marking_vector(net, m);
  std::vector<double> dxdt;
  system.derivative(x, dxdt);
  return dxdt;
}

namespace {

void validate(const SimConfig &cfg) {
  if (!std::isfinite(cfg.t0) || !std::isfinite(cfg.t_end) || cfg.t_end <= cfg.t0)
    throw InvalidConfig("t_end must be greater than t0");
  if (!std::isfinite(cfg.step) || cfg.step <= 0.0)
    throw InvalidConfig("step must be positive");
  if (cfg.step > cfg.t_end - cfg.t0)
    throw InvalidConfig("step exceeds the simulated interval");
  for (const auto &[label, value] : cfg.initial)
    if (!std::isfinite(value) || value < 0.0)
      throw InvalidConfig("initial value of '" + label +
                          "' must be a finite nonnegative number");
}

// Number of full steps before the final (possibly shorter) one. Intervals
// that are an integer multiple of the step up to round-off use that multiple.
std::size_t full_steps(const SimConfig &cfg) {
  double ratio = (cfg.t_end - cfg.t0) / cfg.step;
  double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio))
    return static_cast<std::size_t>(nearest) - 1;
  return static_cast<std::size_t>(std::floor(ratio));
}

}  // namespace

Trajectory simulate(const PetriNet &net, const SimConfig &cfg) {
  validate(cfg);
  MassActionSystem system(net, cfg.rates);
  auto x = marking_vector(net, cfg.initial);
  const auto n = x.size();

  const std::size_t full = full_steps(cfg);
  Trajectory traj;
  traj.states = net.states();
  traj.times.reserve(full + 2);
  traj.values.reserve(full + 2);
  traj.times.push_back(cfg.t0);
  traj.values.push_back(x);

  std::vector<double> k1, k2, k3, k4, tmp(n);
  for (std::size_t i = 0; i <= full; ++i) {
    double t = cfg.t0 + static_cast<double>(i) * cfg.step;
    double t_next = i == full ? cfg.t_end
                              : cfg.t0 + static_cast<double>(i + 1) * cfg.step;
    double h = t_next - t;

    system.derivative(x, k1);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * h * k1[j];
    system.derivative(tmp, k2);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * h * k2[j];
    system.derivative(tmp, k3);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + h * k3[j];
    system.derivative(tmp, k4);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      if (!std::isfinite(x[j])) throw NonFiniteState(t_next);
    }

    traj.times.push_back(t_next);
    traj.values.push_back(x);
  }
  return traj;
}

bool conserves_tokens(const PetriNet &net) {
  for (const auto &t : net.transitions()) {
    auto in = std::accumulate(t.inputs.begin(), t.inputs.end(), 0u);
    auto out = std::accumulate(t.outputs.begin(), t.outputs.end(), 0u);
    if (in != out) return false;
  }
  return true;
}

}  // namespace cospan
