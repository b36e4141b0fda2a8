#include <cmath>
#include <stdexcept>

#include "nvdressed/dynamics.hpp"

namespace nvdressed {

void DecayComponent::validate() const {
  if (!(t2 > 0.0)) throw std::invalid_argument("T2 must be positive");
  if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("stretch p must lie in [1, 2]");
}

double fid_probability(const DecayComponent& comp, double tau) {
  const double env = std::exp(-std::pow(tau / comp.t2, comp.p));
  return comp.y0 + comp.a * env * std::cos(2.0 * kPi * comp.delta * tau + comp.phi);
}

std::vector<double> fid_signal(const std::vector<DecayComponent>& components,
                               const std::vector<double>& tau) {
  if (tau.empty()) throw std::invalid_argument("fid_signal: empty time grid");
  for (std::size_t i = 1; i < tau.size(); ++i)
    if (!(tau[i] > tau[i - 1])) throw std::invalid_argument("fid_signal: grid must ascend");
  std::vector<double> out(tau.size(), 0.0);
  for (const auto& comp : components) {
    comp.validate();
    for (std::size_t i = 0; i < tau.size(); ++i) out[i] += fid_probability(comp, tau[i]);
  }
  return out;
}

}  // namespace nvdressed
