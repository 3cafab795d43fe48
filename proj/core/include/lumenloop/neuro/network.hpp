#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lumenloop/simulation.hpp"

namespace lumenloop::neuro {

// Dense input -> hidden -> output network with logistic activations on the
// hidden and output layers. Inputs are (ambient, motion, signal, current_light);
// outputs are (light, broadcast, listen), listen being on iff its output >= 0.5.
//
// Genome layout: for each hidden unit, n_inputs weights then its bias; then
// for each output unit, n_hidden weights then its bias.
struct NetworkSpec {
  int n_inputs = 4;
  int n_hidden = 6;
  int n_outputs = 3;

  std::size_t genome_length() const {
    return static_cast<std::size_t>((n_inputs + 1) * n_hidden + (n_hidden + 1) * n_outputs);
  }

  // Throws ConfigError unless inputs == 4, outputs == 3 and hidden >= 1.
  void validate() const;

  bool operator==(const NetworkSpec&) const = default;
};

struct Genome {
  std::vector<double> genes;
  std::optional<double> fitness;

  bool operator==(const Genome&) const = default;
};

double sigmoid(double x);

std::array<double, 4> network_inputs(const SensorReading& reading);

// Raw output activations. Throws LengthMismatch if genes do not fit `spec`.
std::vector<double> forward_outputs(const NetworkSpec& spec, std::span<const double> genes,
                                    std::span<const double> inputs);

ActuatorCommand forward(const NetworkSpec& spec, const Genome& genome, const SensorReading& reading);

class NetworkController final : public Controller {
 public:
  NetworkController(NetworkSpec spec, std::shared_ptr<const Genome> genome);
  ActuatorCommand decide(const SensorReading& reading, const ActuatorCommand& previous) override;

 private:
  NetworkSpec spec_;
  std::shared_ptr<const Genome> genome_;
};

ControllerFactory network_controller_factory(const NetworkSpec& spec, std::shared_ptr<const Genome> genome);

}  // namespace lumenloop::neuro
