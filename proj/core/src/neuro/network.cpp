#include "lumenloop/neuro/network.hpp"

#include <cmath>

#include "lumenloop/error.hpp"

namespace lumenloop::neuro {

void NetworkSpec::validate() const {
  if (n_inputs != 4 || n_outputs != 3) {
    throw ConfigError("network must have 4 inputs and 3 outputs");
  }
  if (n_hidden < 1) {
    throw ConfigError("network needs at least one hidden unit");
  }
}

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::array<double, 4> network_inputs(const SensorReading& r) {
  return {r.ambient, r.motion ? 1.0 : 0.0, r.signal, r.current_light};
}

std::vector<double> forward_outputs(const NetworkSpec& spec, std::span<const double> genes,
                                    std::span<const double> inputs) {
  if (genes.size() != spec.genome_length()) {
    throw LengthMismatch("genome has " + std::to_string(genes.size()) + " genes, network needs " +
                         std::to_string(spec.genome_length()));
  }
  if (inputs.size() != static_cast<std::size_t>(spec.n_inputs)) {
    throw LengthMismatch("network expects " + std::to_string(spec.n_inputs) + " inputs");
  }
  const auto n_in = static_cast<std::size_t>(spec.n_inputs);
  const auto n_hid = static_cast<std::size_t>(spec.n_hidden);
  const auto n_out = static_cast<std::size_t>(spec.n_outputs);

  std::vector<double> hidden(n_hid);
  std::size_t g = 0;
  for (std::size_t j = 0; j < n_hid; ++j) {
    double z = 0.0;
    for (std::size_t i = 0; i < n_in; ++i) {
      z += genes[g++] * inputs[i];
    }
    z += genes[g++];
    hidden[j] = sigmoid(z);
  }
  std::vector<double> out(n_out);
  for (std::size_t k = 0; k < n_out; ++k) {
    double z = 0.0;
    for (std::size_t j = 0; j < n_hid; ++j) {
      z += genes[g++] * hidden[j];
    }
    z += genes[g++];
    out[k] = sigmoid(z);
  }
  return out;
}

ActuatorCommand forward(const NetworkSpec& spec, const Genome& genome, const SensorReading& reading) {
  const auto inputs = network_inputs(reading);
  const auto out = forward_outputs(spec, genome.genes, inputs);
  return ActuatorCommand{out[0], out[2] >= 0.5, out[1]};
}

NetworkController::NetworkController(NetworkSpec spec, std::shared_ptr<const Genome> genome)
    : spec_(spec), genome_(std::move(genome)) {}

ActuatorCommand NetworkController::decide(const SensorReading& reading, const ActuatorCommand&) {
  return forward(spec_, *genome_, reading);
}

ControllerFactory network_controller_factory(const NetworkSpec& spec, std::shared_ptr<const Genome> genome) {
  return [spec, genome = std::move(genome)](int) { return std::make_unique<NetworkController>(spec, genome); };
}

}  // namespace lumenloop::neuro
