#include <cmath>

#include "json.hpp"
#include "lumenloop/error.hpp"
#include "lumenloop/neuro/genetic.hpp"

namespace lumenloop::neuro {

using json = nlohmann::json;

std::string genome_to_json(const NetworkSpec& spec, const Genome& genome) {
  json doc;
  doc["format"] = "lumenloop-genome/1";
  doc["network"] = {{"n_inputs", spec.n_inputs},
                    {"n_hidden", spec.n_hidden},
                    {"n_outputs", spec.n_outputs},
                    {"activation", "logistic"},
                    {"inputs", {"ambient", "motion", "signal", "current_light"}},
                    {"outputs", {"light", "broadcast", "listen"}}};
  doc["fitness"] = genome.fitness ? json(*genome.fitness) : json(nullptr);
  doc["genes"] = genome.genes;
  return doc.dump(2);
}

std::pair<NetworkSpec, Genome> genome_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid genome document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("network") || !doc.contains("genes")) {
    throw SchemaError("", "genome document needs 'network' and 'genes'");
  }
  NetworkSpec spec;
  Genome genome;
  try {
    const json& net = doc.at("network");
    spec.n_inputs = net.at("n_inputs").get<int>();
    spec.n_hidden = net.at("n_hidden").get<int>();
    spec.n_outputs = net.at("n_outputs").get<int>();
    if (net.contains("activation") && net.at("activation") != "logistic") {
      throw SchemaError("network.activation", "only 'logistic' is supported");
    }
    genome.genes = doc.at("genes").get<std::vector<double>>();
    if (doc.contains("fitness") && !doc.at("fitness").is_null()) {
      genome.fitness = doc.at("fitness").get<double>();
    }
  } catch (const json::exception& e) {
    throw SchemaError("", std::string("malformed genome document: ") + e.what());
  }
  try {
    spec.validate();
  } catch (const ConfigError& e) {
    throw SchemaError("network", e.what());
  }
  if (genome.genes.size() != spec.genome_length()) {
    throw LengthMismatch("genome has " + std::to_string(genome.genes.size()) + " genes, network needs " +
                         std::to_string(spec.genome_length()));
  }
  for (double g : genome.genes) {
    if (!std::isfinite(g)) {
      throw SchemaError("genes", "genes must be finite");
    }
  }
  return {spec, std::move(genome)};
}

}  // namespace lumenloop::neuro
