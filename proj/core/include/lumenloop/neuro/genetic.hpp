#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "lumenloop/metrics.hpp"
#include "lumenloop/neuro/network.hpp"
#include "lumenloop/scenario.hpp"

namespace lumenloop::neuro {

struct EvolutionConfig {
  int population_size = 50;
  int generations = 200;
  int tournament_size = 3;
  int elitism_count = 1;
  double crossover_probability = 0.9;
  double mutation_rate = 0.05;  // per gene
  double mutation_sigma = 0.3;
  double init_range = 1.0;      // genes start uniform in [-init_range, init_range)
  std::uint64_t seed = 0;

  // Throws ConfigError.
  void validate() const;

  bool operator==(const EvolutionConfig&) const = default;
};

struct GenerationStats {
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  Genome best;  // best genome of this generation
};

using EvolutionLog = std::vector<GenerationStats>;

struct EvolutionResult {
  Genome best;  // best genome seen in any generation
  EvolutionLog log;
};

using Rng = std::mt19937_64;

// Named random streams derived from one master seed.
enum class Stream : std::uint64_t { init = 0, select = 1, crossover = 2, mutate = 3 };
Rng substream(std::uint64_t seed, std::uint64_t generation, Stream stream);

// Must be safe to call concurrently on distinct genomes.
using FitnessFunction = std::function<double(const Genome&)>;

std::vector<Genome> init_population(const EvolutionConfig& cfg, const NetworkSpec& spec);

// Fills the fitness of every genome that does not have one yet. `threads` == 0
// uses the hardware concurrency; results are written by index, so the thread
// count never changes the output.
void evaluate_population(std::vector<Genome>& population, const FitnessFunction& fitness, unsigned threads = 1);

// Collective fitness of a homogeneous deployment: every pole runs `genome`.
double simulation_fitness(const NetworkSpec& spec, const Genome& genome, const ScenarioSpec& scenario,
                          const FitnessWeights& weights = {});

void evaluate_population(std::vector<Genome>& population, const ScenarioSpec& scenario, const NetworkSpec& spec,
                         const FitnessWeights& weights = {}, unsigned threads = 1);

// Index of the fittest of k distinct members drawn uniformly; ties go to the
// lowest population index. Every member must have a fitness.
std::size_t select_tournament(std::span<const Genome> population, int k, Rng& rng);

// One-point crossover with the given probability (cut in [1, len-1]);
// otherwise the children are clones. Throws LengthMismatch.
std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, double probability, Rng& rng);

// Adds N(0, sigma^2) noise to each gene with probability mutation_rate.
// The result carries no fitness.
Genome mutate(const Genome& g, const EvolutionConfig& cfg, Rng& rng);

// Generational loop: evaluate, keep elites, refill by tournament, crossover
// and mutation. Deterministic for a given config (including seed).
EvolutionResult evolve(const EvolutionConfig& cfg, const NetworkSpec& spec, const FitnessFunction& fitness,
                       unsigned threads = 1);

EvolutionResult run_evolution(const EvolutionConfig& cfg, const NetworkSpec& spec, const ScenarioSpec& scenario,
                              const FitnessWeights& weights = {}, unsigned threads = 1);

// generation,best_fitness,mean_fitness
void write_evolution_csv(std::ostream& out, const EvolutionLog& log);

// JSON document: network header plus the flat gene vector.
std::string genome_to_json(const NetworkSpec& spec, const Genome& genome);
std::pair<NetworkSpec, Genome> genome_from_json(std::string_view text);

}  // namespace lumenloop::neuro
