#include "lumenloop/neuro/genetic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include "lumenloop/error.hpp"
#include "lumenloop/text.hpp"

namespace lumenloop::neuro {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Indices ordered by fitness descending, then index ascending.
std::vector<std::size_t> ranking(const std::vector<Genome>& pop) {
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return *pop[a].fitness > *pop[b].fitness; });
  return order;
}

}  // namespace

void EvolutionConfig::validate() const {
  if (population_size < 2) throw ConfigError("population_size must be at least 2");
  if (generations < 1) throw ConfigError("generations must be at least 1");
  if (tournament_size < 1 || tournament_size > population_size) {
    throw ConfigError("tournament_size must lie in [1, population_size]");
  }
  if (elitism_count < 0 || elitism_count >= population_size) {
    throw ConfigError("elitism_count must lie in [0, population_size)");
  }
  if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0)) {
    throw ConfigError("crossover_probability must lie in [0, 1]");
  }
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw ConfigError("mutation_rate must lie in [0, 1]");
  if (!(mutation_sigma >= 0.0) || !std::isfinite(mutation_sigma)) {
    throw ConfigError("mutation_sigma must be finite and non-negative");
  }
  if (!(init_range > 0.0) || !std::isfinite(init_range)) throw ConfigError("init_range must be positive");
}

Rng substream(std::uint64_t seed, std::uint64_t generation, Stream stream) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ generation);
  s = splitmix64(s ^ static_cast<std::uint64_t>(stream));
  return Rng(s);
}

std::vector<Genome> init_population(const EvolutionConfig& cfg, const NetworkSpec& spec) {
  Rng rng = substream(cfg.seed, 0, Stream::init);
  std::uniform_real_distribution<double> dist(-cfg.init_range, cfg.init_range);
  std::vector<Genome> pop(static_cast<std::size_t>(cfg.population_size));
  for (auto& g : pop) {
    g.genes.resize(spec.genome_length());
    for (auto& gene : g.genes) {
      gene = dist(rng);
    }
  }
  return pop;
}

void evaluate_population(std::vector<Genome>& population, const FitnessFunction& fitness, unsigned threads) {
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (!population[i].fitness) {
      pending.push_back(i);
    }
  }
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, pending.size()));
  if (threads <= 1) {
    for (std::size_t i : pending) {
      population[i].fitness = fitness(population[i]);
    }
    return;
  }

  std::vector<double> scores(pending.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < pending.size(); k = next++) {
      try {
        scores[k] = fitness(population[pending[k]]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back(worker);
  }
  pool.clear();
  if (failure) {
    std::rethrow_exception(failure);
  }
  for (std::size_t k = 0; k < pending.size(); ++k) {
    population[pending[k]].fitness = scores[k];
  }
}

double simulation_fitness(const NetworkSpec& spec, const Genome& genome, const ScenarioSpec& scenario,
                          const FitnessWeights& weights) {
  auto shared = std::make_shared<const Genome>(genome);
  return run_simulation(scenario, network_controller_factory(spec, shared), false, weights).metrics.fitness;
}

void evaluate_population(std::vector<Genome>& population, const ScenarioSpec& scenario, const NetworkSpec& spec,
                         const FitnessWeights& weights, unsigned threads) {
  evaluate_population(
      population, [&](const Genome& g) { return simulation_fitness(spec, g, scenario, weights); }, threads);
}

std::size_t select_tournament(std::span<const Genome> population, int k, Rng& rng) {
  const std::size_t n = population.size();
  const auto draws = static_cast<std::size_t>(std::clamp<int>(k, 1, static_cast<int>(n)));
  // Partial Fisher-Yates over the index range gives k distinct members.
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::size_t best = n;
  for (std::size_t d = 0; d < draws; ++d) {
    std::uniform_int_distribution<std::size_t> pick(d, n - 1);
    std::swap(idx[d], idx[pick(rng)]);
    const std::size_t c = idx[d];
    if (best == n || *population[c].fitness > *population[best].fitness ||
        (*population[c].fitness == *population[best].fitness && c < best)) {
      best = c;
    }
  }
  return best;
}

std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, double probability, Rng& rng) {
  if (a.genes.size() != b.genes.size()) {
    throw LengthMismatch("crossover parents differ in length (" + std::to_string(a.genes.size()) + " vs " +
                         std::to_string(b.genes.size()) + ")");
  }
  Genome c1{a.genes, std::nullopt};
  Genome c2{b.genes, std::nullopt};
  const std::size_t len = a.genes.size();
  std::bernoulli_distribution apply(probability);
  if (len < 2 || !apply(rng)) {
    c1.fitness = a.fitness;
    c2.fitness = b.fitness;
    return {std::move(c1), std::move(c2)};
  }
  std::uniform_int_distribution<std::size_t> cut_dist(1, len - 1);
  const std::size_t cut = cut_dist(rng);
  for (std::size_t i = cut; i < len; ++i) {
    std::swap(c1.genes[i], c2.genes[i]);
  }
  return {std::move(c1), std::move(c2)};
}

Genome mutate(const Genome& g, const EvolutionConfig& cfg, Rng& rng) {
  Genome out{g.genes, std::nullopt};
  if (cfg.mutation_rate <= 0.0 || cfg.mutation_sigma <= 0.0) {
    out.fitness = g.fitness;
    return out;
  }
  std::bernoulli_distribution hit(cfg.mutation_rate);
  std::normal_distribution<double> noise(0.0, cfg.mutation_sigma);
  for (auto& gene : out.genes) {
    if (hit(rng)) {
      gene += noise(rng);
    }
  }
  return out;
}

EvolutionResult evolve(const EvolutionConfig& cfg, const NetworkSpec& spec, const FitnessFunction& fitness,
                       unsigned threads) {
  cfg.validate();
  spec.validate();

  EvolutionResult result;
  std::vector<Genome> pop = init_population(cfg, spec);
  const auto n = static_cast<std::size_t>(cfg.population_size);

  for (int gen = 0; gen < cfg.generations; ++gen) {
    evaluate_population(pop, fitness, threads);
    const auto order = ranking(pop);

    GenerationStats stats;
    stats.generation = gen;
    stats.best = pop[order.front()];
    stats.best_fitness = *stats.best.fitness;
    double sum = 0.0;
    for (const auto& g : pop) {
      sum += *g.fitness;
    }
    stats.mean_fitness = sum / static_cast<double>(n);
    if (result.log.empty() || stats.best_fitness > *result.best.fitness) {
      result.best = stats.best;
    }
    result.log.push_back(std::move(stats));

    if (gen + 1 == cfg.generations) {
      break;
    }

    const auto g = static_cast<std::uint64_t>(gen) + 1;
    Rng select_rng = substream(cfg.seed, g, Stream::select);
    Rng cross_rng = substream(cfg.seed, g, Stream::crossover);
    Rng mutate_rng = substream(cfg.seed, g, Stream::mutate);

    std::vector<Genome> next;
    next.reserve(n);
    for (int e = 0; e < cfg.elitism_count; ++e) {
      next.push_back(pop[order[static_cast<std::size_t>(e)]]);
    }
    while (next.size() < n) {
      const Genome& p1 = pop[select_tournament(pop, cfg.tournament_size, select_rng)];
      const Genome& p2 = pop[select_tournament(pop, cfg.tournament_size, select_rng)];
      auto [c1, c2] = crossover(p1, p2, cfg.crossover_probability, cross_rng);
      next.push_back(mutate(c1, cfg, mutate_rng));
      if (next.size() < n) {
        next.push_back(mutate(c2, cfg, mutate_rng));
      }
    }
    pop = std::move(next);
  }
  return result;
}

EvolutionResult run_evolution(const EvolutionConfig& cfg, const NetworkSpec& spec, const ScenarioSpec& scenario,
                              const FitnessWeights& weights, unsigned threads) {
  return evolve(
      cfg, spec, [&](const Genome& g) { return simulation_fitness(spec, g, scenario, weights); }, threads);
}

void write_evolution_csv(std::ostream& out, const EvolutionLog& log) {
  out << "generation,best_fitness,mean_fitness\n";
  for (const auto& s : log) {
    out << s.generation << ',' << to_decimal(s.best_fitness) << ',' << to_decimal(s.mean_fitness) << '\n';
  }
}

}  // namespace lumenloop::neuro
