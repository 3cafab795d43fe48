#pragma once

#include <span>

#include "lumenloop/scenario.hpp"

namespace lumenloop {

// Collective fitness = w_people*people - w_energy*energy - w_trip*trip.
// The defaults reproduce every published (energy, people, trip, fitness) row
// to within 0.03; see derive_fitness_weights.
struct FitnessWeights {
  double w_people = 1.0;
  double w_energy = 0.4;
  double w_trip = 0.6;

  bool operator==(const FitnessWeights&) const = default;
};

struct SimulationMetrics {
  double energy_pct = 0.0;  // % of maximum possible lamp output
  double people_pct = 0.0;  // % of pedestrians who reached their destination
  double trip_pct = 0.0;    // % of maximum aggregate trip time
  double fitness = 0.0;

  bool operator==(const SimulationMetrics&) const = default;
};

// Totals accumulated by a run, before normalisation.
struct RawTotals {
  double light_sum = 0.0;            // sum of lamp levels over poles and ticks
  int finished = 0;                  // pedestrians that arrived
  long long active_ticks = 0;        // sum over pedestrians of ticks spent travelling
};

// Percentages only; `fitness` is left at 0.
SimulationMetrics compute_metrics(const RawTotals& raw, const ScenarioSpec& scenario);

double compute_fitness(const SimulationMetrics& m, const FitnessWeights& w = {});

struct PublishedRow {
  double energy = 0.0;
  double people = 0.0;
  double trip = 0.0;
  double fitness = 0.0;
};

struct WeightFit {
  FitnessWeights weights;
  double max_residual = 0.0;
};

// Least-squares fit of fitness ~ w_p*people - w_e*energy - w_t*trip.
// Throws DegenerateSystem when the rows do not determine all three weights.
WeightFit derive_fitness_weights(std::span<const PublishedRow> rows);

}  // namespace lumenloop
