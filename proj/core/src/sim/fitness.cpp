#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "lumenloop/error.hpp"
#include "lumenloop/metrics.hpp"

namespace lumenloop {

SimulationMetrics compute_metrics(const RawTotals& raw, const ScenarioSpec& scenario) {
  SimulationMetrics m;
  const double pole_ticks = static_cast<double>(scenario.poles.size()) * scenario.max_ticks;
  m.energy_pct = pole_ticks > 0 ? 100.0 * raw.light_sum / pole_ticks : 0.0;
  const auto n_people = scenario.people.size();
  if (n_people == 0) {
    m.people_pct = 100.0;
    m.trip_pct = 0.0;
  } else {
    m.people_pct = 100.0 * raw.finished / static_cast<double>(n_people);
    m.trip_pct = 100.0 * static_cast<double>(raw.active_ticks) /
                 (static_cast<double>(n_people) * scenario.max_ticks);
  }
  return m;
}

double compute_fitness(const SimulationMetrics& m, const FitnessWeights& w) {
  return w.w_people * m.people_pct - w.w_energy * m.energy_pct - w.w_trip * m.trip_pct;
}

WeightFit derive_fitness_weights(std::span<const PublishedRow> rows) {
  if (rows.size() < 3) {
    throw DegenerateSystem("need at least 3 rows to determine 3 weights, got " + std::to_string(rows.size()));
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), 3);
  Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    a(r, 0) = rows[i].people;
    a(r, 1) = -rows[i].energy;
    a(r, 2) = -rows[i].trip;
    b(r) = rows[i].fitness;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) {
    throw DegenerateSystem("rows are rank-deficient (rank " + std::to_string(qr.rank()) + ")");
  }
  const Eigen::Vector3d w = qr.solve(b);

  WeightFit fit;
  fit.weights = FitnessWeights{w(0), w(1), w(2)};
  fit.max_residual = (a * w - b).cwiseAbs().maxCoeff();
  return fit;
}

}  // namespace lumenloop
