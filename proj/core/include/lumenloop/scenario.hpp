#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lumenloop {

struct PoleSpec {
  int id = 0;
  std::vector<int> neighbors;

  bool operator==(const PoleSpec&) const = default;
};

struct PersonSpec {
  int id = 0;
  int origin = 0;
  int destination = 0;
  int start_tick = 0;

  bool operator==(const PersonSpec&) const = default;
};

// Ambient level holds from `from_tick` until the next step begins.
struct AmbientStep {
  int from_tick = 0;
  double level = 0.0;

  bool operator==(const AmbientStep&) const = default;
};

// Immutable environment description. Construct through load_scenario, which
// checks every invariant; a default-constructed value is not a valid scenario.
struct ScenarioSpec {
  std::string name;
  int max_ticks = 1;
  std::vector<PoleSpec> poles;
  std::vector<PersonSpec> people;
  std::vector<AmbientStep> ambient_schedule;
  double movement_threshold = 0.5;
  std::uint64_t rng_seed = 0;

  // Ambient level at `tick`; 0 before the first schedule step.
  double ambient_at(int tick) const;

  // Position of the pole with this id in `poles`.
  std::optional<std::size_t> pole_index(int id) const;

  bool operator==(const ScenarioSpec&) const = default;
};

// Parses and validates a scenario JSON document.
// Throws SchemaError for malformed documents, ValidationError for invariant
// violations; both carry the offending field path (e.g. "people[2].destination").
ScenarioSpec load_scenario(std::string_view json_text);

ScenarioSpec load_scenario_file(const std::string& path);

// Re-checks the invariants of an already built spec (load_scenario calls this).
void validate_scenario(const ScenarioSpec& spec);

// Serialises back to the document format accepted by load_scenario.
std::string scenario_to_json(const ScenarioSpec& spec);

// Built-in documents: "scenario1" (3x3 grid) and "scenario2" (5x5 grid).
bool is_builtin_scenario(std::string_view name);
std::string builtin_scenario_document(std::string_view name);
ScenarioSpec builtin_scenario(std::string_view name);

// Rook-adjacency grid with row-major ids starting at 0.
std::vector<PoleSpec> grid_poles(int rows, int cols);

// Pole-id route from origin to destination (both ends included). At each step
// the lowest-id neighbour that is one hop closer to the destination is taken.
// Empty if unreachable.
std::vector<int> shortest_route(const ScenarioSpec& spec, int origin, int destination);

}  // namespace lumenloop
