#include "lumenloop/scenario.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lumenloop/error.hpp"

namespace lumenloop {
namespace {

using json = nlohmann::json;

void require_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required) {
  if (!obj.is_object()) {
    throw SchemaError(path.empty() ? "$" : path, "expected an object");
  }
  const std::set<std::string> allowed_set(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!allowed_set.contains(key)) {
      throw SchemaError(path.empty() ? key : path + "." + key, "unknown key");
    }
  }
  for (const char* key : required) {
    if (!obj.contains(key)) {
      throw SchemaError(path.empty() ? std::string(key) : path + "." + key, "missing required key");
    }
  }
}

std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

long long get_integer(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
      throw ValidationError(path, "integer out of range");
    }
    return static_cast<long long>(u);
  }
  if (v.is_number_integer()) {
    const auto i = v.get<long long>();
    if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()) {
      throw ValidationError(path, "integer out of range");
    }
    return i;
  }
  throw SchemaError(path, "expected an integer");
}

double get_real(const json& v, const std::string& path) {
  if (!v.is_number()) {
    throw SchemaError(path, "expected a number");
  }
  return v.get<double>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) {
    throw SchemaError(path, "expected a string");
  }
  return v.get<std::string>();
}

const json& get_array(const json& v, const std::string& path) {
  if (!v.is_array()) {
    throw SchemaError(path, "expected an array");
  }
  return v;
}

ScenarioSpec from_json(const json& doc) {
  require_keys(doc, "",
               {"name", "max_ticks", "movement_threshold", "rng_seed", "ambient_schedule", "poles", "people"},
               {"name", "max_ticks", "poles", "people"});

  ScenarioSpec spec;
  spec.name = get_string(doc.at("name"), "name");
  spec.max_ticks = static_cast<int>(get_integer(doc.at("max_ticks"), "max_ticks"));
  if (doc.contains("movement_threshold")) {
    spec.movement_threshold = get_real(doc.at("movement_threshold"), "movement_threshold");
  }
  if (doc.contains("rng_seed")) {
    const json& seed = doc.at("rng_seed");
    if (seed.is_number_unsigned()) {
      spec.rng_seed = seed.get<std::uint64_t>();
    } else if (seed.is_number_integer() && seed.get<long long>() >= 0) {
      spec.rng_seed = static_cast<std::uint64_t>(seed.get<long long>());
    } else {
      throw SchemaError("rng_seed", "expected a non-negative 64-bit integer");
    }
  }

  if (doc.contains("ambient_schedule")) {
    const json& sched = get_array(doc.at("ambient_schedule"), "ambient_schedule");
    for (std::size_t i = 0; i < sched.size(); ++i) {
      const std::string path = index_path("ambient_schedule", i);
      require_keys(sched[i], path, {"from_tick", "level"}, {"from_tick", "level"});
      spec.ambient_schedule.push_back(
          AmbientStep{static_cast<int>(get_integer(sched[i].at("from_tick"), join_path(path, "from_tick"))),
                      get_real(sched[i].at("level"), join_path(path, "level"))});
    }
  }

  const json& poles = get_array(doc.at("poles"), "poles");
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const std::string path = index_path("poles", i);
    require_keys(poles[i], path, {"id", "neighbors"}, {"id", "neighbors"});
    PoleSpec pole;
    pole.id = static_cast<int>(get_integer(poles[i].at("id"), join_path(path, "id")));
    const json& nb = get_array(poles[i].at("neighbors"), join_path(path, "neighbors"));
    for (std::size_t j = 0; j < nb.size(); ++j) {
      pole.neighbors.push_back(static_cast<int>(get_integer(nb[j], index_path(join_path(path, "neighbors"), j))));
    }
    spec.poles.push_back(std::move(pole));
  }

  const json& people = get_array(doc.at("people"), "people");
  for (std::size_t i = 0; i < people.size(); ++i) {
    const std::string path = index_path("people", i);
    require_keys(people[i], path, {"id", "origin", "destination", "start_tick"},
                 {"id", "origin", "destination", "start_tick"});
    PersonSpec person;
    person.id = static_cast<int>(get_integer(people[i].at("id"), join_path(path, "id")));
    person.origin = static_cast<int>(get_integer(people[i].at("origin"), join_path(path, "origin")));
    person.destination = static_cast<int>(get_integer(people[i].at("destination"), join_path(path, "destination")));
    person.start_tick = static_cast<int>(get_integer(people[i].at("start_tick"), join_path(path, "start_tick")));
    spec.people.push_back(person);
  }
  return spec;
}

json to_json(const ScenarioSpec& spec) {
  json doc;
  doc["name"] = spec.name;
  doc["max_ticks"] = spec.max_ticks;
  doc["movement_threshold"] = spec.movement_threshold;
  doc["rng_seed"] = spec.rng_seed;
  doc["ambient_schedule"] = json::array();
  for (const auto& step : spec.ambient_schedule) {
    doc["ambient_schedule"].push_back({{"from_tick", step.from_tick}, {"level", step.level}});
  }
  doc["poles"] = json::array();
  for (const auto& pole : spec.poles) {
    doc["poles"].push_back({{"id", pole.id}, {"neighbors", pole.neighbors}});
  }
  doc["people"] = json::array();
  for (const auto& p : spec.people) {
    doc["people"].push_back(
        {{"id", p.id}, {"origin", p.origin}, {"destination", p.destination}, {"start_tick", p.start_tick}});
  }
  return doc;
}

ScenarioSpec make_grid_scenario(std::string name, int side, int max_ticks,
                                std::initializer_list<PersonSpec> people) {
  ScenarioSpec spec;
  spec.name = std::move(name);
  spec.max_ticks = max_ticks;
  spec.poles = grid_poles(side, side);
  spec.people = people;
  spec.ambient_schedule = {AmbientStep{0, 0.0}};
  spec.movement_threshold = 0.5;
  spec.rng_seed = 0;
  return spec;
}

}  // namespace

double ScenarioSpec::ambient_at(int tick) const {
  double level = 0.0;
  for (const auto& step : ambient_schedule) {
    if (step.from_tick > tick) {
      break;
    }
    level = step.level;
  }
  return level;
}

std::optional<std::size_t> ScenarioSpec::pole_index(int id) const {
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (poles[i].id == id) {
      return i;
    }
  }
  return std::nullopt;
}

std::vector<PoleSpec> grid_poles(int rows, int cols) {
  std::vector<PoleSpec> poles;
  poles.reserve(static_cast<std::size_t>(rows * cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      PoleSpec pole;
      pole.id = r * cols + c;
      if (r > 0) pole.neighbors.push_back(pole.id - cols);
      if (c > 0) pole.neighbors.push_back(pole.id - 1);
      if (c + 1 < cols) pole.neighbors.push_back(pole.id + 1);
      if (r + 1 < rows) pole.neighbors.push_back(pole.id + cols);
      poles.push_back(std::move(pole));
    }
  }
  return poles;
}

std::vector<int> shortest_route(const ScenarioSpec& spec, int origin, int destination) {
  const auto from = spec.pole_index(origin);
  const auto to = spec.pole_index(destination);
  if (!from || !to) {
    return {};
  }
  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < spec.poles.size(); ++i) {
    index[spec.poles[i].id] = i;
  }

  // Hop distance of every pole to the destination.
  std::vector<int> dist(spec.poles.size(), -1);
  std::deque<std::size_t> queue{*to};
  dist[*to] = 0;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (int nb : spec.poles[cur].neighbors) {
      const auto it = index.find(nb);
      if (it != index.end() && dist[it->second] < 0) {
        dist[it->second] = dist[cur] + 1;
        queue.push_back(it->second);
      }
    }
  }
  if (dist[*from] < 0) {
    return {};
  }

  std::vector<int> route{origin};
  std::size_t cur = *from;
  while (cur != *to) {
    int best_id = std::numeric_limits<int>::max();
    std::size_t best = cur;
    for (int nb : spec.poles[cur].neighbors) {
      const auto it = index.find(nb);
      if (it != index.end() && dist[it->second] == dist[cur] - 1 && nb < best_id) {
        best_id = nb;
        best = it->second;
      }
    }
    cur = best;
    route.push_back(best_id);
  }
  return route;
}

void validate_scenario(const ScenarioSpec& spec) {
  if (spec.max_ticks < 1) {
    throw ValidationError("max_ticks", "must be a positive integer");
  }
  if (!(spec.movement_threshold >= 0.0 && spec.movement_threshold <= 1.0)) {
    throw ValidationError("movement_threshold", "must lie in [0, 1]");
  }
  for (std::size_t i = 0; i < spec.ambient_schedule.size(); ++i) {
    const auto& step = spec.ambient_schedule[i];
    const std::string path = index_path("ambient_schedule", i);
    if (step.from_tick < 0) {
      throw ValidationError(join_path(path, "from_tick"), "must be non-negative");
    }
    if (i > 0 && step.from_tick <= spec.ambient_schedule[i - 1].from_tick) {
      throw ValidationError(join_path(path, "from_tick"), "schedule must be strictly increasing");
    }
    if (!(step.level >= 0.0 && step.level <= 1.0)) {
      throw ValidationError(join_path(path, "level"), "ambient level must lie in [0, 1]");
    }
  }

  if (spec.poles.empty()) {
    throw ValidationError("poles", "at least one pole is required");
  }
  std::map<int, std::set<int>> adjacency;
  for (std::size_t i = 0; i < spec.poles.size(); ++i) {
    const auto& pole = spec.poles[i];
    if (adjacency.contains(pole.id)) {
      throw ValidationError(join_path(index_path("poles", i), "id"), "duplicate pole id " + std::to_string(pole.id));
    }
    auto& set = adjacency[pole.id];
    for (std::size_t j = 0; j < pole.neighbors.size(); ++j) {
      const int nb = pole.neighbors[j];
      const std::string path = index_path(join_path(index_path("poles", i), "neighbors"), j);
      if (nb == pole.id) {
        throw ValidationError(path, "pole " + std::to_string(pole.id) + " lists itself as a neighbor");
      }
      if (!set.insert(nb).second) {
        throw ValidationError(path, "duplicate neighbor " + std::to_string(nb));
      }
    }
  }
  for (std::size_t i = 0; i < spec.poles.size(); ++i) {
    const auto& pole = spec.poles[i];
    for (std::size_t j = 0; j < pole.neighbors.size(); ++j) {
      const int nb = pole.neighbors[j];
      const std::string path = index_path(join_path(index_path("poles", i), "neighbors"), j);
      const auto it = adjacency.find(nb);
      if (it == adjacency.end()) {
        throw ValidationError(path, "unknown pole id " + std::to_string(nb));
      }
      if (!it->second.contains(pole.id)) {
        throw ValidationError(path, "asymmetric neighbor: " + std::to_string(pole.id) + " -> " + std::to_string(nb) +
                                        " is not reciprocated");
      }
    }
  }

  std::set<int> person_ids;
  for (std::size_t i = 0; i < spec.people.size(); ++i) {
    const auto& p = spec.people[i];
    const std::string path = index_path("people", i);
    const std::string who = "person " + std::to_string(p.id);
    if (!person_ids.insert(p.id).second) {
      throw ValidationError(join_path(path, "id"), "duplicate person id " + std::to_string(p.id));
    }
    if (!adjacency.contains(p.origin)) {
      throw ValidationError(join_path(path, "origin"), who + ": origin " + std::to_string(p.origin) + " is not a pole");
    }
    if (!adjacency.contains(p.destination)) {
      throw ValidationError(join_path(path, "destination"),
                            who + ": destination " + std::to_string(p.destination) + " is not a pole");
    }
    if (p.start_tick < 0 || p.start_tick >= spec.max_ticks) {
      throw ValidationError(join_path(path, "start_tick"), who + ": start_tick must lie in [0, max_ticks)");
    }
    if (shortest_route(spec, p.origin, p.destination).empty()) {
      throw ValidationError(path, who + ": no path from " + std::to_string(p.origin) + " to " +
                                      std::to_string(p.destination));
    }
  }
}

ScenarioSpec load_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  ScenarioSpec spec = from_json(doc);
  validate_scenario(spec);
  return spec;
}

ScenarioSpec load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw SchemaError("", "cannot open scenario file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str());
}

std::string scenario_to_json(const ScenarioSpec& spec) { return to_json(spec).dump(2); }

bool is_builtin_scenario(std::string_view name) { return name == "scenario1" || name == "scenario2"; }

std::string builtin_scenario_document(std::string_view name) {
  if (name == "scenario1") {
    return scenario_to_json(make_grid_scenario("scenario1", 3, 60,
                                               {
                                                   PersonSpec{0, 0, 8, 0},
                                                   PersonSpec{1, 2, 6, 5},
                                                   PersonSpec{2, 8, 0, 10},
                                               }));
  }
  if (name == "scenario2") {
    return scenario_to_json(make_grid_scenario("scenario2", 5, 100,
                                               {
                                                   PersonSpec{0, 0, 24, 0},
                                                   PersonSpec{1, 4, 20, 5},
                                                   PersonSpec{2, 24, 0, 10},
                                                   PersonSpec{3, 20, 4, 15},
                                                   PersonSpec{4, 2, 22, 20},
                                                   PersonSpec{5, 10, 14, 25},
                                               }));
  }
  throw ValidationError("", "unknown built-in scenario '" + std::string(name) + "'");
}

ScenarioSpec builtin_scenario(std::string_view name) { return load_scenario(builtin_scenario_document(name)); }

}  // namespace lumenloop
