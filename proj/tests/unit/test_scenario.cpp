#include <string>

#include "doctest.h"
#include "json.hpp"
#include "lumenloop/error.hpp"
#include "lumenloop/scenario.hpp"

using namespace lumenloop;
using nlohmann::json;

namespace {

json line_doc() {
  return json{{"name", "line"},
              {"max_ticks", 10},
              {"movement_threshold", 0.5},
              {"rng_seed", 3},
              {"ambient_schedule", json::array({{{"from_tick", 0}, {"level", 0.0}}})},
              {"poles", json::array({{{"id", 0}, {"neighbors", {1}}}, {{"id", 1}, {"neighbors", {0, 2}}},
                                     {{"id", 2}, {"neighbors", {1}}}})},
              {"people", json::array({{{"id", 0}, {"origin", 0}, {"destination", 2}, {"start_tick", 0}}})}};
}

template <typename E>
std::string error_of(const json& doc) {
  try {
    load_scenario(doc.dump());
  } catch (const E& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("built-in scenario1 is a 3x3 grid with three walkers") {
  const ScenarioSpec s = builtin_scenario("scenario1");
  CHECK(s.poles.size() == 9);
  CHECK(s.people.size() == 3);
  CHECK(s.max_ticks == 60);
  CHECK(s.movement_threshold == 0.5);
  CHECK(s.ambient_at(0) == 0.0);
  CHECK(s.ambient_at(59) == 0.0);
  // Centre pole touches its four rook neighbours.
  CHECK(s.poles[4].neighbors == std::vector<int>{1, 3, 5, 7});
  CHECK(s.poles[0].neighbors == std::vector<int>{1, 3});
  std::vector<int> starts;
  for (const auto& p : s.people) {
    starts.push_back(p.start_tick);
  }
  CHECK(starts == std::vector<int>{0, 5, 10});
}

TEST_CASE("built-in scenario2 is a 5x5 grid with six walkers") {
  const ScenarioSpec s = builtin_scenario("scenario2");
  CHECK(s.poles.size() == 25);
  CHECK(s.people.size() == 6);
  CHECK(s.max_ticks == 100);
}

TEST_CASE("scenario documents round-trip through the serializer") {
  for (const char* name : {"scenario1", "scenario2"}) {
    const ScenarioSpec s = builtin_scenario(name);
    CHECK(load_scenario(scenario_to_json(s)) == s);
  }
  const ScenarioSpec line = load_scenario(line_doc().dump());
  CHECK(line.rng_seed == 3);
  CHECK(load_scenario(scenario_to_json(line)) == line);
}

TEST_CASE("unknown built-in name is rejected") {
  CHECK_FALSE(is_builtin_scenario("scenario3"));
  CHECK_THROWS_AS(builtin_scenario("scenario3"), ValidationError);
}

TEST_CASE("destination that is not a pole names the person") {
  json doc = line_doc();
  doc["people"][0]["id"] = 7;
  doc["people"][0]["destination"] = 42;
  const std::string msg = error_of<ValidationError>(doc);
  CHECK(msg.find("person 7") != std::string::npos);
  CHECK(msg.find("42") != std::string::npos);
  try {
    load_scenario(doc.dump());
  } catch (const ValidationError& e) {
    CHECK(e.path() == "people[0].destination");
  }
}

TEST_CASE("one-way neighbour edge is an asymmetric neighbour") {
  json doc = line_doc();
  doc["poles"][2]["neighbors"] = json::array();
  CHECK(error_of<ValidationError>(doc).find("asymmetric neighbor") != std::string::npos);
}

TEST_CASE("schema violations") {
  SUBCASE("unknown top-level key") {
    json doc = line_doc();
    doc["colour"] = "blue";
    CHECK(error_of<SchemaError>(doc).find("unknown key") != std::string::npos);
  }
  SUBCASE("unknown nested key") {
    json doc = line_doc();
    doc["poles"][0]["height"] = 4;
    CHECK(error_of<SchemaError>(doc).find("poles[0].height") != std::string::npos);
  }
  SUBCASE("missing required key") {
    json doc = line_doc();
    doc.erase("people");
    CHECK(error_of<SchemaError>(doc).find("missing required key") != std::string::npos);
  }
  SUBCASE("wrong type") {
    json doc = line_doc();
    doc["max_ticks"] = "ten";
    CHECK(error_of<SchemaError>(doc).find("expected an integer") != std::string::npos);
  }
  SUBCASE("not JSON") { CHECK_THROWS_AS(load_scenario("{oops"), SchemaError); }
  SUBCASE("negative seed") {
    json doc = line_doc();
    doc["rng_seed"] = -1;
    CHECK_THROWS_AS(load_scenario(doc.dump()), SchemaError);
  }
}

TEST_CASE("invariant violations") {
  SUBCASE("self loop") {
    json doc = line_doc();
    doc["poles"][0]["neighbors"] = {0, 1};
    CHECK(error_of<ValidationError>(doc).find("lists itself") != std::string::npos);
  }
  SUBCASE("duplicate pole id") {
    json doc = line_doc();
    doc["poles"][2]["id"] = 1;
    CHECK(error_of<ValidationError>(doc).find("duplicate") != std::string::npos);
  }
  SUBCASE("start tick at the budget") {
    json doc = line_doc();
    doc["people"][0]["start_tick"] = 10;
    CHECK(error_of<ValidationError>(doc).find("start_tick") != std::string::npos);
  }
  SUBCASE("ambient above one") {
    json doc = line_doc();
    doc["ambient_schedule"][0]["level"] = 1.5;
    CHECK(error_of<ValidationError>(doc).find("ambient level") != std::string::npos);
  }
  SUBCASE("schedule not increasing") {
    json doc = line_doc();
    doc["ambient_schedule"] = json::array({{{"from_tick", 3}, {"level", 0.1}}, {{"from_tick", 3}, {"level", 0.2}}});
    CHECK(error_of<ValidationError>(doc).find("strictly increasing") != std::string::npos);
  }
  SUBCASE("threshold outside [0, 1]") {
    json doc = line_doc();
    doc["movement_threshold"] = 1.2;
    CHECK_THROWS_AS(load_scenario(doc.dump()), ValidationError);
  }
  SUBCASE("zero tick budget") {
    json doc = line_doc();
    doc["max_ticks"] = 0;
    CHECK_THROWS_AS(load_scenario(doc.dump()), ValidationError);
  }
  SUBCASE("unreachable destination") {
    json doc = line_doc();
    doc["poles"] = json::array({{{"id", 0}, {"neighbors", {1}}}, {{"id", 1}, {"neighbors", {0}}},
                                {{"id", 2}, {"neighbors", json::array()}}});
    CHECK(error_of<ValidationError>(doc).find("no path from 0 to 2") != std::string::npos);
  }
}

TEST_CASE("ambient schedule is piecewise constant") {
  json doc = line_doc();
  doc["ambient_schedule"] = json::array({{{"from_tick", 2}, {"level", 0.25}}, {{"from_tick", 5}, {"level", 0.75}}});
  const ScenarioSpec s = load_scenario(doc.dump());
  CHECK(s.ambient_at(0) == 0.0);
  CHECK(s.ambient_at(1) == 0.0);
  CHECK(s.ambient_at(2) == 0.25);
  CHECK(s.ambient_at(4) == 0.25);
  CHECK(s.ambient_at(5) == 0.75);
  CHECK(s.ambient_at(9) == 0.75);
}

TEST_CASE("shortest routes take the lowest-id neighbour on ties") {
  const ScenarioSpec s = builtin_scenario("scenario1");
  // 0 -> 8 on a 3x3 grid: from 0 both 1 and 3 are one hop closer, 1 wins.
  CHECK(shortest_route(s, 0, 8) == std::vector<int>{0, 1, 2, 5, 8});
  CHECK(shortest_route(s, 8, 0) == std::vector<int>{8, 5, 2, 1, 0});
  CHECK(shortest_route(s, 2, 6) == std::vector<int>{2, 1, 0, 3, 6});
  CHECK(shortest_route(s, 4, 4) == std::vector<int>{4});
}

TEST_CASE("grid_poles builds rook adjacency") {
  const auto poles = grid_poles(2, 3);
  REQUIRE(poles.size() == 6);
  CHECK(poles[0].neighbors == std::vector<int>{1, 3});
  CHECK(poles[4].neighbors == std::vector<int>{1, 3, 5});
  CHECK(poles[5].neighbors == std::vector<int>{2, 4});
}
