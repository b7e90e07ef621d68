/*******************************************************************************
 * Copyright 2026 The tmkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *******************************************************************************/

#include <doctest.h>

#include "support.hpp"

using namespace tmkit;
using namespace tmkit::dynamics;

namespace {

using Events = std::vector<std::string>;

// a -> b -> c, plus d sharing storage s with c, plus a lone process e.
model::StaticModel small_model() {
    return dsl::parse(R"(
        model m {
          thimac t {
            storage s
            create a
            release b
            transfer c
            process d
            process e
            a -> b
            b -> c
            s -> d
            s -> a
          }
        }
    )").model;
}

Event ev(const model::StaticModel &m, std::string id, std::vector<std::string> region) {
    return define_event(m, id, "event " + id, std::move(region));
}

std::string dynamics_error(auto &&fn) {
    try {
        fn();
    } catch (const DynamicsError &e) {
        return e.what();
    }
    FAIL("expected a DynamicsError");
    return {};
}

// E1 -> E2 -> {E3 if go, E4 if not go}; E3 -> E2 bound 2.
ChronologyGraph loop_chronology() {
    model::StaticModel m = small_model();
    std::vector<Event> events {ev(m, "E1", {"t/a"}), ev(m, "E2", {"t/b"}),
            ev(m, "E3", {"t/c"}), ev(m, "E4", {"t/d"})};
    return build_chronology(events,
            {{"E1", "E2", std::nullopt}, {"E2", "E3", Guard {"go", true}},
                    {"E2", "E4", Guard {"go", false}}, {"E3", "E2", std::nullopt}},
            {{"E3", "E2", 2}});
}

Scenario scenario(std::string name, std::map<std::string, std::vector<bool>> d) {
    return Scenario {std::move(name), std::move(d)};
}

} // namespace

TEST_CASE("event regions must be weakly connected") {
    model::StaticModel m = small_model();
    Event e = ev(m, "E1", {"t/c", "t/a", "t/b"});
    CHECK(e.region() == Events {"t/c", "t/a", "t/b"});
    CHECK(e.label() == "event E1");

    SUBCASE("storage adjacency joins its users") {
        CHECK_NOTHROW(ev(m, "E2", {"t/a", "t/d"}));
    }
    SUBCASE("disconnected regions list their components") {
        std::string msg = dynamics_error([&] { ev(m, "E3", {"t/a", "t/e", "t/b"}); });
        CHECK(msg == "region of event 'E3' is not connected: {t/a, t/b} | {t/e}");
    }
    SUBCASE("bad regions") {
        CHECK(dynamics_error([&] { ev(m, "E4", {}); }).find("empty region") != std::string::npos);
        CHECK(dynamics_error([&] { ev(m, "E5", {"t/zz"}); }).find("unknown action 't/zz'")
                != std::string::npos);
        CHECK(dynamics_error([&] { ev(m, "E6", {"t/s"}); }).find("unknown action 't/s'")
                != std::string::npos);
        CHECK(dynamics_error([&] { ev(m, "E7", {"t/a", "t/a"}); }).find("twice")
                != std::string::npos);
    }
}

TEST_CASE("coverage lists uncovered actions in model order") {
    model::StaticModel m = small_model();
    std::vector<Event> events {ev(m, "E1", {"t/b"}), ev(m, "E2", {"t/d"})};
    CHECK(check_coverage(m, events) == Events {"t/a", "t/c", "t/e"});
    for (const char *name : {"atm.tm", "ordering.tm"}) {
        Document doc = testing::load_fixture(name);
        CHECK(check_coverage(doc.model, doc.events).empty());
    }
}

TEST_CASE("the dispenser event spans four actions") {
    Document doc = testing::load_fixture("atm.tm");
    CHECK(doc.events.size() == 32);
    const Event *e31 = doc.chronology->find_event("E31");
    REQUIRE(e31);
    CHECK(e31->region().size() >= 4);
}

TEST_CASE("chronology construction rejects malformed graphs") {
    model::StaticModel m = small_model();
    std::vector<Event> events {ev(m, "E1", {"t/a"}), ev(m, "E2", {"t/b"}), ev(m, "E3", {"t/c"})};
    auto build = [&](std::vector<ChronologyEdge> edges, std::vector<LoopBound> bounds = {}) {
        return dynamics_error([&] { build_chronology(events, edges, bounds); });
    };
    CHECK(build({{"E1", "E2", std::nullopt}, {"E2", "E3", std::nullopt},
                  {"E3", "E2", std::nullopt}})
                    .find("unbounded cycle")
            != std::string::npos);
    std::vector<Event> pair {events[0], events[1]};
    CHECK(dynamics_error([&] {
        build_chronology(pair, {{"E1", "E2", std::nullopt}, {"E2", "E1", std::nullopt}},
                {{"E2", "E1", 1}});
    }).find("no initial event")
            != std::string::npos);
    CHECK(build({{"E1", "E9", std::nullopt}}).find("E9") != std::string::npos);
    CHECK(build({{"E1", "E2", std::nullopt}}, {{"E2", "E1", 1}}).find("loop bound on E2 -> E1")
            != std::string::npos);
    CHECK(build({{"E1", "E2", std::nullopt}, {"E2", "E1", std::nullopt}, {"E3", "E1", std::nullopt}},
                  {{"E2", "E1", 0}})
                    .find("must be positive")
            != std::string::npos);
    std::vector<Event> twice {events[0], events[0]};
    CHECK(dynamics_error([&] { build_chronology(twice, {}, {}); }).find("duplicate event id")
            != std::string::npos);

    ChronologyGraph ok = build_chronology(events,
            {{"E1", "E2", std::nullopt}, {"E2", "E3", std::nullopt}, {"E3", "E2", std::nullopt}},
            {{"E3", "E2", 4}});
    CHECK(ok.initial_events() == Events {"E1"});
    CHECK(ok.bound_of("E3", "E2") == 4);
    CHECK(ok.has_edge("E1", "E2"));
    CHECK_FALSE(ok.has_edge("E2", "E1"));
}

TEST_CASE("simulation prefers a bounded loop while budget remains") {
    ChronologyGraph g = loop_chronology();
    SUBCASE("loop until the budget is spent, then exit") {
        Trace t = simulate(g, scenario("s", {{"go", {true, true, true}}}));
        CHECK(testing::trace_events(t) == Events {"E1", "E2", "E3", "E2", "E3", "E2", "E3"});
        // Third visit to E3: budget 0 and no other edge, so the run ends.
        CHECK(t.steps.back().index == 6);
    }
    SUBCASE("the guard decides when to leave") {
        Trace t = simulate(g, scenario("s", {{"go", {true, false}}}));
        CHECK(testing::trace_events(t) == Events {"E1", "E2", "E3", "E2", "E4"});
    }
    SUBCASE("running out of choices") {
        std::string msg = dynamics_error([&] { simulate(g, scenario("s", {{"go", {true}}})); });
        CHECK(msg == "scenario 's' has no choice left for guard 'go' at step 3 (event E2)");
        CHECK_THROWS_AS(simulate(g, scenario("s", {})), DynamicsError);
    }
}

TEST_CASE("simulation reports ambiguity and dead ends") {
    model::StaticModel m = small_model();
    std::vector<Event> events {ev(m, "E1", {"t/a"}), ev(m, "E2", {"t/b"}), ev(m, "E3", {"t/c"})};
    ChronologyGraph fork = build_chronology(
            events, {{"E1", "E2", std::nullopt}, {"E1", "E3", std::nullopt}}, {});
    CHECK(dynamics_error([&] { simulate(fork, scenario("s", {})); })
            == "ambiguous successors at event E1 (step 0): E2, E3");
    ChronologyGraph same_sense = build_chronology(events,
            {{"E1", "E2", Guard {"x", true}}, {"E1", "E3", Guard {"y", true}}}, {});
    CHECK(dynamics_error([&] {
        simulate(same_sense, scenario("s", {{"x", {false}}, {"y", {false}}}));
    }).find("no enabled successor at event E1")
            != std::string::npos);
}

TEST_CASE("fixture scenarios produce the expected traces") {
    Document atm = testing::load_fixture("atm.tm");
    Trace happy = simulate(*atm.chronology, testing::load_scenario("atm_happy.scn"));
    CHECK(happy.scenario == "atm_happy");
    CHECK(testing::trace_events(happy)
            == Events {"E1", "E3", "E5", "E6", "E7", "E8", "E10", "E11", "E12", "E13", "E14",
                    "E15", "E19", "E20", "E21", "E23", "E25", "E26", "E27", "E28", "E29", "E30",
                    "E31", "E2"});

    Trace wrong = simulate(*atm.chronology, testing::load_scenario("atm_wrong_password.scn"));
    Events w = testing::trace_events(wrong);
    CHECK(std::count(w.begin(), w.end(), "E13") == 4);
    CHECK(std::count(w.begin(), w.end(), "E18") == 4);
    CHECK(w.back() == "E17");
    CHECK(std::find(w.begin(), w.end(), "E19") == w.end());

    Document ordering = testing::load_fixture("ordering.tm");
    Trace yes = simulate(*ordering.chronology, testing::load_scenario("ordering_all_yes.scn"));
    CHECK(testing::trace_events(yes)
            == Events {"E1", "E2", "E4", "E5", "E8", "E9", "E10", "E11", "E12", "E13", "E15",
                    "E16"});
    Trace invalid = simulate(*ordering.chronology, testing::load_scenario("ordering_invalid.scn"));
    CHECK(testing::trace_events(invalid) == Events {"E1", "E2", "E3"});

    for (const Trace *t : {&happy, &wrong}) {
        CHECK(conformance(*t, *atm.chronology).conforms);
        CHECK(simulate(*atm.chronology, testing::load_scenario(t->scenario + ".scn")) == *t);
    }
    for (const Trace *t : {&yes, &invalid})
        CHECK(conformance(*t, *ordering.chronology).conforms);
}

TEST_CASE("conformance finds the first violation") {
    ChronologyGraph g = loop_chronology();
    auto trace = [](Events ids) {
        Trace t {"x", {}};
        for (std::size_t i = 0; i < ids.size(); ++i)
            t.steps.push_back({ids[i], i});
        return t;
    };
    CHECK(conformance(trace({"E1", "E2", "E4"}), g).conforms);
    CHECK(conformance(trace({}), g).conforms);

    ConformanceResult skip = conformance(trace({"E1", "E3"}), g);
    CHECK_FALSE(skip.conforms);
    CHECK(skip.first_violation == Violation {1, "no chronology edge E1 -> E3"});

    ConformanceResult unknown = conformance(trace({"E1", "E7"}), g);
    CHECK(unknown.first_violation->message == "unknown event 'E7'");

    ConformanceResult over = conformance(
            trace({"E1", "E2", "E3", "E2", "E3", "E2", "E3", "E2", "E4"}), g);
    REQUIRE(over.first_violation);
    CHECK(over.first_violation->step == 7);
    CHECK(over.first_violation->message.find("loop bound 2") != std::string::npos);

    Trace renumbered = trace({"E1", "E2"});
    renumbered.steps[1].index = 0;
    CHECK(conformance(renumbered, g).first_violation->step == 1);
}

TEST_CASE("random chronologies: simulated traces conform and respect the length bound") {
    std::mt19937 rng(404);
    int simulated = 0;
    for (int i = 0; i < 300; ++i) {
        Document doc = testing::random_document(rng, i);
        if (!doc.chronology) continue;
        std::set<std::string> labels;
        for (const ChronologyEdge &e : doc.chronology->edges())
            if (e.guard) labels.insert(e.guard->label);
        Scenario s {"random", {}};
        std::bernoulli_distribution coin(0.5);
        std::size_t bound = trace_length_bound(*doc.chronology);
        for (const std::string &l : labels)
            for (std::size_t k = 0; k < bound; ++k)
                s.decisions[l].push_back(coin(rng));
        Trace t;
        try {
            t = simulate(*doc.chronology, s);
        } catch (const DynamicsError &) {
            continue; // all guards false at some fork
        }
        ++simulated;
        CHECK(t.steps.size() <= bound);
        CHECK(conformance(t, *doc.chronology).conforms);
        CHECK(simulate(*doc.chronology, s) == t);
    }
    CHECK(simulated > 50);
}

TEST_CASE("trace JSON round-trips and rejects malformed input") {
    Document atm = testing::load_fixture("atm.tm");
    Trace t = simulate(*atm.chronology, testing::load_scenario("atm_happy.scn"));
    std::string json = trace_to_json(t);
    CHECK(trace_from_json(json) == t);
    CHECK(trace_to_json(trace_from_json(json)) == json);
    CHECK_THROWS_AS(trace_from_json("[]"), FormatError);
    CHECK_THROWS_AS(trace_from_json("{\"scenario\":\"x\",\"steps\":[{\"index\":-1,\"event\":\"E1\"}]}"),
            FormatError);
    CHECK_THROWS_AS(trace_from_json("{"), FormatError);

    std::string listing = format_trace(t, *atm.chronology);
    CHECK(listing.find("(24 steps)") != std::string::npos);
    CHECK(listing.find("  0  E1  A card is inserted in the ATM\n") != std::string::npos);
}

TEST_CASE("scenario files") {
    Scenario s = parse_scenario("# c\n a b = T, F ,T \n\nz=F # tail\n", "n");
    CHECK(s.name == "n");
    CHECK(s.decisions.at("a b") == std::vector<bool> {true, false, true});
    CHECK(s.decisions.at("z") == std::vector<bool> {false});
    CHECK(parse_scenario(format_scenario(s), "n") == s);
    CHECK_THROWS_WITH_AS(parse_scenario("x = T\ny = maybe\n", "n"),
            "scenario line 2: expected T or F, found 'maybe'", FormatError);
    CHECK_THROWS_AS(parse_scenario("x\n", "n"), FormatError);
    CHECK_THROWS_AS(parse_scenario("= T\n", "n"), FormatError);
    CHECK_THROWS_AS(parse_scenario("x = T\nx = F\n", "n"), FormatError);
}
