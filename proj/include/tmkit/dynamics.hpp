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

#ifndef TMKIT_DYNAMICS_HPP
#define TMKIT_DYNAMICS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tmkit/model.hpp"

namespace tmkit::dynamics {

/// A region of the static model realized in time. Only define_event()
/// produces events, so a held Event always has a nonempty, weakly connected
/// region.
class Event {
public:
    const std::string &id() const { return id_; }
    const std::string &label() const { return label_; }
    /// Action ids in the order they were given.
    const std::vector<std::string> &region() const { return region_; }

    bool operator==(const Event &) const = default;

private:
    friend Event define_event(const model::StaticModel &, std::string, std::string,
            std::vector<std::string>);
    std::string id_;
    std::string label_;
    std::vector<std::string> region_;
};

/// Builds an event after checking that every region id names an action and
/// that the region is weakly connected. Connectivity uses flows and triggers
/// between region actions; two region actions that touch the same storage
/// are also considered adjacent. Throws DynamicsError listing the components
/// when the region falls apart.
Event define_event(const model::StaticModel &model, std::string id, std::string label,
        std::vector<std::string> region);

/// Actions of the model that no event covers, in model order.
std::vector<std::string> check_coverage(
        const model::StaticModel &model, std::span<const Event> events);

/// Branch condition on a chronology edge: the edge is enabled when the
/// scenario's next choice for `label` equals `when`.
struct Guard {
    std::string label;
    bool when = true;
    bool operator==(const Guard &) const = default;
};

struct ChronologyEdge {
    std::string from;
    std::string to;
    std::optional<Guard> guard;
    bool operator==(const ChronologyEdge &) const = default;
};

/// Iteration budget attached to one edge (normally a back-edge).
struct LoopBound {
    std::string from;
    std::string to;
    int max_iterations = 0;
    bool operator==(const LoopBound &) const = default;
};

class ChronologyGraph {
public:
    const std::vector<Event> &events() const { return events_; }
    const std::vector<ChronologyEdge> &edges() const { return edges_; }
    const std::vector<LoopBound> &loop_bounds() const { return bounds_; }

    const Event *find_event(std::string_view id) const;
    /// Events with no incoming edge, sorted by id.
    std::vector<std::string> initial_events() const;
    /// Bound registered for the edge, if any.
    std::optional<int> bound_of(std::string_view from, std::string_view to) const;
    bool has_edge(std::string_view from, std::string_view to) const;

    bool operator==(const ChronologyGraph &) const = default;

private:
    friend ChronologyGraph build_chronology(
            std::vector<Event>, std::vector<ChronologyEdge>, std::vector<LoopBound>);
    std::vector<Event> events_;
    std::vector<ChronologyEdge> edges_;
    std::vector<LoopBound> bounds_;
};

/// Accepts the graph only if edge endpoints are known events, every bound
/// names an existing edge with a positive budget, every cycle passes through
/// a bounded edge and at least one initial event exists.
ChronologyGraph build_chronology(std::vector<Event> events, std::vector<ChronologyEdge> edges,
        std::vector<LoopBound> loop_bounds);

struct Scenario {
    std::string name;
    /// Guard label -> choices consumed in order, one per consultation.
    std::map<std::string, std::vector<bool>> decisions;
    bool operator==(const Scenario &) const = default;
};

/// Reads `guard = T|F[,T|F...]` lines; `#` starts a comment.
Scenario parse_scenario(std::string_view text, std::string name);
std::string format_scenario(const Scenario &scenario);

struct TraceStep {
    std::string event;
    std::size_t index = 0;
    bool operator==(const TraceStep &) const = default;
};

struct Trace {
    std::string scenario;
    std::vector<TraceStep> steps;
    bool operator==(const Trace &) const = default;
};

/// Deterministic walk from the least initial event. At every event each
/// distinct guard label on the outgoing edges consumes one recorded choice.
/// A bounded edge that is enabled and still has budget is preferred and
/// spends one unit; a bounded edge at zero budget is disabled, so the walk
/// takes the non-loop alternative. The run ends at an event without
/// outgoing edges or whose only enabled edges are exhausted loops.
/// Throws DynamicsError when a guard's choices run out, when guards leave no
/// enabled successor, or when more than one unbounded successor is enabled.
Trace simulate(const ChronologyGraph &chronology, const Scenario &scenario);

struct Violation {
    std::size_t step = 0;
    std::string message;
    bool operator==(const Violation &) const = default;
};

struct ConformanceResult {
    bool conforms = true;
    std::optional<Violation> first_violation;
};

/// Checks step numbering, event ids, that consecutive steps follow edges and
/// that no bounded edge is traversed more often than its budget.
ConformanceResult conformance(const Trace &trace, const ChronologyGraph &chronology);

/// Upper bound on simulate() output length: with bounded edges removed the
/// graph is acyclic, so each of the (1 + total budget) loop-free segments
/// visits every event at most once.
std::size_t trace_length_bound(const ChronologyGraph &chronology);

std::string trace_to_json(const Trace &trace);
Trace trace_from_json(std::string_view text);
/// "0  E1  A card is inserted in the ATM" style listing.
std::string format_trace(const Trace &trace, const ChronologyGraph &chronology);

} // namespace tmkit::dynamics

#endif // TMKIT_DYNAMICS_HPP
