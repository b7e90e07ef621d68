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

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "tmkit/dynamics.hpp"

namespace tmkit::dynamics {

const Event *ChronologyGraph::find_event(std::string_view id) const {
    for (const Event &e : events_)
        if (e.id() == id) return &e;
    return nullptr;
}

std::vector<std::string> ChronologyGraph::initial_events() const {
    std::set<std::string> targets;
    for (const ChronologyEdge &e : edges_)
        targets.insert(e.to);
    std::vector<std::string> initial;
    for (const Event &e : events_)
        if (!targets.count(e.id())) initial.push_back(e.id());
    std::sort(initial.begin(), initial.end());
    return initial;
}

std::optional<int> ChronologyGraph::bound_of(std::string_view from, std::string_view to) const {
    for (const LoopBound &b : bounds_)
        if (b.from == from && b.to == to) return b.max_iterations;
    return std::nullopt;
}

bool ChronologyGraph::has_edge(std::string_view from, std::string_view to) const {
    return std::any_of(edges_.begin(), edges_.end(),
            [&](const ChronologyEdge &e) { return e.from == from && e.to == to; });
}

namespace {

// Finds a cycle that avoids every bounded edge, if one exists.
std::optional<std::vector<std::string>> find_unbounded_cycle(const ChronologyGraph &g) {
    std::map<std::string, std::vector<std::string>> next;
    for (const ChronologyEdge &e : g.edges())
        if (!g.bound_of(e.from, e.to)) next[e.from].push_back(e.to);

    enum class Mark { unvisited, active, done };
    std::map<std::string, Mark> mark;
    std::vector<std::string> stack;

    struct Frame {
        std::string node;
        std::size_t next_child;
    };
    for (const Event &root : g.events()) {
        if (mark[root.id()] != Mark::unvisited) continue;
        std::vector<Frame> frames {{root.id(), 0}};
        mark[root.id()] = Mark::active;
        stack.push_back(root.id());
        while (!frames.empty()) {
            Frame &top = frames.back();
            const auto &children = next[top.node];
            if (top.next_child == children.size()) {
                mark[top.node] = Mark::done;
                stack.pop_back();
                frames.pop_back();
                continue;
            }
            const std::string child = children[top.next_child++];
            if (mark[child] == Mark::active) {
                auto first = std::find(stack.begin(), stack.end(), child);
                std::vector<std::string> cycle(first, stack.end());
                cycle.push_back(child);
                return cycle;
            }
            if (mark[child] == Mark::unvisited) {
                mark[child] = Mark::active;
                stack.push_back(child);
                frames.push_back({child, 0});
            }
        }
    }
    return std::nullopt;
}

std::string join_path(const std::vector<std::string> &ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i)
        out += (i ? " -> " : "") + ids[i];
    return out;
}

} // namespace

ChronologyGraph build_chronology(std::vector<Event> events, std::vector<ChronologyEdge> edges,
        std::vector<LoopBound> loop_bounds) {
    ChronologyGraph g;
    std::set<std::string> ids;
    for (const Event &e : events)
        if (!ids.insert(e.id()).second)
            throw DynamicsError("duplicate event id '" + e.id() + "'");
    for (const ChronologyEdge &e : edges) {
        for (const std::string *end : {&e.from, &e.to})
            if (!ids.count(*end))
                throw DynamicsError("chronology edge " + e.from + " -> " + e.to
                        + " references unknown event '" + *end + "'");
    }
    std::set<std::pair<std::string, std::string>> bounded;
    for (const LoopBound &b : loop_bounds) {
        bool exists = std::any_of(edges.begin(), edges.end(),
                [&](const ChronologyEdge &e) { return e.from == b.from && e.to == b.to; });
        if (!exists)
            throw DynamicsError("loop bound on " + b.from + " -> " + b.to
                    + " does not name a chronology edge");
        if (b.max_iterations < 1)
            throw DynamicsError("loop bound on " + b.from + " -> " + b.to + " must be positive");
        if (!bounded.emplace(b.from, b.to).second)
            throw DynamicsError("loop bound on " + b.from + " -> " + b.to + " given twice");
    }
    g.events_ = std::move(events);
    g.edges_ = std::move(edges);
    g.bounds_ = std::move(loop_bounds);

    if (auto cycle = find_unbounded_cycle(g))
        throw DynamicsError("unbounded cycle " + join_path(*cycle)
                + " (add a loop bound to one of its edges)");
    if (g.initial_events().empty())
        throw DynamicsError("chronology has no initial event (every event has a predecessor)");
    return g;
}

Trace simulate(const ChronologyGraph &chronology, const Scenario &scenario) {
    std::map<std::pair<std::string, std::string>, int> budget;
    for (const LoopBound &b : chronology.loop_bounds())
        budget[{b.from, b.to}] = b.max_iterations;
    std::map<std::string, std::size_t> consumed;

    Trace trace {scenario.name, {}};
    std::string current = chronology.initial_events().front();
    while (true) {
        const std::size_t step = trace.steps.size();
        trace.steps.push_back(TraceStep {current, step});

        std::vector<const ChronologyEdge *> outgoing;
        for (const ChronologyEdge &e : chronology.edges())
            if (e.from == current) outgoing.push_back(&e);
        if (outgoing.empty()) break;

        std::map<std::string, bool> choice;
        for (const ChronologyEdge *e : outgoing) {
            if (!e->guard || choice.count(e->guard->label)) continue;
            const std::string &label = e->guard->label;
            auto it = scenario.decisions.find(label);
            std::size_t &pos = consumed[label];
            if (it == scenario.decisions.end() || pos >= it->second.size())
                throw DynamicsError("scenario '" + scenario.name + "' has no choice left for guard '"
                        + label + "' at step " + std::to_string(step) + " (event " + current
                        + ")");
            choice[label] = it->second[pos++];
        }

        std::vector<const ChronologyEdge *> enabled;
        for (const ChronologyEdge *e : outgoing)
            if (!e->guard || choice.at(e->guard->label) == e->guard->when) enabled.push_back(e);
        if (enabled.empty())
            throw DynamicsError("no enabled successor at event " + current + " (step "
                    + std::to_string(step) + "): every guard evaluated false");

        const ChronologyEdge *taken = nullptr;
        std::vector<const ChronologyEdge *> unbounded;
        for (const ChronologyEdge *e : enabled) {
            auto b = budget.find({e->from, e->to});
            if (b == budget.end())
                unbounded.push_back(e);
            else if (b->second > 0 && !taken)
                taken = e;
        }
        if (taken) {
            --budget[{taken->from, taken->to}];
        } else if (unbounded.size() == 1) {
            taken = unbounded.front();
        } else if (unbounded.empty()) {
            break; // only exhausted loops remain
        } else {
            std::string targets;
            for (const ChronologyEdge *e : unbounded)
                targets += (targets.empty() ? "" : ", ") + e->to;
            throw DynamicsError("ambiguous successors at event " + current + " (step "
                    + std::to_string(step) + "): " + targets);
        }
        current = taken->to;
    }
    return trace;
}

ConformanceResult conformance(const Trace &trace, const ChronologyGraph &chronology) {
    auto fail = [](std::size_t step, std::string message) {
        return ConformanceResult {false, Violation {step, std::move(message)}};
    };
    std::map<std::pair<std::string, std::string>, int> used;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const TraceStep &s = trace.steps[i];
        if ((i == 0 && s.index != 0) || (i > 0 && s.index <= trace.steps[i - 1].index))
            return fail(i, "step index " + std::to_string(s.index) + " breaks the 0,1,2,... order");
        if (!chronology.find_event(s.event)) return fail(i, "unknown event '" + s.event + "'");
        if (i == 0) continue;
        const std::string &prev = trace.steps[i - 1].event;
        if (!chronology.has_edge(prev, s.event))
            return fail(i, "no chronology edge " + prev + " -> " + s.event);
        if (auto bound = chronology.bound_of(prev, s.event)) {
            int count = ++used[{prev, s.event}];
            if (count > *bound)
                return fail(i, "loop " + prev + " -> " + s.event + " traversed "
                        + std::to_string(count) + " times, exceeding loop bound "
                        + std::to_string(*bound));
        }
    }
    return {};
}

std::size_t trace_length_bound(const ChronologyGraph &chronology) {
    std::size_t budget = 0;
    for (const LoopBound &b : chronology.loop_bounds())
        budget += static_cast<std::size_t>(b.max_iterations);
    return chronology.events().size() * (1 + budget);
}

} // namespace tmkit::dynamics
