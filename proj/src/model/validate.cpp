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
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "tmkit/model.hpp"

namespace tmkit::model {

std::string_view to_string(Severity severity) {
    return severity == Severity::error ? "error" : "warning";
}

std::string to_string(Rule rule) {
    return "R" + std::to_string(static_cast<int>(rule));
}

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::create: return "create";
        case NodeKind::process: return "process";
        case NodeKind::release: return "release";
        case NodeKind::transfer: return "transfer";
        case NodeKind::receive: return "receive";
        case NodeKind::storage: return "storage";
    }
    return "?";
}

void FlowLegality::allow(NodeKind from, NodeKind to) {
    table_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)] = true;
}

bool FlowLegality::allows(NodeKind from, NodeKind to) const {
    return table_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
}

const FlowLegality &FlowLegality::standard() {
    static const FlowLegality table = [] {
        FlowLegality t;
        t.allow(NodeKind::create, NodeKind::process);
        t.allow(NodeKind::create, NodeKind::release);
        t.allow(NodeKind::receive, NodeKind::process);
        t.allow(NodeKind::receive, NodeKind::release);
        t.allow(NodeKind::process, NodeKind::release);
        t.allow(NodeKind::release, NodeKind::transfer);
        t.allow(NodeKind::transfer, NodeKind::receive);
        for (NodeKind k : {NodeKind::create, NodeKind::process, NodeKind::receive,
                     NodeKind::release}) {
            t.allow(k, NodeKind::storage);
            t.allow(NodeKind::storage, k);
        }
        return t;
    }();
    return table;
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
            [](const Diagnostic &d) { return d.severity == Severity::error; });
}

namespace {

NodeKind node_kind(ActionKind kind) {
    return static_cast<NodeKind>(static_cast<std::uint8_t>(kind));
}

class Validator {
public:
    Validator(const StaticModel &m, const FlowLegality &legality)
        : m_(m), legality_(legality) {}

    std::vector<Diagnostic> run() {
        check_containment();
        check_references();
        check_self_loops();
        check_flow_kinds();
        check_receives();
        check_trigger_sources();
        check_reachability();
        std::stable_sort(out_.begin(), out_.end(),
                [](const Diagnostic &a, const Diagnostic &b) { return a.rule < b.rule; });
        return std::move(out_);
    }

private:
    void report(Severity sev, Rule rule, const std::string &subject, std::string message) {
        out_.push_back(Diagnostic {sev, rule, subject, std::move(message)});
    }

    std::optional<NodeKind> endpoint_kind(const std::string &id) const {
        if (const Action *a = m_.find_action(id)) return node_kind(a->kind);
        if (m_.find_storage(id)) return NodeKind::storage;
        return std::nullopt;
    }

    // R5: each parent chain either ends at a root, at a dangling parent
    // (reported by R6) or runs into a cycle, which is reported once.
    void check_containment() {
        std::set<std::string> reported;
        for (const Thimac &start : m_.thimacs()) {
            std::vector<std::string> chain;
            std::unordered_set<std::string> seen;
            const Thimac *cur = &start;
            while (cur && cur->parent) {
                if (!seen.insert(cur->id).second) break;
                chain.push_back(cur->id);
                cur = m_.find_thimac(*cur->parent);
            }
            if (!cur || !cur->parent || !seen.count(cur->id)) continue;
            auto first = std::find(chain.begin(), chain.end(), cur->id);
            std::vector<std::string> cycle(first, chain.end());
            std::string least = *std::min_element(cycle.begin(), cycle.end());
            if (!reported.insert(least).second) continue;
            std::string path;
            for (const std::string &id : cycle)
                path += id + " -> ";
            path += cycle.front();
            report(Severity::error, Rule::R5, least, "containment cycle: " + path);
        }
    }

    // R6: every reference must resolve. The rule covers owners of actions
    // and storages, thimac parents and edge endpoints.
    void check_references() {
        for (const Thimac &t : m_.thimacs())
            if (t.parent && !m_.find_thimac(*t.parent))
                report(Severity::error, Rule::R6, t.id,
                        "thimac '" + t.id + "' has nonexistent parent '" + *t.parent + "'");
        for (const Action &a : m_.actions())
            if (!m_.find_thimac(a.owner))
                report(Severity::error, Rule::R6, a.id,
                        "action '" + a.id + "' is owned by nonexistent thimac '" + a.owner + "'");
        for (const Storage &s : m_.storages())
            if (!m_.find_thimac(s.owner))
                report(Severity::error, Rule::R6, s.id,
                        "storage '" + s.id + "' is owned by nonexistent thimac '" + s.owner
                                + "'");
        for (const Flow &f : m_.flows())
            for (const std::string *end : {&f.from, &f.to})
                if (!endpoint_kind(*end))
                    report(Severity::error, Rule::R6, f.id,
                            "flow '" + f.id + "' references nonexistent action or storage '"
                                    + *end + "'");
        for (const Trigger &t : m_.triggers())
            for (const std::string *end : {&t.from, &t.to})
                if (!m_.find_action(*end))
                    report(Severity::error, Rule::R6, t.id,
                            "trigger '" + t.id + "' references nonexistent action '" + *end
                                    + "'");
    }

    void check_self_loops() {
        for (const Flow &f : m_.flows())
            if (f.from == f.to)
                report(Severity::error, Rule::R7, f.id, "flow '" + f.id + "' is a self-loop");
        for (const Trigger &t : m_.triggers())
            if (t.from == t.to)
                report(Severity::error, Rule::R7, t.id,
                        "trigger '" + t.id + "' is a self-loop");
    }

    void check_flow_kinds() {
        for (const Flow &f : m_.flows()) {
            auto from = endpoint_kind(f.from);
            auto to = endpoint_kind(f.to);
            if (!from || !to || f.from == f.to) continue;
            std::string pair = std::string(to_string(*from)) + "->" + std::string(to_string(*to));
            if (*m_.owner_of(f.from) == *m_.owner_of(f.to)) {
                if (!legality_.allows(*from, *to))
                    report(Severity::error, Rule::R1, f.id,
                            "flow '" + f.id + "' (" + pair
                                    + ") is not a legal sequence inside thimac '"
                                    + *m_.owner_of(f.from) + "'");
            } else if (*from != NodeKind::transfer || *to != NodeKind::transfer) {
                report(Severity::error, Rule::R2, f.id,
                        "flow '" + f.id + "' (" + pair
                                + ") crosses a thimac boundary but is not transfer->transfer");
            }
        }
    }

    void check_receives() {
        std::unordered_set<std::string> fed;
        for (const Flow &f : m_.flows()) {
            const Action *src = m_.find_action(f.from);
            if (src && src->kind == ActionKind::transfer) fed.insert(f.to);
        }
        for (const Action &a : m_.actions())
            if (a.kind == ActionKind::receive && !fed.count(a.id))
                report(Severity::warning, Rule::R3, a.id,
                        "receive '" + a.id + "' has no incoming flow from a transfer");
    }

    void check_trigger_sources() {
        for (const Trigger &t : m_.triggers()) {
            const Action *src = m_.find_action(t.from);
            if (src && src->kind != ActionKind::process && src->kind != ActionKind::create)
                report(Severity::warning, Rule::R4, t.id,
                        "trigger '" + t.id + "' originates from a " + std::string(to_string(src->kind))
                                + " action rather than process or create");
        }
    }

    void check_reachability() {
        std::unordered_map<std::string, std::vector<std::string>> next;
        for (const Flow &f : m_.flows())
            next[f.from].push_back(f.to);
        for (const Trigger &t : m_.triggers())
            next[t.from].push_back(t.to);
        std::unordered_set<std::string> seen;
        std::deque<std::string> queue;
        for (const Action &a : m_.actions())
            if (a.kind == ActionKind::create || a.kind == ActionKind::receive)
                if (seen.insert(a.id).second) queue.push_back(a.id);
        while (!queue.empty()) {
            std::string cur = std::move(queue.front());
            queue.pop_front();
            auto it = next.find(cur);
            if (it == next.end()) continue;
            for (const std::string &n : it->second)
                if (seen.insert(n).second) queue.push_back(n);
        }
        for (const Action &a : m_.actions())
            if (!seen.count(a.id))
                report(Severity::warning, Rule::R8, a.id,
                        "action '" + a.id + "' is unreachable from every create or receive");
    }

    const StaticModel &m_;
    const FlowLegality &legality_;
    std::vector<Diagnostic> out_;
};

} // namespace

std::vector<Diagnostic> validate(const StaticModel &model, const FlowLegality &legality) {
    return Validator(model, legality).run();
}

} // namespace tmkit::model
