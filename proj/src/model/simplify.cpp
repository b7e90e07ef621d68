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
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "tmkit/model.hpp"

namespace tmkit::model {

bool is_removed_by_simplify(ActionKind kind) {
    return kind == ActionKind::release || kind == ActionKind::transfer
            || kind == ActionKind::receive;
}

namespace {

class Simplifier {
public:
    explicit Simplifier(const StaticModel &m) : m_(m) {
        for (const Flow &f : m_.flows()) {
            out_[f.from].push_back(&f);
            in_[f.to].push_back(&f);
        }
    }

    StaticModel run() {
        std::vector<Action> actions;
        for (const Action &a : m_.actions())
            if (!is_removed_by_simplify(a.kind)) actions.push_back(a);

        std::set<std::pair<std::string, std::string>> direct;
        for (const Flow &f : m_.flows())
            if (survives(f.from) && survives(f.to)) direct.emplace(f.from, f.to);

        std::unordered_set<std::string> used;
        for (const Flow &f : m_.flows())
            if (survives(f.from) && survives(f.to)) used.insert(f.id);
        for (const Trigger &t : m_.triggers())
            used.insert(t.id);
        auto mark_used = [&](const auto &items) {
            for (const auto &item : items)
                used.insert(item.id);
        };
        mark_used(m_.thimacs());
        mark_used(actions);
        mark_used(m_.storages());
        std::size_t counter = 0;
        auto fresh_flow_id = [&] {
            std::string id;
            do
                id = "f" + std::to_string(++counter);
            while (used.count(id));
            used.insert(id);
            return id;
        };

        std::vector<Flow> flows;
        std::set<std::pair<std::string, std::string>> added;
        for (const Flow &f : m_.flows()) {
            if (!survives(f.from)) continue;
            if (survives(f.to)) {
                flows.push_back(f);
                continue;
            }
            for (const std::string &target : survivors_after(f.to)) {
                if (target == f.from) continue;
                std::pair<std::string, std::string> key {f.from, target};
                if (direct.count(key) || !added.insert(key).second) continue;
                flows.push_back(Flow {fresh_flow_id(), f.from, target});
            }
        }

        std::vector<Trigger> triggers;
        for (const Trigger &t : m_.triggers()) {
            auto from = survives(t.from) ? std::optional<std::string>(t.from)
                                         : nearest_action(t.from, Direction::backward);
            auto to = survives(t.to) ? std::optional<std::string>(t.to)
                                     : nearest_action(t.to, Direction::forward);
            if (!from || !to || *from == *to) continue;
            triggers.push_back(Trigger {t.id, *from, *to, t.condition});
        }

        return StaticModel::from_parts(m_.name(),
                std::vector<Thimac>(m_.thimacs().begin(), m_.thimacs().end()), std::move(actions),
                std::vector<Storage>(m_.storages().begin(), m_.storages().end()),
                std::move(flows), std::move(triggers));
    }

private:
    enum class Direction { forward, backward };

    bool survives(const std::string &id) const {
        if (const Action *a = m_.find_action(id)) return !is_removed_by_simplify(a->kind);
        return m_.find_storage(id) != nullptr;
    }

    bool removed(const std::string &id) const {
        const Action *a = m_.find_action(id);
        return a && is_removed_by_simplify(a->kind);
    }

    // Surviving nodes reachable from a removed node through removed nodes
    // only, in flow declaration order.
    std::vector<std::string> survivors_after(const std::string &start) const {
        std::vector<std::string> found;
        std::unordered_set<std::string> seen {start};
        std::deque<std::string> queue {start};
        while (!queue.empty()) {
            std::string cur = queue.front();
            queue.pop_front();
            auto it = out_.find(cur);
            if (it == out_.end()) continue;
            for (const Flow *f : it->second) {
                if (!seen.insert(f->to).second) continue;
                if (removed(f->to))
                    queue.push_back(f->to);
                else
                    found.push_back(f->to);
            }
        }
        return found;
    }

    // Breadth-first walk along the removed chain until a surviving action
    // turns up. Storages end the walk without qualifying as trigger ends.
    std::optional<std::string> nearest_action(const std::string &start, Direction dir) const {
        const auto &edges = dir == Direction::forward ? out_ : in_;
        std::unordered_set<std::string> seen {start};
        std::deque<std::string> queue {start};
        while (!queue.empty()) {
            std::string cur = queue.front();
            queue.pop_front();
            auto it = edges.find(cur);
            if (it == edges.end()) continue;
            for (const Flow *f : it->second) {
                const std::string &n = dir == Direction::forward ? f->to : f->from;
                if (!seen.insert(n).second) continue;
                const Action *a = m_.find_action(n);
                if (!a) continue;
                if (!is_removed_by_simplify(a->kind)) return n;
                queue.push_back(n);
            }
        }
        return std::nullopt;
    }

    const StaticModel &m_;
    std::unordered_map<std::string, std::vector<const Flow *>> out_;
    std::unordered_map<std::string, std::vector<const Flow *>> in_;
};

} // namespace

StaticModel simplify(const StaticModel &model) {
    std::vector<Diagnostic> diagnostics = validate(model);
    // Already simplified: its shortcut flows break the kind rules by design.
    bool simplified = std::none_of(model.actions().begin(), model.actions().end(),
            [](const Action &a) { return is_removed_by_simplify(a.kind); });
    if (simplified)
        std::erase_if(diagnostics,
                [](const Diagnostic &d) { return d.rule == Rule::R1 || d.rule == Rule::R2; });
    if (has_errors(diagnostics))
        throw SimplifyError("model '" + model.name() + "' has validation errors",
                std::move(diagnostics));
    return Simplifier(model).run();
}

} // namespace tmkit::model
