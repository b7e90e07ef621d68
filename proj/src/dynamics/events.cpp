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

#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "tmkit/dynamics.hpp"

namespace tmkit::dynamics {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t {0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x)
            x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

} // namespace

Event define_event(const model::StaticModel &model, std::string id, std::string label,
        std::vector<std::string> region) {
    if (region.empty()) throw DynamicsError("event '" + id + "' has an empty region");
    std::unordered_map<std::string, std::size_t> slot;
    for (std::size_t i = 0; i < region.size(); ++i) {
        if (!model.find_action(region[i]))
            throw DynamicsError("event '" + id + "' references unknown action '" + region[i] + "'");
        if (!slot.emplace(region[i], i).second)
            throw DynamicsError("event '" + id + "' lists action '" + region[i] + "' twice");
    }

    DisjointSets sets(region.size());
    auto link = [&](const std::string &a, const std::string &b) {
        auto ia = slot.find(a), ib = slot.find(b);
        if (ia != slot.end() && ib != slot.end()) sets.unite(ia->second, ib->second);
    };
    std::unordered_map<std::string, std::vector<std::string>> storage_users;
    for (const model::Flow &f : model.flows()) {
        link(f.from, f.to);
        if (model.find_storage(f.from)) storage_users[f.from].push_back(f.to);
        if (model.find_storage(f.to)) storage_users[f.to].push_back(f.from);
    }
    for (const model::Trigger &t : model.triggers())
        link(t.from, t.to);
    for (const auto &[storage, users] : storage_users) {
        const std::string *first = nullptr;
        for (const std::string &user : users) {
            if (!slot.count(user)) continue;
            if (first)
                link(*first, user);
            else
                first = &user;
        }
    }

    std::vector<std::vector<std::string>> components;
    std::unordered_map<std::size_t, std::size_t> component_of;
    for (std::size_t i = 0; i < region.size(); ++i) {
        auto [it, fresh] = component_of.emplace(sets.find(i), components.size());
        if (fresh) components.emplace_back();
        components[it->second].push_back(region[i]);
    }
    if (components.size() > 1) {
        std::string listing;
        for (const auto &component : components) {
            listing += listing.empty() ? "{" : " | {";
            for (std::size_t i = 0; i < component.size(); ++i)
                listing += (i ? ", " : "") + component[i];
            listing += "}";
        }
        throw DynamicsError("region of event '" + id + "' is not connected: " + listing);
    }

    Event e;
    e.id_ = std::move(id);
    e.label_ = std::move(label);
    e.region_ = std::move(region);
    return e;
}

std::vector<std::string> check_coverage(
        const model::StaticModel &model, std::span<const Event> events) {
    std::unordered_set<std::string> covered;
    for (const Event &e : events)
        covered.insert(e.region().begin(), e.region().end());
    std::vector<std::string> uncovered;
    for (const model::Action &a : model.actions())
        if (!covered.count(a.id)) uncovered.push_back(a.id);
    return uncovered;
}

} // namespace tmkit::dynamics
