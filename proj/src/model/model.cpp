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

#include "tmkit/model.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace tmkit::model {

std::string_view to_string(ActionKind kind) {
    switch (kind) {
        case ActionKind::create: return "create";
        case ActionKind::process: return "process";
        case ActionKind::release: return "release";
        case ActionKind::transfer: return "transfer";
        case ActionKind::receive: return "receive";
    }
    return "?";
}

std::optional<ActionKind> parse_action_kind(std::string_view text) {
    for (ActionKind k : all_action_kinds)
        if (to_string(k) == text) return k;
    return std::nullopt;
}

StaticModel StaticModel::from_parts(std::string name, std::vector<Thimac> thimacs,
        std::vector<Action> actions, std::vector<Storage> storages, std::vector<Flow> flows,
        std::vector<Trigger> triggers) {
    StaticModel m(std::move(name));
    m.thimacs_ = std::move(thimacs);
    m.actions_ = std::move(actions);
    m.storages_ = std::move(storages);
    m.flows_ = std::move(flows);
    m.triggers_ = std::move(triggers);
    for (std::size_t i = 0; i < m.thimacs_.size(); ++i)
        m.index_element(m.thimacs_[i].id, ElementKind::thimac, i);
    for (std::size_t i = 0; i < m.actions_.size(); ++i)
        m.index_element(m.actions_[i].id, ElementKind::action, i);
    for (std::size_t i = 0; i < m.storages_.size(); ++i)
        m.index_element(m.storages_[i].id, ElementKind::storage, i);
    for (std::size_t i = 0; i < m.flows_.size(); ++i)
        m.index_element(m.flows_[i].id, ElementKind::flow, i);
    for (std::size_t i = 0; i < m.triggers_.size(); ++i)
        m.index_element(m.triggers_[i].id, ElementKind::trigger, i);
    return m;
}

void StaticModel::index_element(const std::string &id, ElementKind kind, std::size_t index) {
    if (id.empty()) throw ModelError("element id must not be empty");
    if (!index_.emplace(id, Slot {kind, index}).second)
        throw ModelError("duplicate id '" + id + "'");
}

const StaticModel::Slot *StaticModel::slot(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &it->second;
}

bool StaticModel::contains(std::string_view id) const {
    return slot(id) != nullptr;
}

std::optional<ElementKind> StaticModel::kind_of(std::string_view id) const {
    if (const Slot *s = slot(id)) return s->kind;
    return std::nullopt;
}

const Thimac *StaticModel::find_thimac(std::string_view id) const {
    const Slot *s = slot(id);
    return s && s->kind == ElementKind::thimac ? &thimacs_[s->index] : nullptr;
}

const Action *StaticModel::find_action(std::string_view id) const {
    const Slot *s = slot(id);
    return s && s->kind == ElementKind::action ? &actions_[s->index] : nullptr;
}

const Storage *StaticModel::find_storage(std::string_view id) const {
    const Slot *s = slot(id);
    return s && s->kind == ElementKind::storage ? &storages_[s->index] : nullptr;
}

std::optional<std::string> StaticModel::owner_of(std::string_view node_id) const {
    if (const Action *a = find_action(node_id)) return a->owner;
    if (const Storage *s = find_storage(node_id)) return s->owner;
    return std::nullopt;
}

bool StaticModel::operator==(const StaticModel &other) const {
    return name_ == other.name_ && thimacs_ == other.thimacs_ && actions_ == other.actions_
            && storages_ == other.storages_ && flows_ == other.flows_
            && triggers_ == other.triggers_;
}

// ---------------------------------------------------------------------------

namespace {

std::string sanitize(std::string_view text, std::string_view fallback) {
    std::string out;
    for (char c : text) {
        auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || c == '_')
            out.push_back(c);
        else if (!out.empty() && out.back() != '_')
            out.push_back('_');
    }
    while (!out.empty() && out.back() == '_')
        out.pop_back();
    return out.empty() ? std::string(fallback) : out;
}

} // namespace

void ModelBuilder::claim(const std::string &id) const {
    if (id.empty()) throw ModelError("element id must not be empty");
    if (model_.contains(id)) throw ModelError("duplicate id '" + id + "'");
}

std::string ModelBuilder::fresh_id(const std::string &base) const {
    if (!model_.contains(base)) return base;
    for (int n = 2;; ++n) {
        std::string candidate = base + "_" + std::to_string(n);
        if (!model_.contains(candidate)) return candidate;
    }
}

std::string ModelBuilder::fresh_numbered(std::string_view prefix) const {
    for (std::size_t n = 1;; ++n) {
        std::string candidate = std::string(prefix) + std::to_string(n);
        if (!model_.contains(candidate)) return candidate;
    }
}

std::string ModelBuilder::add(const ThimacSpec &spec) {
    if (spec.parent && !model_.find_thimac(*spec.parent))
        throw ModelError("unknown parent thimac '" + *spec.parent + "'");
    std::string id = spec.id;
    if (id.empty()) {
        std::string local = sanitize(spec.name, "thimac");
        id = fresh_id(spec.parent ? *spec.parent + "/" + local : local);
    } else {
        claim(id);
    }
    Thimac t {id, spec.name.empty() ? local_name(id, spec.parent.value_or("")) : spec.name,
            spec.parent, spec.note};
    model_.thimacs_.push_back(std::move(t));
    model_.index_element(id, ElementKind::thimac, model_.thimacs_.size() - 1);
    return id;
}

std::string ModelBuilder::add(const ActionSpec &spec) {
    if (!model_.find_thimac(spec.owner))
        throw ModelError("unknown owner thimac '" + spec.owner + "'");
    std::string id = spec.id;
    if (id.empty())
        id = fresh_numbered(spec.owner + "/" + std::string(to_string(spec.kind)));
    else
        claim(id);
    model_.actions_.push_back(Action {id, spec.kind, spec.owner, spec.label, spec.anchor});
    model_.index_element(id, ElementKind::action, model_.actions_.size() - 1);
    return id;
}

std::string ModelBuilder::add(const StorageSpec &spec) {
    if (!model_.find_thimac(spec.owner))
        throw ModelError("unknown owner thimac '" + spec.owner + "'");
    std::string id = spec.id;
    if (id.empty())
        id = fresh_id(spec.owner + "/" + sanitize(spec.name, "storage"));
    else
        claim(id);
    std::string name = spec.name.empty() ? local_name(id, spec.owner) : spec.name;
    model_.storages_.push_back(Storage {id, spec.owner, std::move(name)});
    model_.index_element(id, ElementKind::storage, model_.storages_.size() - 1);
    return id;
}

std::string ModelBuilder::add(const FlowSpec &spec) {
    for (const std::string *end : {&spec.from, &spec.to})
        if (!model_.find_action(*end) && !model_.find_storage(*end))
            throw ModelError("unknown flow endpoint '" + *end + "'");
    if (spec.from == spec.to) throw ModelError("flow from '" + spec.from + "' to itself");
    std::string id = spec.id.empty() ? fresh_numbered("f") : spec.id;
    if (!spec.id.empty()) claim(id);
    model_.flows_.push_back(Flow {id, spec.from, spec.to});
    model_.index_element(id, ElementKind::flow, model_.flows_.size() - 1);
    return id;
}

std::string ModelBuilder::add(const TriggerSpec &spec) {
    for (const std::string *end : {&spec.from, &spec.to})
        if (!model_.find_action(*end))
            throw ModelError("unknown trigger endpoint '" + *end + "'");
    if (spec.from == spec.to) throw ModelError("trigger from '" + spec.from + "' to itself");
    std::string id = spec.id.empty() ? fresh_numbered("t") : spec.id;
    if (!spec.id.empty()) claim(id);
    model_.triggers_.push_back(Trigger {id, spec.from, spec.to, spec.condition});
    model_.index_element(id, ElementKind::trigger, model_.triggers_.size() - 1);
    return id;
}

std::string local_name(std::string_view id, std::string_view owner) {
    if (!owner.empty() && id.size() > owner.size() + 1 && id.substr(0, owner.size()) == owner
            && id[owner.size()] == '/')
        return std::string(id.substr(owner.size() + 1));
    return std::string(id);
}

namespace {

template <typename T, typename Key>
auto sorted_keys(std::span<const T> items, Key key) {
    std::vector<decltype(key(items.front()))> keys;
    keys.reserve(items.size());
    for (const T &item : items)
        keys.push_back(key(item));
    std::sort(keys.begin(), keys.end());
    return keys;
}

template <typename T, typename Key>
bool same_multiset(std::span<const T> a, std::span<const T> b, Key key) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    return sorted_keys(a, key) == sorted_keys(b, key);
}

} // namespace

bool structurally_equal(const StaticModel &a, const StaticModel &b) {
    if (a.name() != b.name()) return false;
    auto thimac_key = [](const Thimac &t) {
        return std::make_tuple(t.id, t.name, t.parent, t.note);
    };
    auto action_key = [](const Action &x) {
        return std::make_tuple(x.id, x.kind, x.owner, x.label, x.anchor);
    };
    auto storage_key = [](const Storage &s) { return std::make_tuple(s.id, s.owner, s.name); };
    auto flow_key = [](const Flow &f) { return std::make_pair(f.from, f.to); };
    auto trigger_key = [](const Trigger &t) {
        return std::make_tuple(t.from, t.to, t.condition);
    };
    return same_multiset(a.thimacs(), b.thimacs(), thimac_key)
            && same_multiset(a.actions(), b.actions(), action_key)
            && same_multiset(a.storages(), b.storages(), storage_key)
            && same_multiset(a.flows(), b.flows(), flow_key)
            && same_multiset(a.triggers(), b.triggers(), trigger_key);
}

} // namespace tmkit::model
