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

#ifndef TMKIT_MODEL_HPP
#define TMKIT_MODEL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tmkit/error.hpp"

namespace tmkit::model {

/// The five generic actions of a thimac. Arrive and accept are folded into
/// receive, so the set is closed.
enum class ActionKind : std::uint8_t { create, process, release, transfer, receive };

inline constexpr std::array<ActionKind, 5> all_action_kinds = {ActionKind::create,
        ActionKind::process, ActionKind::release, ActionKind::transfer, ActionKind::receive};

std::string_view to_string(ActionKind kind);
std::optional<ActionKind> parse_action_kind(std::string_view text);

struct Thimac {
    std::string id;
    std::string name;
    std::optional<std::string> parent;
    std::optional<std::string> note;
    bool operator==(const Thimac &) const = default;
};

struct Action {
    std::string id;
    ActionKind kind = ActionKind::process;
    std::string owner;
    std::optional<std::string> label;
    /// Diagram annotation number (e.g. "16"), kept for traceability.
    std::optional<std::string> anchor;
    bool operator==(const Action &) const = default;
};

struct Storage {
    std::string id;
    std::string owner;
    std::string name;
    bool operator==(const Storage &) const = default;
};

/// Solid arrow: a thing moving between two actions or an action and a
/// storage.
struct Flow {
    std::string id;
    std::string from;
    std::string to;
    bool operator==(const Flow &) const = default;
};

/// Dashed arrow between two actions, optionally conditioned.
struct Trigger {
    std::string id;
    std::string from;
    std::string to;
    std::optional<std::string> condition;
    bool operator==(const Trigger &) const = default;
};

enum class ElementKind : std::uint8_t { thimac, action, storage, flow, trigger };

/// A static TM region. Instances are immutable once built; use ModelBuilder
/// for checked incremental construction or from_parts() to wrap already
/// collected elements (e.g. from a deserializer) whose references may still
/// be broken and are left for validate() to report.
class StaticModel {
public:
    StaticModel() = default;
    explicit StaticModel(std::string name) : name_(std::move(name)) {}

    /// Only id uniqueness is enforced here; throws ModelError on a duplicate.
    static StaticModel from_parts(std::string name, std::vector<Thimac> thimacs,
            std::vector<Action> actions, std::vector<Storage> storages,
            std::vector<Flow> flows, std::vector<Trigger> triggers);

    const std::string &name() const { return name_; }
    std::span<const Thimac> thimacs() const { return thimacs_; }
    std::span<const Action> actions() const { return actions_; }
    std::span<const Storage> storages() const { return storages_; }
    std::span<const Flow> flows() const { return flows_; }
    std::span<const Trigger> triggers() const { return triggers_; }

    bool contains(std::string_view id) const;
    std::optional<ElementKind> kind_of(std::string_view id) const;
    const Thimac *find_thimac(std::string_view id) const;
    const Action *find_action(std::string_view id) const;
    const Storage *find_storage(std::string_view id) const;

    /// Owner thimac of an action or storage; nullopt for anything else.
    std::optional<std::string> owner_of(std::string_view node_id) const;

    bool empty() const {
        return thimacs_.empty() && actions_.empty() && storages_.empty() && flows_.empty()
                && triggers_.empty();
    }

    bool operator==(const StaticModel &other) const;

private:
    friend class ModelBuilder;

    struct Slot {
        ElementKind kind;
        std::size_t index;
    };

    void index_element(const std::string &id, ElementKind kind, std::size_t index);
    const Slot *slot(std::string_view id) const;

    std::string name_;
    std::vector<Thimac> thimacs_;
    std::vector<Action> actions_;
    std::vector<Storage> storages_;
    std::vector<Flow> flows_;
    std::vector<Trigger> triggers_;
    std::unordered_map<std::string, Slot> index_;
};

// Element descriptions for the builder. An empty id asks for a generated
// one: containment paths ("bank/search") for thimacs, actions and storages,
// "f<N>"/"t<N>" for flows and triggers.
struct ThimacSpec {
    std::string id;
    std::string name;
    std::optional<std::string> parent;
    std::optional<std::string> note;
};

struct ActionSpec {
    std::string id;
    ActionKind kind = ActionKind::process;
    std::string owner;
    std::optional<std::string> label;
    std::optional<std::string> anchor;
};

struct StorageSpec {
    std::string id;
    std::string owner;
    std::string name;
};

struct FlowSpec {
    std::string id;
    std::string from;
    std::string to;
};

struct TriggerSpec {
    std::string id;
    std::string from;
    std::string to;
    std::optional<std::string> condition;
};

/// Checked construction. Every add() rejects dangling references, duplicate
/// explicit ids and self-loops with a ModelError naming the offending id, and
/// leaves the model under construction untouched on failure.
class ModelBuilder {
public:
    explicit ModelBuilder(std::string name) : model_(std::move(name)) {}
    explicit ModelBuilder(StaticModel seed) : model_(std::move(seed)) {}

    std::string add(const ThimacSpec &spec);
    std::string add(const ActionSpec &spec);
    std::string add(const StorageSpec &spec);
    std::string add(const FlowSpec &spec);
    std::string add(const TriggerSpec &spec);

    const StaticModel &peek() const { return model_; }
    StaticModel build() && { return std::move(model_); }

private:
    std::string fresh_id(const std::string &base) const;
    std::string fresh_numbered(std::string_view prefix) const;
    void claim(const std::string &id) const;

    StaticModel model_;
};

/// Last path segment of an element id relative to its owner; the full id
/// when it does not follow the containment-path convention.
std::string local_name(std::string_view id, std::string_view owner);

/// Equality up to element order and flow/trigger ids: thimacs, actions and
/// storages compare by full content, flows as a multiset of endpoint pairs,
/// triggers as a multiset of (from, to, condition).
bool structurally_equal(const StaticModel &a, const StaticModel &b);

// ---------------------------------------------------------------------------
// Validation

enum class Severity : std::uint8_t { error, warning };

enum class Rule : std::uint8_t { R1 = 1, R2, R3, R4, R5, R6, R7, R8 };

std::string_view to_string(Severity severity);
std::string to_string(Rule rule);

struct Diagnostic {
    Severity severity;
    Rule rule;
    std::string subject;
    std::string message;
    bool operator==(const Diagnostic &) const = default;
};

/// Endpoint category of a flow: one of the action kinds, or a storage.
enum class NodeKind : std::uint8_t { create, process, release, transfer, receive, storage };

std::string_view to_string(NodeKind kind);

/// Intra-thimac flow legality (rule R1) as data, so it can be amended.
class FlowLegality {
public:
    FlowLegality() = default;
    void allow(NodeKind from, NodeKind to);
    bool allows(NodeKind from, NodeKind to) const;

    /// receive->process, release->transfer and friends, plus storage access
    /// in both directions for every action kind except transfer.
    static const FlowLegality &standard();

private:
    std::array<std::array<bool, 6>, 6> table_{};
};

std::vector<Diagnostic> validate(
        const StaticModel &model, const FlowLegality &legality = FlowLegality::standard());

bool has_errors(std::span<const Diagnostic> diagnostics);

// ---------------------------------------------------------------------------
// Simplification

class SimplifyError : public ModelError {
public:
    SimplifyError(std::string message, std::vector<Diagnostic> diagnostics)
        : ModelError(std::move(message)), diagnostics_(std::move(diagnostics)) {}
    const std::vector<Diagnostic> &diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

/// Removes every release, transfer and receive action. Each flow path that
/// ran through removed actions only becomes a direct flow between its
/// surviving endpoints; triggers touching a removed action move to the
/// nearest surviving action along the removed chain (predecessor for
/// sources, successor for targets). Throws SimplifyError when the input has
/// validation errors. A model without release, transfer or receive actions
/// is taken to be simplified already and is exempt from R1 and R2.
StaticModel simplify(const StaticModel &model);

bool is_removed_by_simplify(ActionKind kind);

} // namespace tmkit::model

#endif // TMKIT_MODEL_HPP
