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

#ifndef TMKIT_CONVERT_HPP
#define TMKIT_CONVERT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmkit/document.hpp"
#include "tmkit/error.hpp"

namespace tmkit::convert {

// ---------------------------------------------------------------------------
// JSON
//
//   {
//     "name": "atm",
//     "thimacs":  [{"id", "name", "parent": str|null, "note": str|null}],
//     "actions":  [{"id", "kind", "owner", "label": str|null, "anchor": str|null}],
//     "storages": [{"id", "owner", "name"}],
//     "flows":    [{"id", "from", "to"}],
//     "triggers": [{"id", "from", "to", "condition": str|null}],
//     "events":   [{"id", "label", "region": [action id, ...]}],
//     "chronology": null | {
//         "edges":  [{"from", "to", "guard": null | {"label", "when": bool}}],
//         "bounds": [{"from", "to", "max": int}]
//     }
//   }
//
// Keys are always written in this order. "events" and "chronology" may be
// omitted on input.

/// Carries the JSON path of the offending value, e.g. `$.actions[3].kind`.
class JsonError : public FormatError {
public:
    JsonError(std::string path, const std::string &message)
        : FormatError(path + ": " + message), path_(std::move(path)) {}
    const std::string &path() const { return path_; }

private:
    std::string path_;
};

std::string to_json(const Document &document);
std::string to_json(const model::StaticModel &model);
Document from_json(std::string_view text);

// ---------------------------------------------------------------------------
// DOT

/// Thimacs become nested clusters, actions boxes labeled with their kind,
/// storages cylinders, flows solid edges and triggers dashed edges carrying
/// their condition.
std::string to_dot(const model::StaticModel &model);
/// Events as nodes, guarded edges labeled with the guard, bounded edges with
/// their budget.
std::string to_dot(const dynamics::ChronologyGraph &chronology, std::string_view name = "chronology");

// ---------------------------------------------------------------------------
// Flowchart-lite import

enum class NodeKind { start, end, activity, decision, message_send, message_receive };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view text);

struct ChartNode {
    std::string id;
    std::string lane;
    NodeKind kind = NodeKind::activity;
    std::string label;
};

struct ChartEdge {
    std::string from;
    std::string to;
    std::optional<std::string> guard;
};

struct FlowchartDoc {
    std::string name;
    std::vector<std::string> lanes;
    std::vector<ChartNode> nodes;
    std::vector<ChartEdge> edges;
};

class ImportError : public FormatError {
public:
    using FormatError::FormatError;
};

/// Reads `{"name", "lanes": [..], "nodes": [{"id","lane","kind","label"}],
/// "edges": [{"from","to","guard"?}]}` where kind is one of start, end,
/// activity, decision, message-send, message-receive. Any other kind
/// (including other gateway types) is rejected with its JSON path.
FlowchartDoc parse_flowchart(std::string_view text);

/// Maps lanes to thimacs, activities and decisions to process actions, starts
/// to create actions, message sends to release->transfer and message
/// receives to transfer->receive. End nodes are dropped. Sequence edges are
/// legalized with the shortest chain of inserted release/transfer/receive
/// actions; cross-lane edges meet transfer->transfer. A decision's guarded
/// edges become conditioned triggers. The result validates without errors.
model::StaticModel import_flowchart(const FlowchartDoc &doc);

/// Ids of end nodes the importer dropped, for the report.
std::vector<std::string> dropped_terminators(const FlowchartDoc &doc);

// ---------------------------------------------------------------------------
// Requirements report

struct ReportOptions {
    /// Traces to list in the chronology section, one per scenario.
    std::vector<dynamics::Scenario> scenarios;
    /// Terminators dropped during import, noted when nonempty.
    std::vector<std::string> dropped_terminators;
};

/// Sections: thimac inventory with action counts, validation summary, event
/// catalog and, when scenarios are given, one chronology path per scenario.
std::string generate_report(const Document &document, const ReportOptions &options = {});

// ---------------------------------------------------------------------------
// Graph comparison

enum class EdgeSelection { flows, flows_and_triggers };

/// Canonical form of the surviving-node graph of a model: nodes labeled with
/// kind and owning thimac name, edges from flows (and optionally triggers).
/// Two models have equal canonical forms iff their labeled graphs are
/// isomorphic.
std::string canonical_form(const model::StaticModel &model, EdgeSelection edges);

} // namespace tmkit::convert

#endif // TMKIT_CONVERT_HPP
