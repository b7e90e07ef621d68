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

#include <array>
#include <map>
#include <queue>
#include <set>

#include <json.hpp>

#include "tmkit/convert.hpp"

namespace tmkit::convert {

using model::ActionKind;

namespace {

constexpr std::array<std::pair<NodeKind, std::string_view>, 6> kNodeKindNames {{
        {NodeKind::start, "start"},
        {NodeKind::end, "end"},
        {NodeKind::activity, "activity"},
        {NodeKind::decision, "decision"},
        {NodeKind::message_send, "message-send"},
        {NodeKind::message_receive, "message-receive"},
}};

bool is_simple_id(std::string_view s) {
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

std::string describe(const ChartEdge &e) {
    return "edge " + e.from + " -> " + e.to;
}

void check_document(const FlowchartDoc &doc, std::map<std::string, const ChartNode *> &nodes) {
    std::set<std::string> lanes;
    for (const std::string &lane : doc.lanes)
        if (!lanes.insert(lane).second) throw ImportError("duplicate lane '" + lane + "'");
    for (const ChartNode &n : doc.nodes) {
        if (!is_simple_id(n.id))
            throw ImportError("node id '" + n.id + "' is not a simple identifier");
        if (!nodes.emplace(n.id, &n).second) throw ImportError("duplicate node id '" + n.id + "'");
        if (!lanes.count(n.lane))
            throw ImportError("node '" + n.id + "' is in unknown lane '" + n.lane + "'");
    }
    std::map<std::string, std::size_t> guarded;
    for (const ChartEdge &e : doc.edges) {
        for (const std::string *end : {&e.from, &e.to})
            if (!nodes.count(*end))
                throw ImportError(describe(e) + " references unknown node '" + *end + "'");
        const ChartNode &from = *nodes.at(e.from);
        const ChartNode &to = *nodes.at(e.to);
        if (from.kind == NodeKind::end)
            throw ImportError(describe(e) + " leaves end node '" + from.id + "'");
        if (to.kind == NodeKind::start)
            throw ImportError(describe(e) + " enters start node '" + to.id + "'");
        if (from.kind == NodeKind::decision) {
            if (!e.guard) throw ImportError(describe(e) + " leaves a decision without a guard");
            if (to.kind == NodeKind::end) throw ImportError("dangling decision guard on " + describe(e));
            ++guarded[from.id];
        } else if (e.guard) {
            throw ImportError(describe(e) + " carries a guard but does not leave a decision");
        }
        if (from.lane != to.lane) {
            if (from.kind == NodeKind::message_receive || to.kind == NodeKind::message_send)
                throw ImportError("cross-lane " + describe(e)
                                  + " has no identifiable sender/receiver kinds");
        }
    }
    for (const ChartNode &n : doc.nodes)
        if (n.kind == NodeKind::decision && guarded[n.id] < 2)
            throw ImportError("decision '" + n.id + "' needs at least two guarded edges");
}

// Shortest chain of inserted release/transfer/receive kinds that makes
// from -> ... -> to legal inside one thimac. Excludes both endpoints.
std::vector<ActionKind> legal_chain(ActionKind from, ActionKind to) {
    const model::FlowLegality &legal = model::FlowLegality::standard();
    auto nk = [](ActionKind k) { return static_cast<model::NodeKind>(static_cast<std::uint8_t>(k)); };
    constexpr std::array<ActionKind, 3> fillers {
            ActionKind::release, ActionKind::transfer, ActionKind::receive};
    // States: the endpoint kind (index 0) or a filler kind (1 + filler index).
    std::array<int, 4> prev;
    prev.fill(-2);
    std::queue<int> todo;
    prev[0] = -1;
    todo.push(0);
    auto kind_of = [&](int s) { return s == 0 ? from : fillers[static_cast<std::size_t>(s - 1)]; };
    while (!todo.empty()) {
        int s = todo.front();
        todo.pop();
        if (legal.allows(nk(kind_of(s)), nk(to))) {
            std::vector<ActionKind> chain;
            for (int c = s; c != 0; c = prev[static_cast<std::size_t>(c)])
                chain.insert(chain.begin(), kind_of(c));
            return chain;
        }
        for (int n = 1; n <= 3; ++n)
            if (prev[static_cast<std::size_t>(n)] == -2 && legal.allows(nk(kind_of(s)), nk(kind_of(n)))) {
                prev[static_cast<std::size_t>(n)] = s;
                todo.push(n);
            }
    }
    throw ImportError(std::string("no legal chain from ") + std::string(model::to_string(from))
                      + " to " + std::string(model::to_string(to)));
}

class Importer {
public:
    explicit Importer(const FlowchartDoc &doc) : doc_(doc), builder_(doc.name) {
        check_document(doc_, nodes_);
    }

    model::StaticModel run() {
        for (const std::string &lane : doc_.lanes)
            thimac_[lane] = builder_.add(model::ThimacSpec {"", lane, std::nullopt, std::nullopt});
        for (const ChartNode &n : doc_.nodes)
            add_node(n);
        for (std::size_t i = 0; i < doc_.edges.size(); ++i)
            add_edge(doc_.edges[i], i + 1);
        return std::move(builder_).build();
    }

private:
    struct Ends {
        std::string entry;
        std::string exit;
    };

    std::string action(const std::string &owner, const std::string &local, ActionKind kind,
            std::optional<std::string> label) {
        return builder_.add(model::ActionSpec {owner + "/" + local, kind, owner, std::move(label),
                std::nullopt});
    }

    void add_node(const ChartNode &n) {
        const std::string &t = thimac_.at(n.lane);
        std::optional<std::string> label;
        if (!n.label.empty()) label = n.label;
        switch (n.kind) {
            case NodeKind::end: return;
            case NodeKind::start: {
                std::string id = action(t, n.id, ActionKind::create, label);
                ends_[n.id] = {id, id};
                return;
            }
            case NodeKind::activity:
            case NodeKind::decision: {
                std::string id = action(t, n.id, ActionKind::process, label);
                ends_[n.id] = {id, id};
                return;
            }
            case NodeKind::message_send: {
                std::string rel = action(t, n.id, ActionKind::release, label);
                std::string tr = action(t, n.id + "_out", ActionKind::transfer, std::nullopt);
                builder_.add(model::FlowSpec {"", rel, tr});
                ends_[n.id] = {rel, tr};
                return;
            }
            case NodeKind::message_receive: {
                std::string tr = action(t, n.id + "_in", ActionKind::transfer, std::nullopt);
                std::string rec = action(t, n.id, ActionKind::receive, label);
                builder_.add(model::FlowSpec {"", tr, rec});
                ends_[n.id] = {tr, rec};
                return;
            }
        }
    }

    ActionKind kind(const std::string &action_id) const {
        return builder_.peek().find_action(action_id)->kind;
    }

    // Inserts the chain between two actions of one thimac, returning the
    // last action before `to`.
    std::string chain(const std::string &owner, const std::string &from, ActionKind to_kind,
            const std::string &tag) {
        std::string at = from;
        for (ActionKind k : legal_chain(kind(from), to_kind)) {
            std::string next = action(owner, tag + "_" + std::string(model::to_string(k)), k,
                    std::nullopt);
            builder_.add(model::FlowSpec {"", at, next});
            at = next;
        }
        return at;
    }

    void add_edge(const ChartEdge &e, std::size_t index) {
        const ChartNode &from = *nodes_.at(e.from);
        const ChartNode &to = *nodes_.at(e.to);
        if (to.kind == NodeKind::end) return;
        const Ends &src = ends_.at(from.id);
        const Ends &dst = ends_.at(to.id);
        if (from.kind == NodeKind::decision) {
            builder_.add(model::TriggerSpec {"", src.exit, dst.entry, e.guard});
            return;
        }
        std::string tag = "e" + std::to_string(index);
        const std::string &src_t = thimac_.at(from.lane);
        const std::string &dst_t = thimac_.at(to.lane);
        if (from.lane == to.lane) {
            std::string last = chain(src_t, src.exit, kind(dst.entry), tag);
            builder_.add(model::FlowSpec {"", last, dst.entry});
            return;
        }
        // Cross-lane: leave through a transfer, arrive at a transfer.
        std::string out = src.exit;
        if (kind(out) != ActionKind::transfer) {
            std::string last = chain(src_t, out, ActionKind::transfer, tag);
            out = action(src_t, tag + "_transfer", ActionKind::transfer, std::nullopt);
            builder_.add(model::FlowSpec {"", last, out});
        }
        std::string in = dst.entry;
        if (kind(in) != ActionKind::transfer) {
            in = action(dst_t, tag + "_transfer_in", ActionKind::transfer, std::nullopt);
            std::string last = chain(dst_t, in, kind(dst.entry), tag);
            builder_.add(model::FlowSpec {"", last, dst.entry});
        }
        builder_.add(model::FlowSpec {"", out, in});
    }

    const FlowchartDoc &doc_;
    model::ModelBuilder builder_;
    std::map<std::string, const ChartNode *> nodes_;
    std::map<std::string, std::string> thimac_;
    std::map<std::string, Ends> ends_;
};

std::string at(const std::string &path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

const nlohmann::json &require(const nlohmann::json &obj, const char *key, const std::string &path) {
    if (!obj.is_object()) throw ImportError(path + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ImportError(path + "." + key + ": missing required field");
    return *it;
}

std::string require_string(const nlohmann::json &obj, const char *key, const std::string &path) {
    const nlohmann::json &v = require(obj, key, path);
    if (!v.is_string()) throw ImportError(path + "." + key + ": expected a string");
    return v.get<std::string>();
}

const nlohmann::json &require_array(const nlohmann::json &obj, const char *key, const std::string &path) {
    const nlohmann::json &v = require(obj, key, path);
    if (!v.is_array()) throw ImportError(path + "." + key + ": expected an array");
    return v;
}

} // namespace

std::string_view to_string(NodeKind kind) {
    for (const auto &[k, name] : kNodeKindNames)
        if (k == kind) return name;
    return "?";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
    for (const auto &[k, name] : kNodeKindNames)
        if (name == text) return k;
    return std::nullopt;
}

FlowchartDoc parse_flowchart(std::string_view text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ImportError(std::string("$: malformed JSON: ") + e.what());
    }
    FlowchartDoc doc;
    doc.name = require_string(root, "name", "$");
    const auto &lanes = require_array(root, "lanes", "$");
    for (std::size_t i = 0; i < lanes.size(); ++i) {
        if (!lanes[i].is_string()) throw ImportError(at("$.lanes", i) + ": expected a string");
        doc.lanes.push_back(lanes[i].get<std::string>());
    }
    const auto &nodes = require_array(root, "nodes", "$");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::string p = at("$.nodes", i);
        std::string kind_text = require_string(nodes[i], "kind", p);
        auto kind = parse_node_kind(kind_text);
        if (!kind)
            throw ImportError(p + ".kind: unsupported node kind '" + kind_text
                              + "' (only start, end, activity, decision, message-send and "
                                "message-receive are supported)");
        ChartNode n {require_string(nodes[i], "id", p), require_string(nodes[i], "lane", p), *kind,
                ""};
        if (auto it = nodes[i].find("label"); it != nodes[i].end() && !it->is_null()) {
            if (!it->is_string()) throw ImportError(p + ".label: expected a string");
            n.label = it->get<std::string>();
        }
        doc.nodes.push_back(std::move(n));
    }
    const auto &edges = require_array(root, "edges", "$");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::string p = at("$.edges", i);
        ChartEdge e {require_string(edges[i], "from", p), require_string(edges[i], "to", p),
                std::nullopt};
        if (auto it = edges[i].find("guard"); it != edges[i].end() && !it->is_null()) {
            if (!it->is_string()) throw ImportError(p + ".guard: expected a string");
            e.guard = it->get<std::string>();
        }
        doc.edges.push_back(std::move(e));
    }
    return doc;
}

model::StaticModel import_flowchart(const FlowchartDoc &doc) {
    try {
        return Importer(doc).run();
    } catch (const ModelError &e) {
        throw ImportError(e.what());
    }
}

std::vector<std::string> dropped_terminators(const FlowchartDoc &doc) {
    std::vector<std::string> out;
    for (const ChartNode &n : doc.nodes)
        if (n.kind == NodeKind::end) out.push_back(n.id);
    return out;
}

} // namespace tmkit::convert
