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

// Fixtures, random generators and reference oracles shared by the unit and
// acceptance tests. The oracles are deliberately naive and do not call into
// the library code they check.

#ifndef TMKIT_TESTS_SUPPORT_HPP
#define TMKIT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tmkit/cli.hpp"
#include "tmkit/convert.hpp"
#include "tmkit/document.hpp"
#include "tmkit/dsl.hpp"
#include "tmkit/dynamics.hpp"
#include "tmkit/logic.hpp"
#include "tmkit/model.hpp"

namespace tmkit::testing {

inline std::string fixture_path(const std::string &name) {
    return std::string(TMKIT_FIXTURES_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string &name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline Document load_fixture(const std::string &name) {
    return dsl::parse(read_fixture(name));
}

inline dynamics::Scenario load_scenario(const std::string &name) {
    return dynamics::parse_scenario(read_fixture(name), name.substr(0, name.find('.')));
}

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

inline CliResult run_cli(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err, false);
    return {code, out.str(), err.str()};
}

inline std::vector<std::string> trace_events(const dynamics::Trace &t) {
    std::vector<std::string> out;
    for (const dynamics::TraceStep &s : t.steps)
        out.push_back(s.event);
    return out;
}

// ---------------------------------------------------------------------------
// Logic oracle: evaluate every assignment with a map, no bit tricks.

struct OracleVerdict {
    bool valid = true;
    std::uint64_t rows = 0;
    std::uint64_t countermodels = 0;
    /// First falsifying assignment in lexicographic order with F < T.
    std::map<std::string, bool> first;
};

inline bool holds(const logic::Literal &l, const std::map<std::string, bool> &v) {
    return v.at(l.variable) != l.negative;
}

inline OracleVerdict oracle_truth_table(const logic::Argument &a) {
    std::set<std::string> names;
    for (const logic::Implication &p : a.premises()) {
        names.insert(p.antecedent.variable);
        names.insert(p.consequent.variable);
    }
    names.insert(a.goal().antecedent.variable);
    names.insert(a.goal().consequent.variable);
    std::vector<std::string> vars(names.begin(), names.end());
    OracleVerdict verdict;
    std::vector<bool> values(vars.size(), false);
    // Odometer over F/T with the first variable most significant.
    while (true) {
        std::map<std::string, bool> v;
        for (std::size_t i = 0; i < vars.size(); ++i)
            v[vars[i]] = values[i];
        ++verdict.rows;
        bool premises = true;
        for (const logic::Implication &p : a.premises())
            premises = premises && (!holds(p.antecedent, v) || holds(p.consequent, v));
        bool goal = !holds(a.goal().antecedent, v) || holds(a.goal().consequent, v);
        if (premises && !goal) {
            if (verdict.valid) verdict.first = v;
            verdict.valid = false;
            ++verdict.countermodels;
        }
        std::size_t i = vars.size();
        while (i > 0 && values[i - 1]) {
            values[i - 1] = false;
            --i;
        }
        if (i == 0) break;
        values[i - 1] = true;
    }
    return verdict;
}

/// Random single-antecedent argument over variables v0..v{n-1}.
inline logic::Argument random_argument(std::mt19937 &rng, int max_vars, int max_premises) {
    std::uniform_int_distribution<int> nvars(2, max_vars);
    int n = nvars(rng);
    std::uniform_int_distribution<int> var(0, n - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    auto literal = [&] {
        return logic::Literal {"v" + std::to_string(var(rng)), coin(rng) == 1};
    };
    auto implication = [&](std::size_t index) {
        logic::Literal a = literal();
        logic::Literal b = literal();
        while (b == a) b = literal();
        return logic::Implication {a, b, logic::Origin {index, false}};
    };
    std::uniform_int_distribution<int> npremises(1, max_premises);
    int m = npremises(rng);
    std::vector<logic::Implication> premises;
    std::set<std::string> used;
    for (int i = 0; i < m; ++i) {
        premises.push_back(implication(static_cast<std::size_t>(i + 1)));
        used.insert(premises.back().antecedent.variable);
        used.insert(premises.back().consequent.variable);
    }
    std::vector<std::string> pool(used.begin(), used.end());
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    logic::Literal ga {pool[pick(rng)], coin(rng) == 1};
    logic::Literal gb {pool[pick(rng)], coin(rng) == 1};
    while (gb == ga) gb = logic::Literal {pool[pick(rng)], coin(rng) == 1};
    return logic::Argument(std::move(premises), logic::Implication {ga, gb, {}});
}

// ---------------------------------------------------------------------------
// Graph oracle: transitive closure by repeated DFS over plain adjacency sets.

using Adjacency = std::map<std::string, std::set<std::string>>;

inline Adjacency flow_adjacency(const model::StaticModel &m) {
    Adjacency adj;
    for (const model::Flow &f : m.flows())
        adj[f.from].insert(f.to);
    return adj;
}

inline std::set<std::string> reachable_from(const Adjacency &adj, const std::string &start) {
    std::set<std::string> seen;
    std::vector<std::string> stack {start};
    while (!stack.empty()) {
        std::string n = stack.back();
        stack.pop_back();
        auto it = adj.find(n);
        if (it == adj.end()) continue;
        for (const std::string &m : it->second)
            if (seen.insert(m).second) stack.push_back(m);
    }
    return seen;
}

// ---------------------------------------------------------------------------
// DOT checker: a recursive-descent recognizer for the subset of the DOT
// grammar (digraph, subgraph, attribute statements, node and edge
// statements with quoted or plain ids). Counts node and edge statements.

struct DotSummary {
    bool ok = false;
    std::string error;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t dashed_edges = 0;
    std::set<std::string> node_ids;
    std::vector<std::map<std::string, std::string>> edge_attrs;
    std::map<std::string, std::map<std::string, std::string>> node_attrs;
};

class DotChecker {
public:
    explicit DotChecker(std::string text) : s_(std::move(text)) {}

    DotSummary run() {
        try {
            ws();
            keyword("digraph");
            ws();
            if (peek() != '{') id();
            ws();
            block();
            ws();
            if (i_ != s_.size()) fail("trailing text");
            r_.ok = true;
        } catch (const std::runtime_error &e) {
            r_.ok = false;
            r_.error = e.what();
        }
        return r_;
    }

private:
    [[noreturn]] void fail(const std::string &what) {
        throw std::runtime_error(what + " at offset " + std::to_string(i_));
    }
    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
    void ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }
    void expect(char c) {
        ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++i_;
    }
    void keyword(const std::string &k) {
        if (s_.compare(i_, k.size(), k) != 0) fail("expected " + k);
        i_ += k.size();
    }
    std::string id() {
        ws();
        std::string out;
        if (peek() == '"') {
            ++i_;
            while (true) {
                if (i_ >= s_.size()) fail("unterminated string");
                char c = s_[i_++];
                if (c == '\\') {
                    if (i_ >= s_.size()) fail("dangling escape");
                    out.push_back(s_[i_++]);
                } else if (c == '"') {
                    break;
                } else if (c == '\n') {
                    fail("raw newline in string");
                } else {
                    out.push_back(c);
                }
            }
            return out;
        }
        while (i_ < s_.size()
                && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '.'))
            out.push_back(s_[i_++]);
        if (out.empty()) fail("expected an id");
        return out;
    }
    std::map<std::string, std::string> attrs() {
        std::map<std::string, std::string> out;
        expect('[');
        ws();
        while (peek() != ']') {
            std::string k = id();
            expect('=');
            out[k] = id();
            ws();
            if (peek() == ',' || peek() == ';') ++i_;
            ws();
        }
        ++i_;
        return out;
    }
    void block() {
        expect('{');
        while (true) {
            ws();
            if (peek() == '}') {
                ++i_;
                return;
            }
            statement();
        }
    }
    void statement() {
        ws();
        if (s_.compare(i_, 8, "subgraph") == 0) {
            i_ += 8;
            ws();
            if (peek() != '{') id();
            block();
            return;
        }
        std::string first = id();
        ws();
        if (peek() == '=') {
            ++i_;
            id();
        } else if (first == "node" || first == "edge" || first == "graph") {
            attrs();
        } else if (s_.compare(i_, 2, "->") == 0) {
            i_ += 2;
            id();
            ws();
            std::map<std::string, std::string> a;
            if (peek() == '[') a = attrs();
            ++r_.edges;
            if (a.count("style") && a["style"] == "dashed") ++r_.dashed_edges;
            r_.edge_attrs.push_back(a);
        } else {
            std::map<std::string, std::string> a;
            if (peek() == '[') a = attrs();
            ++r_.nodes;
            r_.node_ids.insert(first);
            r_.node_attrs[first] = a;
        }
        expect(';');
    }

    std::string s_;
    std::size_t i_ = 0;
    DotSummary r_;
};

// ---------------------------------------------------------------------------
// Random valid documents for round-trip properties.

inline std::string random_text(std::mt19937 &rng) {
    static const std::vector<std::string> pieces {"card", "OK", "the", "\"quoted\"", "back\\slash",
            "two words", "tab\there", "line\nbreak", "#hash", "{brace}", "x -> y", "@at", "ünï"};
    std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
    std::uniform_int_distribution<int> count(1, 3);
    std::string out;
    for (int i = count(rng); i > 0; --i)
        out += (out.empty() ? "" : " ") + pieces[pick(rng)];
    return out;
}

inline Document random_document(std::mt19937 &rng, int index) {
    static const std::vector<std::string> thimac_names {"Client", "bank", "ATM system", "card",
            "Stock department", "x", "order_desk", "dispenser", "card"};
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> d6(0, 5);
    model::ModelBuilder b(index % 3 == 0 ? "m" + std::to_string(index) : "model " + std::to_string(index));
    std::vector<std::string> thimacs;
    int nthimacs = 1 + d6(rng) % 4;
    for (int i = 0; i < nthimacs; ++i) {
        std::optional<std::string> parent;
        if (!thimacs.empty() && coin(rng))
            parent = thimacs[std::uniform_int_distribution<std::size_t>(0, thimacs.size() - 1)(rng)];
        std::optional<std::string> note;
        if (d6(rng) == 0) note = random_text(rng);
        std::string name = thimac_names[std::uniform_int_distribution<std::size_t>(
                0, thimac_names.size() - 1)(rng)];
        thimacs.push_back(b.add(model::ThimacSpec {"", name, parent, note}));
    }
    std::map<std::string, std::vector<std::string>> by_kind_owner;
    std::vector<std::string> actions;
    for (const std::string &t : thimacs) {
        int n = d6(rng) + 1;
        for (int i = 0; i < n; ++i) {
            auto kind = model::all_action_kinds[static_cast<std::size_t>(d6(rng) % 5)];
            std::optional<std::string> label, anchor;
            if (coin(rng)) label = random_text(rng);
            if (d6(rng) == 0) anchor = std::to_string(d6(rng) + 1);
            if (d6(rng) == 1) anchor = "a b";
            std::string id = b.add(model::ActionSpec {"", kind, t, label, anchor});
            actions.push_back(id);
        }
        if (d6(rng) < 2) b.add(model::StorageSpec {"", t, coin(rng) ? "records" : "file of records"});
    }
    const model::StaticModel &m = b.peek();
    // Legal flows only, so the model validates without errors.
    std::vector<std::pair<std::string, std::string>> candidates;
    auto kind_of = [&](const std::string &id) -> model::NodeKind {
        if (const model::Action *a = m.find_action(id))
            return static_cast<model::NodeKind>(static_cast<std::uint8_t>(a->kind));
        return model::NodeKind::storage;
    };
    std::vector<std::string> nodes = actions;
    for (const model::Storage &s : m.storages())
        nodes.push_back(s.id);
    for (const std::string &a : nodes)
        for (const std::string &c : nodes) {
            if (a == c) continue;
            bool same = *m.owner_of(a) == *m.owner_of(c);
            bool legal = same ? model::FlowLegality::standard().allows(kind_of(a), kind_of(c))
                              : kind_of(a) == model::NodeKind::transfer
                                      && kind_of(c) == model::NodeKind::transfer;
            if (legal) candidates.emplace_back(a, c);
        }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::size_t nflows = std::min<std::size_t>(candidates.size(), static_cast<std::size_t>(d6(rng) * 2));
    for (std::size_t i = 0; i < nflows; ++i)
        b.add(model::FlowSpec {"", candidates[i].first, candidates[i].second});
    if (actions.size() >= 2) {
        int ntriggers = d6(rng);
        std::uniform_int_distribution<std::size_t> pick(0, actions.size() - 1);
        for (int i = 0; i < ntriggers; ++i) {
            std::string from = actions[pick(rng)], to = actions[pick(rng)];
            if (from == to) continue;
            std::optional<std::string> cond;
            if (coin(rng)) cond = random_text(rng);
            b.add(model::TriggerSpec {"", from, to, cond});
        }
    }
    Document doc {std::move(b).build(), {}, std::nullopt};

    // Single-action and flow-pair events keep regions connected.
    std::vector<dynamics::Event> events;
    std::size_t nevents = std::min<std::size_t>(actions.size(), static_cast<std::size_t>(d6(rng) + 1));
    for (std::size_t i = 0; i < nevents; ++i) {
        std::vector<std::string> region {actions[i]};
        for (const model::Flow &f : doc.model.flows())
            if (f.from == actions[i] && doc.model.find_action(f.to)) {
                region.push_back(f.to);
                break;
            }
        events.push_back(dynamics::define_event(
                doc.model, "E" + std::to_string(i + 1), random_text(rng), region));
    }
    doc.events = events;
    if (!events.empty() && coin(rng)) {
        std::vector<dynamics::ChronologyEdge> edges;
        std::vector<dynamics::LoopBound> bounds;
        for (std::size_t i = 0; i + 1 < events.size(); ++i) {
            if (coin(rng))
                edges.push_back({events[i].id(), events[i + 1].id(),
                        dynamics::Guard {"g" + std::to_string(i), coin(rng) == 1}});
            else
                edges.push_back({events[i].id(), events[i + 1].id(), std::nullopt});
        }
        if (events.size() >= 3 && coin(rng)) {
            edges.push_back({events.back().id(), events[1].id(), std::nullopt});
            bounds.push_back({events.back().id(), events[1].id(), d6(rng) + 1});
        }
        doc.chronology = dynamics::build_chronology(events, edges, bounds);
    }
    return doc;
}

} // namespace tmkit::testing

#endif // TMKIT_TESTS_SUPPORT_HPP
