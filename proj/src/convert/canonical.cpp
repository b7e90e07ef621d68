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
#include <optional>
#include <tuple>
#include <unordered_map>

#include "tmkit/convert.hpp"

namespace tmkit::convert {

namespace {

struct Edge {
    int from;
    int to;
    int type; // 0 flow, 1 trigger
};

// Individualization-refinement: colour refinement to a stable partition,
// then branch on the members of the first non-singleton cell and keep the
// least certificate. Automorphisms found between equal leaves prune
// branches that lie in an already explored orbit.
class Canonizer {
public:
    Canonizer(std::vector<std::string> labels, std::vector<Edge> edges)
        : labels_(std::move(labels)), edges_(std::move(edges)), out_(labels_.size()),
          in_(labels_.size()) {
        for (const Edge &e : edges_) {
            out_[static_cast<std::size_t>(e.from)].push_back({e.type, e.to});
            in_[static_cast<std::size_t>(e.to)].push_back({e.type, e.from});
        }
    }

    std::string run() {
        std::vector<std::string> sorted = labels_;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> colors(labels_.size());
        for (std::size_t i = 0; i < labels_.size(); ++i)
            colors[i] = static_cast<int>(
                    std::lower_bound(sorted.begin(), sorted.end(), labels_[i]) - sorted.begin());
        std::vector<int> path;
        search(std::move(colors), path);
        return best_ ? best_->cert : "nodes 0\n";
    }

private:
    static int distinct(const std::vector<int> &colors) {
        std::vector<int> c = colors;
        std::sort(c.begin(), c.end());
        return static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
    }

    void refine(std::vector<int> &colors) const {
        int count = distinct(colors);
        while (true) {
            std::vector<std::vector<int>> sigs(colors.size());
            for (std::size_t i = 0; i < colors.size(); ++i) {
                std::vector<int> &s = sigs[i];
                s.push_back(colors[i]);
                std::vector<int> outs, ins;
                for (auto [type, v] : out_[i])
                    outs.push_back(type * static_cast<int>(colors.size()) + colors[static_cast<std::size_t>(v)]);
                for (auto [type, u] : in_[i])
                    ins.push_back(type * static_cast<int>(colors.size()) + colors[static_cast<std::size_t>(u)]);
                std::sort(outs.begin(), outs.end());
                std::sort(ins.begin(), ins.end());
                s.insert(s.end(), outs.begin(), outs.end());
                s.push_back(-1);
                s.insert(s.end(), ins.begin(), ins.end());
            }
            std::vector<std::vector<int>> uniq = sigs;
            std::sort(uniq.begin(), uniq.end());
            uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
            for (std::size_t i = 0; i < colors.size(); ++i)
                colors[i] = static_cast<int>(
                        std::lower_bound(uniq.begin(), uniq.end(), sigs[i]) - uniq.begin());
            int next = static_cast<int>(uniq.size());
            if (next == count) return;
            count = next;
        }
    }

    std::string certificate(const std::vector<int> &colors) const {
        std::vector<std::size_t> order(colors.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[static_cast<std::size_t>(colors[i])] = i;
        std::string out = "nodes " + std::to_string(colors.size()) + "\n";
        for (std::size_t pos = 0; pos < order.size(); ++pos)
            out += std::to_string(pos) + " " + labels_[order[pos]] + "\n";
        std::vector<std::tuple<int, int, int>> edges;
        for (const Edge &e : edges_)
            edges.emplace_back(colors[static_cast<std::size_t>(e.from)],
                    colors[static_cast<std::size_t>(e.to)], e.type);
        std::sort(edges.begin(), edges.end());
        out += "edges " + std::to_string(edges.size()) + "\n";
        for (auto [u, v, type] : edges)
            out += std::to_string(u) + (type ? " ~> " : " -> ") + std::to_string(v) + "\n";
        return out;
    }

    // Leaves with equal certificates differ by an automorphism; map the
    // vertex at each position of one onto the vertex at the same position of
    // the other.
    void record_automorphism(const std::vector<int> &a, const std::vector<int> &b) {
        std::vector<int> at_b(b.size());
        for (std::size_t i = 0; i < b.size(); ++i)
            at_b[static_cast<std::size_t>(b[i])] = static_cast<int>(i);
        std::vector<int> gamma(a.size());
        bool identity = true;
        for (std::size_t i = 0; i < a.size(); ++i) {
            gamma[i] = at_b[static_cast<std::size_t>(a[i])];
            identity = identity && gamma[i] == static_cast<int>(i);
        }
        if (!identity) automorphisms_.push_back(std::move(gamma));
    }

    // Orbit representative of every vertex under the recorded automorphisms
    // that fix `path` pointwise.
    std::vector<int> orbits(const std::vector<int> &path) const {
        std::vector<int> parent(labels_.size());
        for (std::size_t i = 0; i < parent.size(); ++i)
            parent[i] = static_cast<int>(i);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x)
                x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            return x;
        };
        for (const std::vector<int> &gamma : automorphisms_) {
            bool fixes = std::all_of(path.begin(), path.end(),
                    [&](int v) { return gamma[static_cast<std::size_t>(v)] == v; });
            if (!fixes) continue;
            for (std::size_t i = 0; i < gamma.size(); ++i) {
                int a = find(static_cast<int>(i)), b = find(gamma[i]);
                if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
            }
        }
        for (std::size_t i = 0; i < parent.size(); ++i)
            parent[i] = find(static_cast<int>(i));
        return parent;
    }

    void leaf(const std::vector<int> &colors) {
        std::string cert = certificate(colors);
        if (!first_) {
            first_ = Leaf {cert, colors};
        } else if (cert == first_->cert) {
            record_automorphism(first_->colors, colors);
        }
        if (!best_ || cert < best_->cert) {
            best_ = Leaf {std::move(cert), colors};
        } else if (cert == best_->cert) {
            record_automorphism(best_->colors, colors);
        }
    }

    void search(std::vector<int> colors, std::vector<int> &path) {
        refine(colors);
        std::map<int, std::vector<std::size_t>> cells;
        for (std::size_t i = 0; i < colors.size(); ++i)
            cells[colors[i]].push_back(i);
        auto target = std::find_if(cells.begin(), cells.end(),
                [](const auto &cell) { return cell.second.size() > 1; });
        if (target == cells.end()) {
            leaf(colors);
            return;
        }
        std::vector<int> explored;
        for (std::size_t v : target->second) {
            if (!explored.empty()) {
                std::vector<int> orbit = orbits(path);
                bool seen = std::any_of(explored.begin(), explored.end(), [&](int u) {
                    return orbit[static_cast<std::size_t>(u)] == orbit[v];
                });
                if (seen) continue;
            }
            explored.push_back(static_cast<int>(v));
            std::vector<int> next(colors.size());
            for (std::size_t i = 0; i < colors.size(); ++i)
                next[i] = 2 * colors[i] + (i == v ? 0 : 1);
            path.push_back(static_cast<int>(v));
            search(std::move(next), path);
            path.pop_back();
        }
    }

    struct Leaf {
        std::string cert;
        std::vector<int> colors;
    };

    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> out_;
    std::vector<std::vector<std::pair<int, int>>> in_;
    std::optional<Leaf> first_;
    std::optional<Leaf> best_;
    std::vector<std::vector<int>> automorphisms_;
};

} // namespace

std::string canonical_form(const model::StaticModel &model, EdgeSelection selection) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index;
    auto owner_name = [&](const std::string &owner) {
        const model::Thimac *t = model.find_thimac(owner);
        return t ? t->name : owner;
    };
    for (const model::Action &a : model.actions()) {
        index.emplace(a.id, static_cast<int>(labels.size()));
        labels.push_back(std::string(model::to_string(a.kind)) + " in " + owner_name(a.owner));
    }
    for (const model::Storage &s : model.storages()) {
        index.emplace(s.id, static_cast<int>(labels.size()));
        labels.push_back("storage in " + owner_name(s.owner));
    }
    std::vector<Edge> edges;
    for (const model::Flow &f : model.flows())
        if (index.count(f.from) && index.count(f.to))
            edges.push_back({index.at(f.from), index.at(f.to), 0});
    if (selection == EdgeSelection::flows_and_triggers)
        for (const model::Trigger &t : model.triggers())
            if (index.count(t.from) && index.count(t.to))
                edges.push_back({index.at(t.from), index.at(t.to), 1});
    return Canonizer(std::move(labels), std::move(edges)).run();
}

} // namespace tmkit::convert
