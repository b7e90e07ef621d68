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

#include <map>

#include "tmkit/convert.hpp"

namespace tmkit::convert {

namespace {

std::string q(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    return out + "\"";
}

class ModelDot {
public:
    explicit ModelDot(const model::StaticModel &m) : m_(m) {
        for (const model::Thimac &t : m_.thimacs()) {
            std::string parent = t.parent.value_or("");
            if (!parent.empty() && !m_.find_thimac(parent)) parent.clear();
            children_[parent].push_back(&t);
        }
        for (const model::Action &a : m_.actions())
            actions_[m_.find_thimac(a.owner) ? a.owner : ""].push_back(&a);
        for (const model::Storage &s : m_.storages())
            storages_[m_.find_thimac(s.owner) ? s.owner : ""].push_back(&s);
    }

    std::string run() {
        out_ = "digraph " + q(m_.name()) + " {\n";
        out_ += "  compound=true;\n";
        out_ += "  node [fontname=\"Helvetica\"];\n";
        nodes("", 1);
        for (const model::Thimac *t : children_[""])
            cluster(*t, 1);
        for (const model::Flow &f : m_.flows())
            out_ += "  " + q(f.from) + " -> " + q(f.to) + ";\n";
        for (const model::Trigger &t : m_.triggers()) {
            out_ += "  " + q(t.from) + " -> " + q(t.to) + " [style=dashed";
            if (t.condition) out_ += ", label=" + q(*t.condition);
            out_ += "];\n";
        }
        out_ += "}\n";
        return std::move(out_);
    }

private:
    void indent(int depth) { out_.append(static_cast<std::size_t>(depth) * 2, ' '); }

    void nodes(const std::string &owner, int depth) {
        for (const model::Storage *s : storages_[owner]) {
            indent(depth);
            out_ += q(s->id) + " [shape=cylinder, label=" + q(s->name) + "];\n";
        }
        for (const model::Action *a : actions_[owner]) {
            std::string label = std::string(model::to_string(a->kind)) + "\n"
                    + model::local_name(a->id, a->owner);
            if (a->anchor) label += " (" + *a->anchor + ")";
            indent(depth);
            out_ += q(a->id) + " [shape=box, label=" + q(label) + "];\n";
        }
    }

    void cluster(const model::Thimac &t, int depth) {
        indent(depth);
        out_ += "subgraph " + q("cluster_" + t.id) + " {\n";
        indent(depth + 1);
        out_ += "label=" + q(t.name) + ";\n";
        nodes(t.id, depth + 1);
        for (const model::Thimac *child : children_[t.id])
            cluster(*child, depth + 1);
        indent(depth);
        out_ += "}\n";
    }

    const model::StaticModel &m_;
    std::map<std::string, std::vector<const model::Thimac *>> children_;
    std::map<std::string, std::vector<const model::Action *>> actions_;
    std::map<std::string, std::vector<const model::Storage *>> storages_;
    std::string out_;
};

} // namespace

std::string to_dot(const model::StaticModel &model) {
    return ModelDot(model).run();
}

std::string to_dot(const dynamics::ChronologyGraph &chronology, std::string_view name) {
    std::string out = "digraph " + q(name) + " {\n";
    out += "  node [shape=ellipse, fontname=\"Helvetica\"];\n";
    for (const dynamics::Event &e : chronology.events())
        out += "  " + q(e.id()) + " [label=" + q(e.id() + "\n" + e.label()) + "];\n";
    for (const dynamics::ChronologyEdge &e : chronology.edges()) {
        std::string label;
        if (e.guard) label = (e.guard->when ? "" : "not ") + e.guard->label;
        if (auto bound = chronology.bound_of(e.from, e.to)) {
            if (!label.empty()) label += ", ";
            label += "bound " + std::to_string(*bound);
        }
        out += "  " + q(e.from) + " -> " + q(e.to);
        if (!label.empty()) out += " [label=" + q(label) + "]";
        out += ";\n";
    }
    out += "}\n";
    return out;
}

} // namespace tmkit::convert
