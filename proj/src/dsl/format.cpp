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

#include "tmkit/dsl.hpp"

namespace tmkit::dsl {

namespace {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(c);
        }
    }
    return out + "\"";
}

std::string name_or_string(std::string_view s) {
    return is_identifier(s) ? std::string(s) : quote(s);
}

class Formatter {
public:
    explicit Formatter(const model::StaticModel &m) : m_(m) {
        for (const model::Thimac &t : m_.thimacs())
            children_[t.parent.value_or("")].push_back(&t);
        for (const model::Storage &s : m_.storages())
            storages_[s.owner].push_back(&s);
        for (const model::Action &a : m_.actions())
            actions_[a.owner].push_back(&a);
        for (const model::Flow &f : m_.flows())
            flows_[m_.owner_of(f.from).value_or("")].push_back(&f);
        for (const model::Trigger &t : m_.triggers())
            triggers_[m_.owner_of(t.from).value_or("")].push_back(&t);
    }

    std::string run() {
        out_ = "model " + name_or_string(m_.name()) + " {\n";
        for (const model::Thimac *t : children_[""])
            thimac(*t, 1);
        out_ += "}\n";
        return std::move(out_);
    }

private:
    void line(int depth, const std::string &text) {
        out_.append(static_cast<std::size_t>(depth) * 2, ' ');
        out_ += text;
        out_ += '\n';
    }

    void thimac(const model::Thimac &t, int depth) {
        std::string local = model::local_name(t.id, t.parent.value_or(""));
        std::string head = "thimac " + local;
        if (t.name != local) head += " " + quote(t.name);
        line(depth, head + " {");
        if (t.note) line(depth + 1, "note " + quote(*t.note));
        for (const model::Storage *s : storages_[t.id]) {
            std::string local_s = model::local_name(s->id, t.id);
            std::string text = "storage " + local_s;
            if (s->name != local_s) text += " " + quote(s->name);
            line(depth + 1, text);
        }
        for (const model::Action *a : actions_[t.id]) {
            std::string text = std::string(model::to_string(a->kind)) + " "
                    + model::local_name(a->id, t.id);
            if (a->label) text += " " + quote(*a->label);
            if (a->anchor) text += " @" + name_or_string(*a->anchor);
            line(depth + 1, text);
        }
        for (const model::Thimac *child : children_[t.id])
            thimac(*child, depth + 1);
        for (const model::Flow *f : flows_[t.id])
            line(depth + 1, ref(t.id, f->from) + " -> " + ref(t.id, f->to));
        for (const model::Trigger *tr : triggers_[t.id]) {
            std::string text = ref(t.id, tr->from) + " ~> " + ref(t.id, tr->to);
            if (tr->condition) text += " if " + quote(*tr->condition);
            line(depth + 1, text);
        }
        line(depth, "}");
    }

    bool is_node(const std::string &id) const {
        return m_.find_action(id) || m_.find_storage(id);
    }

    // Mirrors the parser's lookup: innermost scope outward, then the root.
    std::string resolve(const std::string &scope, const std::string &text) const {
        std::string s = scope;
        while (true) {
            std::string candidate = s.empty() ? text : s + "/" + text;
            if (is_node(candidate)) return candidate;
            if (s.empty()) return {};
            auto slash = s.rfind('/');
            s = slash == std::string::npos ? std::string {} : s.substr(0, slash);
        }
    }

    std::string ref(const std::string &scope, const std::string &id) const {
        if (id.size() > scope.size() + 1 && id.compare(0, scope.size(), scope) == 0
                && id[scope.size()] == '/') {
            std::string relative = id.substr(scope.size() + 1);
            if (resolve(scope, relative) == id) return relative;
        }
        if (resolve(scope, id) == id) return id;
        return "/" + id;
    }

    const model::StaticModel &m_;
    std::map<std::string, std::vector<const model::Thimac *>> children_;
    std::map<std::string, std::vector<const model::Storage *>> storages_;
    std::map<std::string, std::vector<const model::Action *>> actions_;
    std::map<std::string, std::vector<const model::Flow *>> flows_;
    std::map<std::string, std::vector<const model::Trigger *>> triggers_;
    std::string out_;
};

} // namespace

std::string format(const model::StaticModel &model) {
    return Formatter(model).run();
}

std::string format(const Document &document) {
    std::string out = format(document.model);
    if (!document.events.empty()) {
        out += "events {\n";
        for (const dynamics::Event &e : document.events) {
            out += "  " + e.id() + " " + quote(e.label()) + " { ";
            for (std::size_t i = 0; i < e.region().size(); ++i)
                out += (i ? ", " : "") + e.region()[i];
            out += " }\n";
        }
        out += "}\n";
    }
    if (document.chronology) {
        const dynamics::ChronologyGraph &g = *document.chronology;
        std::map<std::pair<std::string, std::string>, int> bounds;
        for (const dynamics::LoopBound &b : g.loop_bounds())
            bounds[{b.from, b.to}] = b.max_iterations;
        out += "chronology {\n";
        for (const dynamics::ChronologyEdge &e : g.edges()) {
            out += "  " + e.from + " -> " + e.to;
            if (e.guard) out += std::string(" if ") + (e.guard->when ? "" : "not ") + quote(e.guard->label);
            if (auto it = bounds.find({e.from, e.to}); it != bounds.end()) {
                out += " bound " + std::to_string(it->second);
                bounds.erase(it);
            }
            out += "\n";
        }
        out += "}\n";
    }
    return out;
}

} // namespace tmkit::dsl
