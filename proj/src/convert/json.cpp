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

#include <set>

#include <json.hpp>

#include "tmkit/convert.hpp"

namespace tmkit::convert {

using ojson = nlohmann::ordered_json;

namespace {

ojson opt(const std::optional<std::string> &v) {
    return v ? ojson(*v) : ojson(nullptr);
}

ojson model_json(const model::StaticModel &m) {
    ojson doc;
    doc["name"] = m.name();
    doc["thimacs"] = ojson::array();
    for (const model::Thimac &t : m.thimacs())
        doc["thimacs"].push_back(ojson {{"id", t.id}, {"name", t.name}, {"parent", opt(t.parent)},
                {"note", opt(t.note)}});
    doc["actions"] = ojson::array();
    for (const model::Action &a : m.actions())
        doc["actions"].push_back(ojson {{"id", a.id}, {"kind", model::to_string(a.kind)},
                {"owner", a.owner}, {"label", opt(a.label)}, {"anchor", opt(a.anchor)}});
    doc["storages"] = ojson::array();
    for (const model::Storage &s : m.storages())
        doc["storages"].push_back(ojson {{"id", s.id}, {"owner", s.owner}, {"name", s.name}});
    doc["flows"] = ojson::array();
    for (const model::Flow &f : m.flows())
        doc["flows"].push_back(ojson {{"id", f.id}, {"from", f.from}, {"to", f.to}});
    doc["triggers"] = ojson::array();
    for (const model::Trigger &t : m.triggers())
        doc["triggers"].push_back(ojson {{"id", t.id}, {"from", t.from}, {"to", t.to},
                {"condition", opt(t.condition)}});
    return doc;
}

// Typed accessors that report the JSON path of whatever is wrong.
class Reader {
public:
    static const nlohmann::json &object(const nlohmann::json &v, const std::string &path) {
        if (!v.is_object()) throw JsonError(path, "expected an object");
        return v;
    }
    static const nlohmann::json &array(const nlohmann::json &v, const std::string &path) {
        if (!v.is_array()) throw JsonError(path, "expected an array");
        return v;
    }
    static const nlohmann::json &field(
            const nlohmann::json &obj, const char *key, const std::string &path) {
        auto it = obj.find(key);
        if (it == obj.end()) throw JsonError(path + "." + key, "missing required field");
        return *it;
    }
    static std::string string(const nlohmann::json &obj, const char *key, const std::string &path) {
        const nlohmann::json &v = field(obj, key, path);
        if (!v.is_string()) throw JsonError(path + "." + key, "expected a string");
        return v.get<std::string>();
    }
    static std::optional<std::string> optional_string(
            const nlohmann::json &obj, const char *key, const std::string &path) {
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) return std::nullopt;
        if (!it->is_string()) throw JsonError(path + "." + key, "expected a string or null");
        return it->get<std::string>();
    }
    static const nlohmann::json &optional_array(const nlohmann::json &obj, const char *key,
            const std::string &path) {
        static const nlohmann::json empty = nlohmann::json::array();
        auto it = obj.find(key);
        if (it == obj.end()) return empty;
        return array(*it, path + "." + key);
    }
};

std::string at(const std::string &path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

} // namespace

std::string to_json(const model::StaticModel &model) {
    return model_json(model).dump(2) + "\n";
}

std::string to_json(const Document &document) {
    ojson doc = model_json(document.model);
    doc["events"] = ojson::array();
    for (const dynamics::Event &e : document.events)
        doc["events"].push_back(ojson {{"id", e.id()}, {"label", e.label()}, {"region", e.region()}});
    if (document.chronology) {
        ojson chron;
        chron["edges"] = ojson::array();
        for (const dynamics::ChronologyEdge &e : document.chronology->edges()) {
            ojson guard = e.guard ? ojson {{"label", e.guard->label}, {"when", e.guard->when}}
                                  : ojson(nullptr);
            chron["edges"].push_back(ojson {{"from", e.from}, {"to", e.to}, {"guard", guard}});
        }
        chron["bounds"] = ojson::array();
        for (const dynamics::LoopBound &b : document.chronology->loop_bounds())
            chron["bounds"].push_back(
                    ojson {{"from", b.from}, {"to", b.to}, {"max", b.max_iterations}});
        doc["chronology"] = std::move(chron);
    } else {
        doc["chronology"] = nullptr;
    }
    return doc.dump(2) + "\n";
}

Document from_json(std::string_view text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw JsonError("$", std::string("malformed JSON: ") + e.what());
    }
    using R = Reader;
    R::object(root, "$");
    std::string name = R::string(root, "name", "$");

    std::set<std::string> ids;
    auto claim = [&](const std::string &id, const std::string &path) {
        if (id.empty()) throw JsonError(path + ".id", "id must not be empty");
        if (!ids.insert(id).second) throw JsonError(path + ".id", "duplicate id '" + id + "'");
    };

    std::vector<model::Thimac> thimacs;
    const auto &jt = R::optional_array(root, "thimacs", "$");
    for (std::size_t i = 0; i < jt.size(); ++i) {
        std::string p = at("$.thimacs", i);
        R::object(jt[i], p);
        model::Thimac t {R::string(jt[i], "id", p), R::string(jt[i], "name", p),
                R::optional_string(jt[i], "parent", p), R::optional_string(jt[i], "note", p)};
        claim(t.id, p);
        thimacs.push_back(std::move(t));
    }

    std::vector<model::Action> actions;
    const auto &ja = R::optional_array(root, "actions", "$");
    for (std::size_t i = 0; i < ja.size(); ++i) {
        std::string p = at("$.actions", i);
        R::object(ja[i], p);
        std::string kind_text = R::string(ja[i], "kind", p);
        auto kind = model::parse_action_kind(kind_text);
        if (!kind)
            throw JsonError(p + ".kind", "unknown action kind '" + kind_text
                            + "' (expected create, process, release, transfer or receive)");
        model::Action a {R::string(ja[i], "id", p), *kind, R::string(ja[i], "owner", p),
                R::optional_string(ja[i], "label", p), R::optional_string(ja[i], "anchor", p)};
        claim(a.id, p);
        actions.push_back(std::move(a));
    }

    std::vector<model::Storage> storages;
    const auto &js = R::optional_array(root, "storages", "$");
    for (std::size_t i = 0; i < js.size(); ++i) {
        std::string p = at("$.storages", i);
        R::object(js[i], p);
        model::Storage s {R::string(js[i], "id", p), R::string(js[i], "owner", p),
                R::string(js[i], "name", p)};
        claim(s.id, p);
        storages.push_back(std::move(s));
    }

    std::vector<model::Flow> flows;
    const auto &jf = R::optional_array(root, "flows", "$");
    for (std::size_t i = 0; i < jf.size(); ++i) {
        std::string p = at("$.flows", i);
        R::object(jf[i], p);
        model::Flow f {R::string(jf[i], "id", p), R::string(jf[i], "from", p),
                R::string(jf[i], "to", p)};
        claim(f.id, p);
        flows.push_back(std::move(f));
    }

    std::vector<model::Trigger> triggers;
    const auto &jg = R::optional_array(root, "triggers", "$");
    for (std::size_t i = 0; i < jg.size(); ++i) {
        std::string p = at("$.triggers", i);
        R::object(jg[i], p);
        model::Trigger t {R::string(jg[i], "id", p), R::string(jg[i], "from", p),
                R::string(jg[i], "to", p), R::optional_string(jg[i], "condition", p)};
        claim(t.id, p);
        triggers.push_back(std::move(t));
    }

    Document doc {model::StaticModel::from_parts(std::move(name), std::move(thimacs),
                          std::move(actions), std::move(storages), std::move(flows),
                          std::move(triggers)),
            {}, std::nullopt};

    const auto &je = R::optional_array(root, "events", "$");
    for (std::size_t i = 0; i < je.size(); ++i) {
        std::string p = at("$.events", i);
        R::object(je[i], p);
        std::string id = R::string(je[i], "id", p);
        std::string label = R::string(je[i], "label", p);
        const auto &jr = R::array(R::field(je[i], "region", p), p + ".region");
        std::vector<std::string> region;
        for (std::size_t j = 0; j < jr.size(); ++j) {
            if (!jr[j].is_string()) throw JsonError(at(p + ".region", j), "expected a string");
            region.push_back(jr[j].get<std::string>());
            if (!doc.model.find_action(region.back()))
                throw JsonError(at(p + ".region", j), "unknown action '" + region.back() + "'");
        }
        try {
            doc.events.push_back(dynamics::define_event(doc.model, id, label, std::move(region)));
        } catch (const DynamicsError &e) {
            throw JsonError(p, e.what());
        }
    }

    auto jc = root.find("chronology");
    if (jc != root.end() && !jc->is_null()) {
        const std::string p = "$.chronology";
        R::object(*jc, p);
        std::vector<dynamics::ChronologyEdge> edges;
        const auto &jce = R::optional_array(*jc, "edges", p);
        for (std::size_t i = 0; i < jce.size(); ++i) {
            std::string ep = at(p + ".edges", i);
            R::object(jce[i], ep);
            dynamics::ChronologyEdge e {R::string(jce[i], "from", ep), R::string(jce[i], "to", ep),
                    std::nullopt};
            auto g = jce[i].find("guard");
            if (g != jce[i].end() && !g->is_null()) {
                R::object(*g, ep + ".guard");
                const auto &when = R::field(*g, "when", ep + ".guard");
                if (!when.is_boolean()) throw JsonError(ep + ".guard.when", "expected a boolean");
                e.guard = dynamics::Guard {R::string(*g, "label", ep + ".guard"), when.get<bool>()};
            }
            edges.push_back(std::move(e));
        }
        std::vector<dynamics::LoopBound> bounds;
        const auto &jb = R::optional_array(*jc, "bounds", p);
        for (std::size_t i = 0; i < jb.size(); ++i) {
            std::string bp = at(p + ".bounds", i);
            R::object(jb[i], bp);
            const auto &max = R::field(jb[i], "max", bp);
            if (!max.is_number_integer()) throw JsonError(bp + ".max", "expected an integer");
            bounds.push_back(dynamics::LoopBound {
                    R::string(jb[i], "from", bp), R::string(jb[i], "to", bp), max.get<int>()});
        }
        try {
            doc.chronology = dynamics::build_chronology(doc.events, std::move(edges), std::move(bounds));
        } catch (const DynamicsError &e) {
            throw JsonError(p, e.what());
        }
    }
    return doc;
}

} // namespace tmkit::convert
