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
#include <array>
#include <map>

#include "tmkit/convert.hpp"

namespace tmkit::convert {

namespace {

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

void heading(std::string &out, const std::string &title) {
    out += title + "\n" + std::string(title.size(), '-') + "\n";
}

} // namespace

std::string generate_report(const Document &document, const ReportOptions &options) {
    const model::StaticModel &m = document.model;
    std::string out;
    std::string title = "Requirements report: " + m.name();
    out += title + "\n" + std::string(title.size(), '=') + "\n\n";

    heading(out, "1. Thimac inventory");
    std::size_t width = 6;
    for (const model::Thimac &t : m.thimacs())
        width = std::max(width, t.id.size());
    std::map<std::string, std::array<int, 5>> counts;
    std::map<std::string, int> storages;
    for (const model::Action &a : m.actions())
        ++counts[a.owner][static_cast<std::size_t>(a.kind)];
    for (const model::Storage &s : m.storages())
        ++storages[s.owner];
    out += "  " + pad("thimac", width);
    for (model::ActionKind k : model::all_action_kinds)
        out += "  " + std::string(model::to_string(k));
    out += "  storage  name\n";
    for (const model::Thimac &t : m.thimacs()) {
        out += "  " + pad(t.id, width);
        const auto &c = counts[t.id];
        for (model::ActionKind k : model::all_action_kinds) {
            std::string n = std::to_string(c[static_cast<std::size_t>(k)]);
            out += "  " + pad(n, model::to_string(k).size());
        }
        out += "  " + pad(std::to_string(storages[t.id]), 7) + "  " + t.name + "\n";
    }
    out += "  total: " + std::to_string(m.thimacs().size()) + " thimacs, "
            + std::to_string(m.actions().size()) + " actions, "
            + std::to_string(m.storages().size()) + " storages, "
            + std::to_string(m.flows().size()) + " flows, "
            + std::to_string(m.triggers().size()) + " triggers\n";
    if (!options.dropped_terminators.empty()) {
        out += "  dropped terminators:";
        for (const std::string &id : options.dropped_terminators)
            out += " " + id;
        out += "\n";
    }
    out += "\n";

    heading(out, "2. Validation summary");
    std::vector<model::Diagnostic> diagnostics = model::validate(m);
    auto errors = std::count_if(diagnostics.begin(), diagnostics.end(),
            [](const model::Diagnostic &d) { return d.severity == model::Severity::error; });
    out += "  errors: " + std::to_string(errors) + ", warnings: "
            + std::to_string(static_cast<long>(diagnostics.size()) - errors) + "\n";
    for (const model::Diagnostic &d : diagnostics)
        out += "  " + std::string(model::to_string(d.severity)) + " " + model::to_string(d.rule)
                + " " + d.subject + ": " + d.message + "\n";
    out += "\n";

    heading(out, "3. Event catalog");
    if (document.events.empty()) {
        out += "  (no events)\n";
    } else {
        std::size_t id_width = 2;
        for (const dynamics::Event &e : document.events)
            id_width = std::max(id_width, e.id().size());
        for (const dynamics::Event &e : document.events)
            out += "  " + pad(e.id(), id_width) + "  [" + std::to_string(e.region().size())
                    + (e.region().size() == 1 ? " action]  " : " actions] ") + e.label() + "\n";
        std::vector<std::string> uncovered = dynamics::check_coverage(m, document.events);
        if (!uncovered.empty())
            out += "  actions in no event: " + std::to_string(uncovered.size()) + "\n";
    }

    if (!options.scenarios.empty()) {
        out += "\n";
        heading(out, "4. Chronology paths");
        for (const dynamics::Scenario &s : options.scenarios) {
            out += "  scenario " + s.name + ": ";
            if (!document.chronology) {
                out += "no chronology\n";
                continue;
            }
            try {
                dynamics::Trace trace = dynamics::simulate(*document.chronology, s);
                for (std::size_t i = 0; i < trace.steps.size(); ++i)
                    out += (i ? " -> " : "") + trace.steps[i].event;
                out += "\n";
            } catch (const DynamicsError &e) {
                out += std::string("simulation failed: ") + e.what() + "\n";
            }
        }
    }
    return out;
}

} // namespace tmkit::convert
