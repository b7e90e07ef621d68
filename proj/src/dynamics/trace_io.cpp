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

#include <sstream>

#include <json.hpp>

#include "tmkit/dynamics.hpp"

namespace tmkit::dynamics {

namespace {

std::string_view trim(std::string_view s) {
    const char *ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

} // namespace

Scenario parse_scenario(std::string_view text, std::string name) {
    Scenario scenario {std::move(name), {}};
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view {} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        auto where = [&] { return "scenario line " + std::to_string(line_no) + ": "; };
        auto eq = line.rfind('=');
        if (eq == std::string_view::npos)
            throw FormatError(where() + "expected 'guard = T|F[,T|F...]'");
        std::string label(trim(line.substr(0, eq)));
        if (label.empty()) throw FormatError(where() + "missing guard label");
        std::vector<bool> choices;
        std::string_view rest = line.substr(eq + 1);
        while (true) {
            auto comma = rest.find(',');
            std::string_view tok = trim(rest.substr(0, comma));
            if (tok == "T")
                choices.push_back(true);
            else if (tok == "F")
                choices.push_back(false);
            else
                throw FormatError(where() + "expected T or F, found '" + std::string(tok) + "'");
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (!scenario.decisions.emplace(label, std::move(choices)).second)
            throw FormatError(where() + "guard '" + label + "' given twice");
    }
    return scenario;
}

std::string format_scenario(const Scenario &scenario) {
    std::string out;
    for (const auto &[label, choices] : scenario.decisions) {
        out += label + " = ";
        for (std::size_t i = 0; i < choices.size(); ++i)
            out += std::string(i ? "," : "") + (choices[i] ? "T" : "F");
        out += "\n";
    }
    return out;
}

std::string trace_to_json(const Trace &trace) {
    nlohmann::ordered_json doc;
    doc["scenario"] = trace.scenario;
    doc["steps"] = nlohmann::ordered_json::array();
    for (const TraceStep &s : trace.steps)
        doc["steps"].push_back(nlohmann::ordered_json {{"index", s.index}, {"event", s.event}});
    return doc.dump(2) + "\n";
}

Trace trace_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw FormatError(std::string("trace: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("trace: $ must be an object");
    Trace trace;
    if (doc.contains("scenario")) {
        if (!doc["scenario"].is_string()) throw FormatError("trace: $.scenario must be a string");
        trace.scenario = doc["scenario"].get<std::string>();
    }
    if (!doc.contains("steps") || !doc["steps"].is_array())
        throw FormatError("trace: $.steps must be an array");
    const auto &steps = doc["steps"];
    for (std::size_t i = 0; i < steps.size(); ++i) {
        std::string path = "trace: $.steps[" + std::to_string(i) + "]";
        const auto &s = steps[i];
        if (!s.is_object() || !s.contains("index") || !s.contains("event"))
            throw FormatError(path + " must be {\"index\", \"event\"}");
        if (!s["index"].is_number_unsigned()) throw FormatError(path + ".index must be unsigned");
        if (!s["event"].is_string()) throw FormatError(path + ".event must be a string");
        trace.steps.push_back(TraceStep {s["event"].get<std::string>(), s["index"].get<std::size_t>()});
    }
    return trace;
}

std::string format_trace(const Trace &trace, const ChronologyGraph &chronology) {
    std::ostringstream out;
    out << "trace for scenario '" << trace.scenario << "' (" << trace.steps.size() << " steps)\n";
    for (const TraceStep &s : trace.steps) {
        out << "  " << s.index << "  " << s.event;
        if (const Event *e = chronology.find_event(s.event); e && !e->label().empty())
            out << "  " << e->label();
        out << "\n";
    }
    return out.str();
}

} // namespace tmkit::dynamics
