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
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "tmkit/cli.hpp"
#include "tmkit/convert.hpp"
#include "tmkit/dsl.hpp"
#include "tmkit/logic.hpp"

namespace tmkit::cli {

namespace {

class IoError : public Error {
public:
    using Error::Error;
};

/// Exit with status 1 after the message has been reported.
class Failed : public Error {
public:
    using Error::Error;
};

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw IoError("cannot write '" + path + "'");
}

Document load_document(const std::string &path) {
    std::string text = read_file(path);
    if (ends_with(path, ".json")) return convert::from_json(text);
    return dsl::parse(text);
}

class Session {
public:
    Session(std::ostream &out, std::ostream &err, bool color) : out_(out), err_(err), color_(color) {}

    int check(const std::string &file) {
        Document doc = load_document(file);
        std::vector<model::Diagnostic> diags = model::validate(doc.model);
        std::size_t errors = report(file, diags);
        out_ << file << ": " << errors << " errors, " << diags.size() - errors << " warnings\n";
        return errors ? failure : success;
    }

    int simplify(const std::string &file, const std::string &output) {
        Document doc = load_document(file);
        model::StaticModel simple;
        try {
            simple = model::simplify(doc.model);
        } catch (const model::SimplifyError &e) {
            report(file, e.diagnostics());
            throw Failed(e.what());
        }
        std::string text = ends_with(output, ".json") ? convert::to_json(simple) : dsl::format(simple);
        emit(output, text);
        return success;
    }

    int events(const std::string &file) {
        Document doc = load_document(file);
        for (const dynamics::Event &e : doc.events)
            out_ << e.id() << "  " << e.region().size() << (e.region().size() == 1 ? " action  " : " actions ")
                 << e.label() << "\n";
        std::vector<std::string> uncovered = dynamics::check_coverage(doc.model, doc.events);
        out_ << doc.events.size() << " events, " << doc.model.actions().size() << " actions, "
             << uncovered.size() << " uncovered\n";
        for (const std::string &id : uncovered)
            out_ << "  uncovered: " << id << "\n";
        return success;
    }

    int simulate(const std::string &file, const std::string &scenario_file, const std::string &trace_file) {
        Document doc = load_document(file);
        const dynamics::ChronologyGraph &g = chronology_of(doc, file);
        dynamics::Scenario scenario = dynamics::parse_scenario(read_file(scenario_file), stem(scenario_file));
        dynamics::Trace trace;
        try {
            trace = dynamics::simulate(g, scenario);
        } catch (const DynamicsError &e) {
            throw Failed(std::string("simulation failed: ") + e.what());
        }
        out_ << dynamics::format_trace(trace, g);
        if (!trace_file.empty()) write_file(trace_file, dynamics::trace_to_json(trace));
        return success;
    }

    int conform(const std::string &file, const std::string &trace_file) {
        Document doc = load_document(file);
        const dynamics::ChronologyGraph &g = chronology_of(doc, file);
        dynamics::Trace trace = dynamics::trace_from_json(read_file(trace_file));
        dynamics::ConformanceResult result = dynamics::conformance(trace, g);
        if (!result.conforms) {
            const dynamics::Violation &v = *result.first_violation;
            throw Failed("trace violates the chronology at step " + std::to_string(v.step) + ": "
                         + v.message);
        }
        out_ << "trace conforms (" << trace.steps.size() << " steps)\n";
        return success;
    }

    int prove(const std::string &file) {
        logic::Argument argument = logic::parse_argument(read_file(file));
        std::optional<logic::ProofPath> path = logic::derive(argument);
        if (!path) throw Failed("no derivation of " + argument.goal().to_string() + " from the premises");
        out_ << "derivation of " << argument.goal().to_string() << " (" << path->steps.size()
             << " steps)\n";
        out_ << logic::format_proof(*path);
        return success;
    }

    int validate_arg(const std::string &file, bool serial) {
        logic::Argument argument = logic::parse_argument(read_file(file));
        logic::TruthTableOptions options;
        options.parallel = !serial;
        logic::TruthTableResult result = logic::truth_table_validate(argument, options);
        if (result.valid) {
            out_ << "valid: " << argument.variables().size() << " variables, " << result.rows
                 << " assignments, 0 countermodels\n";
            return success;
        }
        out_ << "invalid: countermodel";
        for (const auto &[var, value] : *result.countermodel)
            out_ << " " << var << "=" << (value ? "T" : "F");
        out_ << "\n";
        return failure;
    }

    int import(const std::string &file, const std::string &output) {
        convert::FlowchartDoc chart = convert::parse_flowchart(read_file(file));
        model::StaticModel imported;
        try {
            imported = convert::import_flowchart(chart);
        } catch (const convert::ImportError &e) {
            throw Failed(std::string("import rejected: ") + e.what());
        }
        for (const std::string &id : convert::dropped_terminators(chart))
            err_ << paint("note", "36") << ": dropped end node '" << id << "'\n";
        std::string text = ends_with(output, ".json") ? convert::to_json(imported) : dsl::format(imported);
        emit(output, text);
        return success;
    }

    int export_as(const std::string &file, const std::string &format, bool chronology,
            const std::string &output) {
        Document doc = load_document(file);
        std::string text;
        if (format == "json") {
            text = convert::to_json(doc);
        } else if (chronology) {
            text = convert::to_dot(chronology_of(doc, file), doc.model.name());
        } else {
            text = convert::to_dot(doc.model);
        }
        emit(output, text);
        return success;
    }

    int report(const std::string &file, const std::vector<std::string> &scenarios) {
        Document doc = load_document(file);
        convert::ReportOptions options;
        for (const std::string &s : scenarios)
            options.scenarios.push_back(dynamics::parse_scenario(read_file(s), stem(s)));
        out_ << convert::generate_report(doc, options);
        return success;
    }

    std::string paint(const std::string &text, const char *code) const {
        if (!color_) return text;
        return std::string("\x1b[") + code + "m" + text + "\x1b[0m";
    }

private:
    static std::string stem(const std::string &path) {
        std::string name = path.substr(path.find_last_of('/') == std::string::npos ? 0 : path.find_last_of('/') + 1);
        auto dot = name.find_last_of('.');
        return dot == std::string::npos || dot == 0 ? name : name.substr(0, dot);
    }

    static const dynamics::ChronologyGraph &chronology_of(const Document &doc, const std::string &file) {
        if (!doc.chronology) throw Failed("'" + file + "' has no chronology section");
        return *doc.chronology;
    }

    std::size_t report(const std::string &file, const std::vector<model::Diagnostic> &diags) {
        std::size_t errors = 0;
        for (const model::Diagnostic &d : diags) {
            bool is_error = d.severity == model::Severity::error;
            errors += is_error;
            err_ << file << ": "
                 << paint(std::string(model::to_string(d.severity)), is_error ? "31" : "33") << " "
                 << model::to_string(d.rule) << " " << d.subject << ": " << d.message << "\n";
        }
        return errors;
    }

    void emit(const std::string &output, const std::string &text) {
        if (output.empty())
            out_ << text;
        else
            write_file(output, text);
    }

    std::ostream &out_;
    std::ostream &err_;
    bool color_;
};

bool color_from_env() {
    const char *v = std::getenv("TMKIT_COLOR");
    return v && std::string_view(v) == "1";
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    return run(args, out, err, color_from_env());
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, bool color) {
    CLI::App app {"Thinging machine modeling toolkit", "tmkit"};
    app.require_subcommand(1);
    app.fallthrough(false);

    std::string file, output, scenario, trace, format;
    std::vector<std::string> scenarios;
    bool serial = false, chronology = false;

    auto *check = app.add_subcommand("check", "Parse and validate a model");
    check->add_option("FILE", file, ".tm or .json model")->required();

    auto *simplify = app.add_subcommand("simplify", "Remove release, transfer and receive actions");
    simplify->add_option("FILE", file)->required();
    simplify->add_option("-o,--output", output, "Write here instead of stdout (.json selects JSON)");

    auto *events = app.add_subcommand("events", "List events and uncovered actions");
    events->add_option("FILE", file)->required();

    auto *simulate = app.add_subcommand("simulate", "Walk the chronology under a scenario");
    simulate->add_option("FILE", file)->required();
    simulate->add_option("--scenario", scenario, "Scenario file")->required();
    simulate->add_option("--trace", trace, "Also write the trace as JSON");

    auto *conform = app.add_subcommand("conform", "Check a JSON trace against the chronology");
    conform->add_option("FILE", file)->required();
    conform->add_option("--trace", trace, "Trace file")->required();

    auto *prove = app.add_subcommand("prove", "Derive the goal of an implicational argument");
    prove->add_option("ARGFILE", file)->required();

    auto *validate_arg = app.add_subcommand("validate-arg", "Truth-table validity of an argument");
    validate_arg->add_option("ARGFILE", file)->required();
    validate_arg->add_flag("--serial", serial, "Use the serial kernel");

    auto *import = app.add_subcommand("import", "Import a flowchart-lite JSON chart");
    import->add_option("CHART", file)->required();
    import->add_option("-o,--output", output, "Write here instead of stdout (.json selects JSON)");

    auto *export_cmd = app.add_subcommand("export", "Export a model as DOT or JSON");
    export_cmd->add_option("FILE", file)->required();
    export_cmd->add_option("--format", format, "dot or json")
            ->required()
            ->check(CLI::IsMember({"dot", "json"}));
    export_cmd->add_flag("--chronology", chronology, "DOT of the chronology instead of the model");
    export_cmd->add_option("-o,--output", output, "Write here instead of stdout");

    auto *report = app.add_subcommand("report", "Requirements report");
    report->add_option("FILE", file)->required();
    report->add_option("--scenario", scenarios, "Scenario files for chronology paths");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        if (code != 0 && e.get_name() != "CallForHelp") err << app.help();
        return code == 0 ? success : usage;
    }

    Session session(out, err, color);
    try {
        if (check->parsed()) return session.check(file);
        if (simplify->parsed()) return session.simplify(file, output);
        if (events->parsed()) return session.events(file);
        if (simulate->parsed()) return session.simulate(file, scenario, trace);
        if (conform->parsed()) return session.conform(file, trace);
        if (prove->parsed()) return session.prove(file);
        if (validate_arg->parsed()) return session.validate_arg(file, serial);
        if (import->parsed()) return session.import(file, output);
        if (export_cmd->parsed()) return session.export_as(file, format, chronology, output);
        if (report->parsed()) return session.report(file, scenarios);
    } catch (const Failed &e) {
        err << session.paint("error", "31") << ": " << e.what() << "\n";
        return failure;
    } catch (const Error &e) {
        err << session.paint("error", "31") << ": " << e.what() << "\n";
        return usage;
    }
    err << app.help();
    return usage;
}

} // namespace tmkit::cli
