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
#include <cctype>
#include <deque>
#include <map>
#include <set>

#include "tmkit/logic.hpp"
#include "tmkit/truth_table_kernel.hpp"

namespace tmkit::logic {

std::string Origin::to_string() const {
    return (contrapositive ? "contrapositive of " : "premise ") + std::to_string(premise);
}

Argument::Argument(std::vector<Implication> premises, Implication goal)
    : premises_(std::move(premises)), goal_(std::move(goal)) {
    for (const Implication &p : premises_)
        if (p.antecedent == p.consequent)
            throw LogicError("premise " + std::to_string(p.origin.premise) + " (" + p.to_string()
                    + ") has the same literal on both sides");
    if (goal_.antecedent == goal_.consequent)
        throw LogicError("goal " + goal_.to_string() + " has the same literal on both sides");
    if (premises_.empty()) return;
    std::set<std::string> known;
    for (const Implication &p : premises_) {
        known.insert(p.antecedent.variable);
        known.insert(p.consequent.variable);
    }
    for (const Literal *lit : {&goal_.antecedent, &goal_.consequent})
        if (!known.count(lit->variable))
            throw LogicError("goal variable '" + lit->variable + "' does not occur in any premise");
}

std::vector<std::string> Argument::variables() const {
    std::set<std::string> vars {goal_.antecedent.variable, goal_.consequent.variable};
    for (const Implication &p : premises_) {
        vars.insert(p.antecedent.variable);
        vars.insert(p.consequent.variable);
    }
    return {vars.begin(), vars.end()};
}

std::vector<Implication> close_contrapositive(std::span<const Implication> premises) {
    std::vector<Implication> closed;
    std::set<std::pair<Literal, Literal>> present;
    auto add = [&](Implication imp) {
        if (present.emplace(imp.antecedent, imp.consequent).second) closed.push_back(std::move(imp));
    };
    for (const Implication &p : premises) {
        add(p);
        add(Implication {p.consequent.negated(), p.antecedent.negated(),
                Origin {p.origin.premise, !p.origin.contrapositive}});
    }
    return closed;
}

std::optional<ProofPath> derive(const Argument &argument) {
    std::vector<Implication> edges = close_contrapositive(argument.premises());
    std::stable_sort(edges.begin(), edges.end(),
            [](const Implication &a, const Implication &b) { return a.origin < b.origin; });
    std::map<Literal, std::vector<const Implication *>> next;
    for (const Implication &e : edges)
        next[e.antecedent].push_back(&e);

    const Literal &start = argument.goal().antecedent;
    const Literal &end = argument.goal().consequent;
    std::map<Literal, const Implication *> via;
    std::set<Literal> seen {start};
    std::deque<Literal> queue {start};
    while (!queue.empty() && !seen.count(end)) {
        Literal cur = queue.front();
        queue.pop_front();
        auto it = next.find(cur);
        if (it == next.end()) continue;
        for (const Implication *e : it->second) {
            if (!seen.insert(e->consequent).second) continue;
            via[e->consequent] = e;
            queue.push_back(e->consequent);
        }
    }
    if (!seen.count(end)) return std::nullopt;

    ProofPath path {start, end, {}};
    for (Literal cur = end; cur != start; cur = via.at(cur)->antecedent)
        path.steps.push_back(*via.at(cur));
    std::reverse(path.steps.begin(), path.steps.end());
    return path;
}

TruthTableResult truth_table_validate(const Argument &argument, TruthTableOptions options) {
    if (argument.premises().empty() && !options.allow_empty_premises)
        throw LogicError("argument has no premises (enable allow_empty_premises to test the goal "
                         "as a tautology)");
    const std::vector<std::string> vars = argument.variables();
    if (vars.size() > max_truth_table_variables)
        throw LogicError("argument has " + std::to_string(vars.size())
                + " variables; truth tables are limited to "
                + std::to_string(max_truth_table_variables));

    auto index_of = [&](const Literal &lit) {
        auto it = std::lower_bound(vars.begin(), vars.end(), lit.variable);
        return kernel::CompiledLiteral {static_cast<std::uint32_t>(it - vars.begin()), lit.negative};
    };
    auto compile = [&](const Implication &imp) {
        return kernel::CompiledImplication {index_of(imp.antecedent), index_of(imp.consequent)};
    };
    kernel::CompiledArgument compiled;
    compiled.variables = static_cast<std::uint32_t>(vars.size());
    for (const Implication &p : argument.premises())
        compiled.premises.push_back(compile(p));
    compiled.goal = compile(argument.goal());

    const std::uint64_t row = options.parallel ? kernel::first_countermodel_parallel(compiled)
                                               : kernel::first_countermodel_serial(compiled);
    TruthTableResult result;
    result.rows = compiled.rows();
    result.valid = row == compiled.rows();
    if (!result.valid) {
        std::vector<std::pair<std::string, bool>> assignment;
        for (std::size_t i = 0; i < vars.size(); ++i)
            assignment.emplace_back(vars[i], (row >> (vars.size() - 1 - i)) & 1U);
        result.countermodel = std::move(assignment);
    }
    return result;
}

std::string encoded_action_id(const Literal &literal) {
    return (literal.negative ? "not_" : "") + literal.variable + "/holds";
}

model::StaticModel encode_as_tm(std::span<const Implication> implications, std::string name) {
    model::ModelBuilder builder(std::move(name));
    std::set<Literal> placed;
    auto place = [&](const Literal &lit) {
        if (!placed.insert(lit).second) return;
        std::string thimac = builder.add(model::ThimacSpec {
                (lit.negative ? "not_" : "") + lit.variable, lit.to_string(), std::nullopt,
                std::nullopt});
        builder.add(model::ActionSpec {thimac + "/holds", model::ActionKind::create, thimac,
                "the proposition holds", std::nullopt});
    };
    for (const Implication &imp : implications) {
        place(imp.antecedent);
        place(imp.consequent);
    }
    for (const Implication &imp : implications)
        builder.add(model::TriggerSpec {{}, encoded_action_id(imp.antecedent),
                encoded_action_id(imp.consequent), imp.origin.to_string()});
    return std::move(builder).build();
}

namespace {

struct ArgumentLexer {
    std::string_view line;
    std::size_t line_no;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string &what) const {
        throw FormatError("argument line " + std::to_string(line_no) + ", column "
                + std::to_string(pos + 1) + ": " + what);
    }
    void skip_ws() {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
            ++pos;
    }
    bool eat(std::string_view tok) {
        skip_ws();
        if (line.substr(pos, tok.size()) != tok) return false;
        pos += tok.size();
        return true;
    }
    Literal literal() {
        bool negative = false;
        while (eat("~"))
            negative = !negative;
        skip_ws();
        std::size_t start = pos;
        while (pos < line.size()
                && (std::isalnum(static_cast<unsigned char>(line[pos])) || line[pos] == '_'))
            ++pos;
        if (start == pos) fail("expected a variable name");
        if (std::isdigit(static_cast<unsigned char>(line[start]))) {
            pos = start;
            fail("variable names start with a letter or '_'");
        }
        return Literal {std::string(line.substr(start, pos - start)), negative};
    }
    std::pair<Literal, Literal> implication() {
        Literal a = literal();
        if (!eat("->")) fail("expected '->'");
        Literal b = literal();
        skip_ws();
        if (pos != line.size()) fail("unexpected trailing text");
        return {std::move(a), std::move(b)};
    }
};

} // namespace

Argument parse_argument(std::string_view text) {
    std::vector<Implication> premises;
    std::optional<Implication> goal;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view {} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        ArgumentLexer lex {line, line_no};
        lex.skip_ws();
        if (lex.pos == line.size()) continue;
        if (goal) lex.fail("nothing may follow the goal line");
        if (lex.eat("|-")) {
            auto [a, b] = lex.implication();
            goal = Implication {std::move(a), std::move(b), Origin {0, false}};
        } else {
            auto [a, b] = lex.implication();
            premises.push_back(
                    Implication {std::move(a), std::move(b), Origin {premises.size() + 1, false}});
        }
    }
    if (!goal) throw FormatError("argument has no goal line ('|- a -> b')");
    return Argument(std::move(premises), std::move(*goal));
}

std::string format_proof(const ProofPath &path) {
    std::string out;
    for (const Implication &step : path.steps)
        out += step.to_string() + " [" + step.origin.to_string() + "]\n";
    return out;
}

} // namespace tmkit::logic
