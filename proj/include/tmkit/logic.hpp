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

#ifndef TMKIT_LOGIC_HPP
#define TMKIT_LOGIC_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tmkit/model.hpp"

namespace tmkit::logic {

/// A propositional variable with a polarity. Negation flips the flag, so a
/// double negation can never be represented.
struct Literal {
    std::string variable;
    bool negative = false;

    Literal negated() const { return Literal {variable, !negative}; }
    std::string to_string() const { return (negative ? "~" : "") + variable; }

    auto operator<=>(const Literal &) const = default;
    bool operator==(const Literal &) const = default;
};

/// Where an implication came from: premise `premise` (1-based) itself, or
/// the contrapositive of that premise.
struct Origin {
    std::size_t premise = 0;
    bool contrapositive = false;

    std::string to_string() const;
    auto operator<=>(const Origin &) const = default;
    bool operator==(const Origin &) const = default;
};

struct Implication {
    Literal antecedent;
    Literal consequent;
    Origin origin;

    std::string to_string() const {
        return antecedent.to_string() + " -> " + consequent.to_string();
    }
    bool operator==(const Implication &) const = default;
};

class Argument {
public:
    /// Rejects (LogicError) a goal or premise whose two sides are the same
    /// literal, and a goal mentioning a variable absent from the premises.
    /// With no premises the goal is left unchecked against premise variables.
    Argument(std::vector<Implication> premises, Implication goal);

    const std::vector<Implication> &premises() const { return premises_; }
    const Implication &goal() const { return goal_; }
    /// Distinct variables of premises and goal, sorted.
    std::vector<std::string> variables() const;

private:
    std::vector<Implication> premises_;
    Implication goal_;
};

/// Each premise followed by its contrapositive (tagged with the premise
/// index), skipping any implication already present.
std::vector<Implication> close_contrapositive(std::span<const Implication> premises);

struct ProofPath {
    Literal start;
    Literal end;
    std::vector<Implication> steps;
};

/// Breadth-first search over the contrapositive-closed premises from the goal
/// antecedent to the goal consequent. Returns a shortest chain; among equal
/// lengths the one discovered first when edges are scanned in premise order.
std::optional<ProofPath> derive(const Argument &argument);

inline constexpr std::size_t max_truth_table_variables = 24;

struct TruthTableOptions {
    /// Without premises the goal is judged on its own (valid iff it is a
    /// tautology). Off by default: an empty premise list is rejected.
    bool allow_empty_premises = false;
    /// Use the parallel kernel (the verdict and countermodel are the same).
    bool parallel = true;
};

struct TruthTableResult {
    bool valid = true;
    /// Lexicographically first falsifying assignment, variables sorted and
    /// F before T.
    std::optional<std::vector<std::pair<std::string, bool>>> countermodel;
    std::uint64_t rows = 0;
};

/// Enumerates all 2^n assignments. Throws LogicError above
/// max_truth_table_variables variables.
TruthTableResult truth_table_validate(const Argument &argument, TruthTableOptions options = {});

/// One thimac per distinct literal holding a single create action ("the
/// proposition holds"); each implication becomes a trigger between the two
/// create actions with the origin as its condition.
model::StaticModel encode_as_tm(
        std::span<const Implication> implications, std::string name = "argument");

/// Id of the create action that stands for `literal` in encode_as_tm output.
std::string encoded_action_id(const Literal &literal);

/// `a -> b` per line, `~` for negation, `#` comments, final line
/// `|- a -> b` for the goal.
Argument parse_argument(std::string_view text);

/// One implication per line with its origin, e.g. "t -> ~u [contrapositive of 3]".
std::string format_proof(const ProofPath &path);

} // namespace tmkit::logic

#endif // TMKIT_LOGIC_HPP
