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

#ifndef TMKIT_DSL_HPP
#define TMKIT_DSL_HPP

#include <cstddef>
#include <string>
#include <string_view>

#include "tmkit/document.hpp"
#include "tmkit/error.hpp"

/// The `.tm` text format.
///
///     model atm {
///       thimac bank "Bank system" {
///         storage accounts "card number/account number file"
///         receive card_number_in
///         process search "find the card number" @8
///         card_number_in -> search
///         accounts -> search
///         search ~> ATM/account_error if "card number not found"
///       }
///     }
///     events {
///       E7 "The account file is accessed in the bank" { bank/card_number_in, bank/search }
///     }
///     chronology {
///       E6 -> E7
///       E8 -> E10 if "account found"
///       E8 -> E9 if not "account found"
///       E18 -> E13 bound 3
///     }
///
/// Element ids are containment paths: thimac `bank` owns action
/// `bank/search`. A name used in an edge resolves against the enclosing
/// thimac first, then each outer one, then the model root; a leading `/`
/// makes it absolute. `#` starts a comment that runs to the end of the line.
namespace tmkit::dsl {

struct SourceSpan {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t length = 0;
    bool operator==(const SourceSpan &) const = default;
};

class ParseError : public FormatError {
public:
    ParseError(SourceSpan span, std::string expected, std::string found);

    const SourceSpan &span() const { return span_; }
    const std::string &expected() const { return expected_; }
    const std::string &found() const { return found_; }

private:
    SourceSpan span_;
    std::string expected_;
    std::string found_;
};

/// Throws ParseError on the first syntax error or unresolved name. Semantic
/// failures in the dynamic sections (disconnected regions, unbounded
/// cycles) surface as DynamicsError.
Document parse(std::string_view text);

/// Canonical text: thimacs in declaration order, inside each thimac its note,
/// storages, actions, nested thimacs, flows, then triggers; two-space
/// indentation and one element per line. Flows and triggers are written in
/// the thimac that owns their source. Element ids are expected to follow
/// the containment-path convention.
std::string format(const Document &document);
std::string format(const model::StaticModel &model);

bool is_identifier(std::string_view text);

} // namespace tmkit::dsl

#endif // TMKIT_DSL_HPP
