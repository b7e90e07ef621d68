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

#include <doctest.h>

#include "support.hpp"

using namespace tmkit;

namespace {

dsl::ParseError parse_error(std::string_view text) {
    try {
        dsl::parse(text);
    } catch (const dsl::ParseError &e) {
        return e;
    }
    FAIL("expected a parse error");
    throw std::logic_error("unreachable");
}

std::vector<std::string> lines_of(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("an empty model parses and formats minimally") {
    Document doc = dsl::parse("model m {}");
    CHECK(doc.model.name() == "m");
    CHECK(doc.model.empty());
    CHECK(doc.events.empty());
    CHECK_FALSE(doc.chronology.has_value());
    CHECK(dsl::format(doc) == "model m {\n}\n");
    CHECK(dsl::parse("model \"two words\" { }").model.name() == "two words");
}

TEST_CASE("names resolve from the innermost thimac outward") {
    Document doc = dsl::parse(R"(
        model m {
          thimac bank "Bank system" {
            note "holds accounts"
            storage accounts "account file"
            transfer in_t
            receive in
            process search "find it" @8
            thimac audit {
              process check @"step 9"
              search ~> check            # resolves to bank/search
              check ~> /bank/in_t if "odd"
            }
            in_t -> in
            in -> search
            accounts -> search
          }
        }
    )");
    const model::StaticModel &m = doc.model;
    REQUIRE(m.find_thimac("bank/audit"));
    CHECK(m.find_thimac("bank")->name == "Bank system");
    CHECK(m.find_thimac("bank")->note == "holds accounts");
    CHECK(m.find_thimac("bank/audit")->parent == "bank");
    CHECK(m.find_storage("bank/accounts")->name == "account file");
    CHECK(m.find_action("bank/search")->label == "find it");
    CHECK(m.find_action("bank/search")->anchor == "8");
    CHECK(m.find_action("bank/audit/check")->anchor == "step 9");
    REQUIRE(m.triggers().size() == 2);
    CHECK(m.triggers()[0].from == "bank/search");
    CHECK(m.triggers()[0].to == "bank/audit/check");
    CHECK(m.triggers()[1].to == "bank/in_t");
    CHECK(m.triggers()[1].condition == "odd");
    CHECK(m.flows().size() == 3);
    CHECK(model::validate(m).empty());
}

TEST_CASE("string escapes survive a round trip") {
    Document doc = dsl::parse(R"(model m { thimac t { create a "say \"hi\"\\ \n\tok" } })");
    CHECK(doc.model.find_action("t/a")->label == "say \"hi\"\\ \n\tok");
    Document again = dsl::parse(dsl::format(doc));
    CHECK(structurally_equal(doc, again));
}

TEST_CASE("events and chronology sections") {
    Document doc = dsl::parse(R"(
        model m {
          thimac t {
            create a
            release b
            process c
            a -> b
          }
        }
        events {
          E1 "make and release" { t/a, t/b }
          E2 "think" { t/c }
          E3 "think again" { t/c }
        }
        chronology {
          E1 -> E2 if not "ready"
          E2 -> E3
          E3 -> E2 bound 2
        }
    )");
    REQUIRE(doc.events.size() == 3);
    CHECK(doc.events[0].region() == std::vector<std::string> {"t/a", "t/b"});
    REQUIRE(doc.chronology);
    CHECK(doc.chronology->edges()[0].guard == dynamics::Guard {"ready", false});
    CHECK(doc.chronology->bound_of("E3", "E2") == 2);
    CHECK_FALSE(doc.chronology->bound_of("E2", "E3").has_value());
    std::string text = dsl::format(doc);
    CHECK(text.find("E1 -> E2 if not \"ready\"") != std::string::npos);
    CHECK(text.find("E3 -> E2 bound 2") != std::string::npos);
}

TEST_CASE("semantic failures in the dynamic sections surface as DynamicsError") {
    CHECK_THROWS_AS(dsl::parse(R"(
        model m { thimac t { create a  process c } }
        events { E1 "split" { t/a, t/c } }
    )"),
            DynamicsError);
    CHECK_THROWS_AS(dsl::parse(R"(
        model m { thimac t { create a  process c  a -> c } }
        events { E1 "x" { t/a }  E2 "y" { t/c } }
        chronology { E1 -> E2  E2 -> E1 }
    )"),
            DynamicsError);
}

TEST_CASE("parse errors carry positions and expectations") {
    SUBCASE("missing closing brace") {
        dsl::ParseError e = parse_error("model m {\n  thimac t {\n    create a\n  }\n");
        CHECK(e.span().line == 5);
        CHECK(e.found() == "end of input");
    }
    SUBCASE("unknown action kind reads as an edge") {
        dsl::ParseError e = parse_error("model m {\n  thimac t {\n    move a\n  }\n}\n");
        CHECK(e.span().line == 3);
        CHECK(e.span().column == 10);
        CHECK(e.expected() == "'->' or '~>'");
        CHECK(std::string(e.what()) == "line 3, column 10: expected '->' or '~>', found 'a'");
    }
    SUBCASE("unresolved reference") {
        dsl::ParseError e = parse_error("model m {\n  thimac t {\n    create a\n    a -> b\n  }\n}\n");
        CHECK(e.span().line == 4);
        CHECK(e.span().column == 10);
        CHECK(e.found().find("b") != std::string::npos);
    }
    SUBCASE("keyword used as a name") {
        dsl::ParseError e = parse_error("model m { thimac process { } }");
        CHECK(e.span().line == 1);
        CHECK(e.span().column == 18);
    }
    SUBCASE("duplicate name") {
        dsl::ParseError e = parse_error("model m { thimac t { create a\nprocess a } }");
        CHECK(e.span().line == 2);
    }
    SUBCASE("unterminated string") {
        dsl::ParseError e = parse_error("model m { thimac t \"oops }");
        CHECK(e.span().line == 1);
        CHECK(e.span().column == 20);
    }
    SUBCASE("event region must name actions") {
        dsl::ParseError e = parse_error("model m { thimac t { storage s } }\nevents { E1 \"x\" { t/s } }");
        CHECK(e.span().line == 2);
    }
}

TEST_CASE("fixtures round-trip through format") {
    for (const char *name : {"atm.tm", "ordering.tm"}) {
        Document doc = testing::load_fixture(name);
        std::string once = dsl::format(doc);
        Document again = dsl::parse(once);
        CHECK_MESSAGE(structurally_equal(doc, again), name);
        CHECK(dsl::format(again) == once);
    }
}

TEST_CASE("random documents round-trip and format canonically") {
    std::mt19937 rng(2026);
    for (int i = 0; i < 300; ++i) {
        Document doc = testing::random_document(rng, i);
        std::string text = dsl::format(doc);
        Document back = dsl::parse(text);
        CHECK_MESSAGE(structurally_equal(doc, back), text);
        CHECK(dsl::format(back) == text);
    }
}

TEST_CASE("error spans stay inside the source") {
    std::string source = testing::read_fixture("ordering.tm");
    std::mt19937 rng(11);
    std::uniform_int_distribution<std::size_t> pos(0, source.size() - 1);
    const std::string junk = "{}\"@~>-#/ x";
    std::uniform_int_distribution<std::size_t> pick(0, junk.size() - 1);
    int errors = 0;
    for (int i = 0; i < 400; ++i) {
        std::string text = source;
        std::size_t at = pos(rng);
        if (i % 2)
            text.erase(at, 1 + at % 3);
        else
            text.insert(at, 1, junk[pick(rng)]);
        try {
            dsl::parse(text);
        } catch (const dsl::ParseError &e) {
            ++errors;
            std::vector<std::string> lines = lines_of(text);
            REQUIRE(e.span().line >= 1);
            REQUIRE(e.span().line <= lines.size() + 1);
            std::size_t width = e.span().line <= lines.size() ? lines[e.span().line - 1].size() : 0;
            CHECK(e.span().column >= 1);
            CHECK(e.span().column <= width + 1);
            CHECK(e.span().column - 1 + e.span().length <= width + 1);
        } catch (const Error &) {
            // Semantic errors outside the grammar.
        }
    }
    CHECK(errors > 100);
}

TEST_CASE("identifiers") {
    CHECK(dsl::is_identifier("card_out_t"));
    CHECK(dsl::is_identifier("E1"));
    CHECK_FALSE(dsl::is_identifier("two words"));
    CHECK_FALSE(dsl::is_identifier(""));
    CHECK_FALSE(dsl::is_identifier("process"));
    CHECK_FALSE(dsl::is_identifier("a/b"));
}
