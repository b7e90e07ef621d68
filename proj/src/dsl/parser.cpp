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

#include <array>
#include <cctype>
#include <charconv>
#include <map>

#include "tmkit/dsl.hpp"

namespace tmkit::dsl {

namespace {

constexpr std::array<std::string_view, 14> kKeywords = {"model", "thimac", "storage", "note",
        "create", "process", "release", "transfer", "receive", "if", "not", "bound", "events",
        "chronology"};

bool is_keyword(std::string_view s) {
    for (std::string_view k : kKeywords)
        if (k == s) return true;
    return false;
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

} // namespace

bool is_identifier(std::string_view text) {
    if (text.empty() || is_keyword(text)) return false;
    for (char c : text)
        if (!is_name_char(c)) return false;
    return true;
}

ParseError::ParseError(SourceSpan span, std::string expected, std::string found)
    : FormatError("line " + std::to_string(span.line) + ", column " + std::to_string(span.column)
              + ": expected " + expected + ", found " + found),
      span_(span),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok { name, string, arrow, squiggle, lbrace, rbrace, at, comma, end };

struct Token {
    Tok kind;
    std::string text; // decoded value for strings
    SourceSpan span;
};

std::string show(const Token &t) {
    switch (t.kind) {
        case Tok::name: return "'" + t.text + "'";
        case Tok::string: return "string \"" + t.text + "\"";
        case Tok::arrow: return "'->'";
        case Tok::squiggle: return "'~>'";
        case Tok::lbrace: return "'{'";
        case Tok::rbrace: return "'}'";
        case Tok::at: return "'@'";
        case Tok::comma: return "','";
        case Tok::end: return "end of input";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_trivia();
        SourceSpan span {line_, column_, 0};
        if (pos_ >= text_.size()) return Token {Tok::end, {}, span};
        char c = text_[pos_];
        auto single = [&](Tok kind, std::size_t n) {
            span.length = n;
            advance(n);
            return Token {kind, {}, span};
        };
        if (c == '{') return single(Tok::lbrace, 1);
        if (c == '}') return single(Tok::rbrace, 1);
        if (c == '@') return single(Tok::at, 1);
        if (c == ',') return single(Tok::comma, 1);
        if (text_.substr(pos_, 2) == "->") return single(Tok::arrow, 2);
        if (text_.substr(pos_, 2) == "~>") return single(Tok::squiggle, 2);
        if (c == '"') return string_literal(span);
        if (is_name_char(c) || c == '/') {
            std::size_t start = pos_;
            while (pos_ < text_.size() && (is_name_char(text_[pos_]) || text_[pos_] == '/'))
                advance(1);
            span.length = pos_ - start;
            return Token {Tok::name, std::string(text_.substr(start, pos_ - start)), span};
        }
        span.length = 1;
        throw ParseError(span, "a token", "'" + std::string(1, c) + "'");
    }

private:
    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
            if (text_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
        }
    }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance(1);
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance(1);
            } else {
                break;
            }
        }
    }

    Token string_literal(SourceSpan span) {
        std::size_t start = pos_;
        advance(1);
        std::string value;
        while (true) {
            if (pos_ >= text_.size() || text_[pos_] == '\n') {
                span.length = pos_ - start;
                throw ParseError(span, "closing '\"'",
                        pos_ >= text_.size() ? "end of input" : "end of line");
            }
            char c = text_[pos_];
            if (c == '"') break;
            if (c == '\\') {
                if (pos_ + 1 >= text_.size()) continue; // reported as unterminated
                char e = text_[pos_ + 1];
                if (e == 'n')
                    value.push_back('\n');
                else if (e == 't')
                    value.push_back('\t');
                else if (e == '"' || e == '\\')
                    value.push_back(e);
                else {
                    SourceSpan bad {line_, column_, 2};
                    throw ParseError(bad, "escape \\\" \\\\ \\n or \\t",
                            "'\\" + std::string(1, e) + "'");
                }
                advance(2);
                continue;
            }
            value.push_back(c);
            advance(1);
        }
        advance(1);
        span.length = pos_ - start;
        return Token {Tok::string, std::move(value), span};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

struct PendingEdge {
    bool trigger = false;
    std::string scope; // owning thimac id
    Token from;
    Token to;
    std::optional<std::string> condition;
};

struct PendingEvent {
    Token id;
    std::string label;
    std::vector<Token> region;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { tok_ = lexer_.next(); }

    Document run() {
        expect_keyword("model");
        std::string name = tok_.kind == Tok::string ? tok_.text : expect_name("model name").text;
        if (tok_.kind == Tok::string) shift();
        builder_.emplace(name);
        expect(Tok::lbrace, "'{'");
        while (!at(Tok::rbrace))
            thimac_decl(std::nullopt);
        shift();
        resolve_edges();

        Document doc {std::move(*builder_).build(), {}, std::nullopt};
        std::vector<PendingEvent> events;
        if (at_keyword("events")) {
            shift();
            expect(Tok::lbrace, "'{'");
            while (!at(Tok::rbrace))
                events.push_back(event_decl());
            shift();
        }
        for (PendingEvent &e : events) {
            std::vector<std::string> region;
            for (const Token &ref : e.region)
                region.push_back(resolve_event_action(doc.model, ref));
            doc.events.push_back(dynamics::define_event(doc.model, e.id.text, e.label, region));
        }

        if (at_keyword("chronology")) {
            shift();
            doc.chronology = chronology_section(doc.events);
        }
        if (!at(Tok::end)) fail("'events', 'chronology' or end of input");
        return doc;
    }

private:
    void shift() { tok_ = lexer_.next(); }
    bool at(Tok k) const { return tok_.kind == k; }
    bool at_keyword(std::string_view kw) const { return tok_.kind == Tok::name && tok_.text == kw; }

    [[noreturn]] void fail(const std::string &expected) const {
        throw ParseError(tok_.span, expected, show(tok_));
    }

    Token expect(Tok k, const std::string &what) {
        if (!at(k)) fail(what);
        Token t = tok_;
        shift();
        return t;
    }

    void expect_keyword(std::string_view kw) {
        if (!at_keyword(kw)) fail("'" + std::string(kw) + "'");
        shift();
    }

    // A simple (unqualified) name that is not a keyword.
    Token expect_name(const std::string &what) {
        if (!at(Tok::name) || !is_identifier(tok_.text)) fail(what);
        Token t = tok_;
        shift();
        return t;
    }

    Token expect_ref(const std::string &what) {
        if (!at(Tok::name) || tok_.text.empty() || tok_.text.back() == '/') fail(what);
        Token t = tok_;
        shift();
        return t;
    }

    std::optional<std::string> optional_string() {
        if (!at(Tok::string)) return std::nullopt;
        std::string s = tok_.text;
        shift();
        return s;
    }

    std::string add_element(const Token &where, auto spec) {
        try {
            return builder_->add(spec);
        } catch (const ModelError &e) {
            throw ParseError(where.span, "a unique name", where.text + " (" + e.what() + ")");
        }
    }

    void thimac_decl(const std::optional<std::string> &parent) {
        expect_keyword("thimac");
        Token name = expect_name("thimac name");
        std::optional<std::string> display = optional_string();
        std::string id = parent ? *parent + "/" + name.text : name.text;
        expect(Tok::lbrace, "'{'");

        // Registered before the body so nested thimacs can name it as parent;
        // a note is attached once the whole model has been read.
        add_element(name, model::ThimacSpec {id, display.value_or(name.text), parent, std::nullopt});
        bool has_note = false;

        while (!at(Tok::rbrace)) {
            if (at(Tok::end)) fail("'}'");
            if (at_keyword("thimac")) {
                thimac_decl(id);
            } else if (at_keyword("note")) {
                Token kw = tok_;
                shift();
                if (has_note) throw ParseError(kw.span, "at most one note per thimac", "a second note");
                has_note = true;
                notes_[id] = expect(Tok::string, "note text").text;
            } else if (at_keyword("storage")) {
                shift();
                Token local = expect_name("storage name");
                std::optional<std::string> display_name = optional_string();
                add_element(local, model::StorageSpec {id + "/" + local.text, id,
                                           display_name.value_or(local.text)});
            } else if (at(Tok::name) && model::parse_action_kind(tok_.text)) {
                model::ActionKind kind = *model::parse_action_kind(tok_.text);
                shift();
                Token local = expect_name("action name");
                std::optional<std::string> label = optional_string();
                std::optional<std::string> anchor;
                if (at(Tok::at)) {
                    shift();
                    if (at(Tok::string) || at(Tok::name)) {
                        anchor = tok_.text;
                        shift();
                    } else {
                        fail("anchor after '@'");
                    }
                }
                add_element(local, model::ActionSpec {id + "/" + local.text, kind, id, label, anchor});
            } else if (at(Tok::name)) {
                PendingEdge edge;
                edge.scope = id;
                edge.from = expect_ref("element name");
                if (at(Tok::arrow)) {
                    shift();
                } else if (at(Tok::squiggle)) {
                    edge.trigger = true;
                    shift();
                } else {
                    fail("'->' or '~>'");
                }
                edge.to = expect_ref("element name");
                if (edge.trigger && at_keyword("if")) {
                    shift();
                    edge.condition = expect(Tok::string, "condition string").text;
                }
                edges_.push_back(std::move(edge));
            } else {
                fail("a declaration, flow, trigger or '}'");
            }
        }
        shift();
    }

    std::optional<std::string> resolve(const std::string &scope, const std::string &ref,
            const model::StaticModel &m) const {
        auto is_node = [&](const std::string &id) {
            return m.find_action(id) != nullptr || m.find_storage(id) != nullptr;
        };
        if (!ref.empty() && ref.front() == '/') {
            std::string id = ref.substr(1);
            return is_node(id) ? std::optional<std::string>(id) : std::nullopt;
        }
        std::string s = scope;
        while (true) {
            std::string candidate = s.empty() ? ref : s + "/" + ref;
            if (is_node(candidate)) return candidate;
            if (s.empty()) return std::nullopt;
            auto slash = s.rfind('/');
            s = slash == std::string::npos ? std::string {} : s.substr(0, slash);
        }
    }

    void resolve_edges() {
        if (!notes_.empty()) {
            // No edges exist yet, so the model can be rebuilt with notes attached.
            model::StaticModel m = std::move(*builder_).build();
            std::vector<model::Thimac> thimacs(m.thimacs().begin(), m.thimacs().end());
            for (model::Thimac &t : thimacs)
                if (auto it = notes_.find(t.id); it != notes_.end()) t.note = it->second;
            std::vector<model::Action> actions(m.actions().begin(), m.actions().end());
            std::vector<model::Storage> storages(m.storages().begin(), m.storages().end());
            builder_.emplace(model::StaticModel::from_parts(
                    m.name(), std::move(thimacs), std::move(actions), std::move(storages), {}, {}));
        }
        const model::StaticModel &m = builder_->peek();
        for (const PendingEdge &edge : edges_) {
            auto from = resolve(edge.scope, edge.from.text, m);
            if (!from) throw ParseError(edge.from.span, "a declared action or storage",
                    "unresolved name '" + edge.from.text + "'");
            auto to = resolve(edge.scope, edge.to.text, m);
            if (!to) throw ParseError(edge.to.span, "a declared action or storage",
                    "unresolved name '" + edge.to.text + "'");
            try {
                if (edge.trigger)
                    builder_->add(model::TriggerSpec {{}, *from, *to, edge.condition});
                else
                    builder_->add(model::FlowSpec {{}, *from, *to});
            } catch (const ModelError &e) {
                throw ParseError(edge.from.span,
                        edge.trigger ? "a trigger between two distinct actions"
                                     : "a flow between two distinct elements",
                        edge.from.text + (edge.trigger ? " ~> " : " -> ") + edge.to.text + " ("
                                + e.what() + ")");
            }
        }
    }

    PendingEvent event_decl() {
        PendingEvent e;
        e.id = expect_name("event id");
        e.label = expect(Tok::string, "event label").text;
        expect(Tok::lbrace, "'{'");
        e.region.push_back(expect_ref("action name"));
        while (at(Tok::comma)) {
            shift();
            e.region.push_back(expect_ref("action name"));
        }
        expect(Tok::rbrace, "',' or '}'");
        return e;
    }

    std::string resolve_event_action(const model::StaticModel &m, const Token &ref) const {
        auto id = resolve("", ref.text, m);
        if (!id || !m.find_action(*id))
            throw ParseError(ref.span, "a declared action", "unresolved name '" + ref.text + "'");
        return *id;
    }

    dynamics::ChronologyGraph chronology_section(const std::vector<dynamics::Event> &events) {
        expect(Tok::lbrace, "'{'");
        std::vector<dynamics::ChronologyEdge> edges;
        std::vector<dynamics::LoopBound> bounds;
        auto known = [&](const Token &t) {
            for (const dynamics::Event &e : events)
                if (e.id() == t.text) return;
            throw ParseError(t.span, "a declared event", "unresolved name '" + t.text + "'");
        };
        while (!at(Tok::rbrace)) {
            Token from = expect_name("event id or '}'");
            expect(Tok::arrow, "'->'");
            Token to = expect_name("event id");
            known(from);
            known(to);
            dynamics::ChronologyEdge edge {from.text, to.text, std::nullopt};
            if (at_keyword("if")) {
                shift();
                bool when = true;
                if (at_keyword("not")) {
                    shift();
                    when = false;
                }
                edge.guard = dynamics::Guard {expect(Tok::string, "guard string").text, when};
            }
            if (at_keyword("bound")) {
                shift();
                Token n = tok_;
                int value = 0;
                auto [ptr, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), value);
                if (!at(Tok::name) || ec != std::errc {} || ptr != n.text.data() + n.text.size()
                        || value < 1)
                    fail("a positive iteration count");
                shift();
                bounds.push_back(dynamics::LoopBound {from.text, to.text, value});
            }
            edges.push_back(std::move(edge));
        }
        shift();
        return dynamics::build_chronology(events, std::move(edges), std::move(bounds));
    }

    Lexer lexer_;
    Token tok_;
    std::optional<model::ModelBuilder> builder_;
    std::vector<PendingEdge> edges_;
    std::map<std::string, std::string> notes_;
};

} // namespace

Document parse(std::string_view text) {
    return Parser(text).run();
}

} // namespace tmkit::dsl
