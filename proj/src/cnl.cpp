#include "kgcl/cnl.hpp"

#include <optional>

namespace kgcl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

auto join(const std::vector<std::string>& items, std::string_view sep) -> std::string {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i != 0) out += sep;
        out += items[i];
    }
    return out;
}

auto is_space(char c) noexcept -> bool { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// Columns count code points, not bytes.
auto is_continuation_byte(char c) noexcept -> bool {
    return (static_cast<unsigned char>(c) & 0xC0U) == 0x80U;
}

struct Token {
    enum class Kind { word, quoted } kind;
    std::string text;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : m_text(text) {}

    auto run() -> std::vector<Token> {
        std::vector<Token> out;
        while (true) {
            skip_space();
            if (m_pos >= m_text.size()) break;
            if (m_text[m_pos] == '\'') {
                out.push_back(quoted());
            } else {
                out.push_back(word());
            }
            if (m_pos < m_text.size() && !is_space(m_text[m_pos])) {
                throw ParseError(here(1), {"whitespace"}, std::string(1, m_text[m_pos]));
            }
        }
        return out;
    }

    [[nodiscard]] auto here(int length = 0) const -> SourceSpan { return {m_line, m_column, length}; }

private:
    void advance() {
        const char c = m_text[m_pos++];
        if (c == '\n') {
            ++m_line;
            m_column = 1;
        } else if (!is_continuation_byte(c)) {
            ++m_column;
        }
    }

    void skip_space() {
        while (m_pos < m_text.size() && is_space(m_text[m_pos])) advance();
    }

    auto quoted() -> Token {
        const auto start = here();
        advance();
        std::string value;
        while (m_pos < m_text.size()) {
            const char c = m_text[m_pos];
            if (c == '\'') {
                advance();
                auto span = start;
                span.length = m_line == start.line ? m_column - start.column : 1;
                return {Token::Kind::quoted, std::move(value), span};
            }
            if (c == '\\' && m_pos + 1 < m_text.size() &&
                (m_text[m_pos + 1] == '\'' || m_text[m_pos + 1] == '\\')) {
                advance();
                value += m_text[m_pos];
                advance();
                continue;
            }
            value += c;
            advance();
        }
        throw ParseError(start, {"closing quote"}, "end of input");
    }

    auto word() -> Token {
        const auto start = here();
        std::string value;
        while (m_pos < m_text.size() && !is_space(m_text[m_pos]) && m_text[m_pos] != '\'') {
            value += m_text[m_pos];
            advance();
        }
        auto span = start;
        span.length = m_column - start.column;
        return {Token::Kind::word, std::move(value), span};
    }

    std::string_view m_text;
    std::size_t m_pos = 0;
    int m_line = 1;
    int m_column = 1;
};

const std::vector<std::string> k_command_keywords{
    "rename", "obsolete", "delete", "create", "replace", "add", "remove", "change", "move"};

const std::vector<std::string> k_ref_forms{"CURIE", "quoted label", "relation name"};

class Parser {
public:
    Parser(std::vector<Token> tokens, SourceSpan end)
        : m_tokens(std::move(tokens)), m_end(end) {}

    auto command() -> Change {
        const auto kw = expect_one_of(k_command_keywords);
        Change change;
        if (kw == "rename") {
            change = rename();
        } else if (kw == "obsolete") {
            change = obsolete();
        } else if (kw == "delete") {
            change = remove_node_or_edge();
        } else if (kw == "create") {
            change = create();
        } else if (kw == "replace") {
            expect("synonym");
            auto old_value = quoted();
            expect("with");
            auto new_value = quoted();
            expect("for");
            change = SynonymReplacement{ref(), std::move(old_value), std::move(new_value)};
        } else if (kw == "add") {
            expect("definition");
            auto text = quoted();
            expect("to");
            change = NewTextDefinition{ref(), std::move(text)};
        } else if (kw == "remove") {
            change = remove();
        } else if (kw == "change") {
            change = change_command();
        } else {
            change = move();
        }
        expect_end();
        return change;
    }

private:
    auto rename() -> Change {
        NodeRename c{ref(), std::nullopt, {}};
        if (accept("from")) {
            c.old_value = quoted();
        }
        expect("to");
        c.new_value = quoted();
        return c;
    }

    auto obsolete() -> Change {
        NodeObsoletion c{ref(), std::nullopt};
        if (accept("with")) {
            expect("replacement");
            c.replacement = ref();
        }
        return c;
    }

    auto remove_node_or_edge() -> Change {
        if (expect_one_of({"node", "edge"}) == "node") {
            return NodeDeletion{ref()};
        }
        auto s = ref();
        auto p = ref();
        return EdgeDeletion{std::move(s), std::move(p), ref()};
    }

    auto create() -> Change {
        if (peek_quoted()) {
            return ClassCreation{std::nullopt, quoted()};
        }
        const auto kw = expect_one_of(
            {"quoted label", "node", "edge", "exact", "narrow", "broad", "related", "synonym"});
        if (kw == "node") {
            ClassCreation c{ref(), std::nullopt};
            if (peek_quoted()) c.new_value = quoted();
            return c;
        }
        if (kw == "edge") {
            auto s = ref();
            auto p = ref();
            return EdgeCreation{std::move(s), std::move(p), ref()};
        }
        std::optional<SynonymScope> scope;
        if (kw != "synonym") {
            scope = parse_scope(kw);
            expect("synonym");
        }
        auto text = quoted();
        expect("for");
        return NewSynonym{ref(), std::move(text), scope};
    }

    auto remove() -> Change {
        if (expect_one_of({"definition", "synonym"}) == "definition") {
            expect("for");
            return RemoveTextDefinition{ref()};
        }
        auto text = quoted();
        expect("for");
        return RemoveSynonym{ref(), std::move(text)};
    }

    auto change_command() -> Change {
        if (expect_one_of({"definition", "relationship"}) == "definition") {
            expect("of");
            NodeTextDefinitionChange c{ref(), std::nullopt, {}};
            if (expect_one_of({"to", "from"}) == "from") {
                c.old_value = quoted();
                expect("to");
            }
            c.new_value = quoted();
            return c;
        }
        expect("between");
        auto subject = ref();
        expect("and");
        auto object = ref();
        expect("from");
        auto old_pred = ref();
        expect("to");
        return PredicateChange{std::move(subject), std::move(object), std::move(old_pred), ref()};
    }

    auto move() -> Change {
        auto node = ref();
        expect("from");
        auto from = ref();
        expect("to");
        NodeMove c{std::move(node), std::move(from), ref(), std::nullopt};
        if (accept("with")) {
            expect("predicate");
            c.predicate = ref();
        }
        return c;
    }

    // -- token helpers ------------------------------------------------------

    [[nodiscard]] auto at_end() const -> bool { return m_pos >= m_tokens.size(); }

    [[nodiscard]] auto peek_quoted() const -> bool {
        return !at_end() && m_tokens[m_pos].kind == Token::Kind::quoted;
    }

    [[nodiscard]] auto peek_word(std::string_view kw) const -> bool {
        return !at_end() && m_tokens[m_pos].kind == Token::Kind::word && m_tokens[m_pos].text == kw;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        if (at_end()) {
            throw ParseError(m_end, std::move(expected), "end of input");
        }
        const auto& tok = m_tokens[m_pos];
        const auto found = tok.kind == Token::Kind::quoted ? quote(tok.text) : tok.text;
        throw ParseError(tok.span, std::move(expected), found);
    }

    auto accept(std::string_view kw) -> bool {
        if (peek_word(kw)) {
            ++m_pos;
            return true;
        }
        return false;
    }

    void expect(const std::string& kw) {
        if (!accept(kw)) fail({kw});
    }

    auto expect_one_of(const std::vector<std::string>& kws) -> std::string {
        for (const auto& kw : kws) {
            if (accept(kw)) return kw;
        }
        fail(kws);
    }

    auto quoted() -> std::string {
        if (!peek_quoted()) fail({"quoted string"});
        if (m_tokens[m_pos].text.empty()) fail({"non-empty quoted string"});
        return m_tokens[m_pos++].text;
    }

    auto ref() -> NodeRef {
        if (at_end()) fail(k_ref_forms);
        const auto& tok = m_tokens[m_pos];
        if (tok.kind == Token::Kind::quoted) {
            if (tok.text.empty()) fail({"non-empty label"});
            ++m_pos;
            return NodeRef::label(tok.text);
        }
        if (is_curie(tok.text)) {
            ++m_pos;
            return NodeRef::curie(tok.text);
        }
        if (is_bare_name(tok.text)) {
            ++m_pos;
            return NodeRef::label(tok.text);
        }
        fail(k_ref_forms);
    }

    void expect_end() {
        if (!at_end()) fail({"end of command"});
    }

    std::vector<Token> m_tokens;
    std::size_t m_pos = 0;
    SourceSpan m_end;
};

auto scope_prefix(const std::optional<SynonymScope>& scope) -> std::string {
    return scope ? std::string(to_string_view(*scope)) + " " : std::string();
}

/// Relation slots render bare names unquoted, matching `create edge 'a' part_of 'b'`.
auto render_ref(const NodeRef& ref, bool relation_slot = false) -> std::string {
    if (ref.kind == RefKind::curie) return ref.value;
    if (relation_slot && is_bare_name(ref.value)) return ref.value;
    return quote(ref.value);
}

struct LogicalLine {
    int line;
    std::string_view text;
};

auto is_blank_or_comment(std::string_view line) -> bool {
    const auto first = line.find_first_not_of(" \t\r\n");
    return first == std::string_view::npos || line[first] == '#';
}

}  // namespace

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

ParseError::ParseError(SourceSpan span, std::vector<std::string> expected, std::string found)
    : Error(ErrorCode::parse_error,
            "line " + std::to_string(span.line) + ", column " + std::to_string(span.column) +
                ": expected " + join(expected, " | ") + ", found " + found),
      m_span(span),
      m_expected(std::move(expected)),
      m_found(std::move(found)) {}

auto ParseError::relocated(int line_offset) const -> ParseError {
    auto span = m_span;
    span.line += line_offset;
    return {span, m_expected, m_found};
}

DocumentParseError::DocumentParseError(std::vector<ParseError> errors)
    : Error(ErrorCode::parse_error,
            std::to_string(errors.size()) + " command(s) failed to parse" +
                (errors.empty() ? std::string() : std::string("; first: ") + errors.front().what())),
      m_errors(std::move(errors)) {}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

auto parse_command(std::string_view text) -> Change {
    Lexer lexer(text);
    auto tokens = lexer.run();
    Parser parser(std::move(tokens), lexer.here());
    return parser.command();
}

auto parse_document_lenient(std::string_view text) -> DocumentParse {
    DocumentParse result;
    std::size_t pos = 0;
    int line = 1;

    auto next_physical_line = [&](std::size_t from) {
        const auto nl = text.find('\n', from);
        return nl == std::string_view::npos ? text.size() : nl + 1;
    };

    while (pos < text.size()) {
        const auto line_end = next_physical_line(pos);
        const auto physical = text.substr(pos, line_end - pos);
        if (is_blank_or_comment(physical)) {
            pos = line_end;
            ++line;
            continue;
        }

        // Find the end of the logical line: a newline outside quotes. A quote
        // only opens at a token boundary.
        std::size_t i = pos;
        bool in_quote = false;
        int newlines_inside = 0;
        while (i < text.size()) {
            const char c = text[i];
            if (in_quote) {
                if (c == '\\' && i + 1 < text.size() && (text[i + 1] == '\'' || text[i + 1] == '\\')) {
                    i += 2;
                    continue;
                }
                if (c == '\'') in_quote = false;
                if (c == '\n') ++newlines_inside;
            } else if (c == '\n') {
                break;
            } else if (c == '\'' && (i == pos || is_space(text[i - 1]))) {
                in_quote = true;
            }
            ++i;
        }

        if (in_quote) {
            // Unterminated: report against this line only and resume on the next one.
            try {
                (void)parse_command(physical);
            } catch (const ParseError& e) {
                result.errors.push_back(e.relocated(line - 1));
            }
            pos = line_end;
            ++line;
            continue;
        }

        const auto command = text.substr(pos, i - pos);
        try {
            auto change = parse_command(command);
            result.changes.changes.push_back(std::move(change));
        } catch (const ParseError& e) {
            result.errors.push_back(e.relocated(line - 1));
        }
        line += newlines_inside + 1;
        pos = i < text.size() ? i + 1 : i;
    }
    return result;
}

auto parse_document(std::string_view text) -> ChangeSet {
    auto result = parse_document_lenient(text);
    if (!result.errors.empty()) {
        throw DocumentParseError(std::move(result.errors));
    }
    return std::move(result.changes);
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

auto quote(std::string_view text) -> std::string {
    std::string out;
    out.reserve(text.size() + 2);
    out += '\'';
    for (char c : text) {
        if (c == '\'' || c == '\\') out += '\\';
        out += c;
    }
    out += '\'';
    return out;
}

auto render_command(const Change& change) -> std::string {
    if (const auto& c = std::get_if<ClassCreation>(&change.body); c && !c->about_node && !c->new_value) {
        throw Error(ErrorCode::unrenderable_change, "ClassCreation has neither an id nor a label");
    }
    if (auto problems = validate(change); !problems.empty()) {
        throw Error(ErrorCode::unrenderable_change,
                    std::string(type_name(change)) + ": " + problems.front());
    }
    return std::visit(
        overloaded{
            [](const NodeRename& c) {
                auto out = "rename " + render_ref(c.about_node);
                if (c.old_value) out += " from " + quote(*c.old_value);
                return out + " to " + quote(c.new_value);
            },
            [](const NodeObsoletion& c) {
                auto out = "obsolete " + render_ref(c.about_node);
                if (c.replacement) out += " with replacement " + render_ref(*c.replacement);
                return out;
            },
            [](const NodeDeletion& c) { return "delete node " + render_ref(c.about_node); },
            [](const ClassCreation& c) {
                if (!c.about_node) return "create " + quote(*c.new_value);
                auto out = "create node " + render_ref(*c.about_node);
                if (c.new_value) out += " " + quote(*c.new_value);
                return out;
            },
            [](const SynonymReplacement& c) {
                return "replace synonym " + quote(c.old_value) + " with " + quote(c.new_value) +
                       " for " + render_ref(c.about_node);
            },
            [](const NewTextDefinition& c) {
                return "add definition " + quote(c.new_value) + " to " + render_ref(c.about_node);
            },
            [](const RemoveTextDefinition& c) { return "remove definition for " + render_ref(c.about_node); },
            [](const NodeTextDefinitionChange& c) {
                auto out = "change definition of " + render_ref(c.about_node);
                if (c.old_value) out += " from " + quote(*c.old_value);
                return out + " to " + quote(c.new_value);
            },
            [](const NewSynonym& c) {
                return "create " + scope_prefix(c.scope) + "synonym " + quote(c.new_value) + " for " +
                       render_ref(c.about_node);
            },
            [](const RemoveSynonym& c) {
                return "remove synonym " + quote(c.old_value) + " for " + render_ref(c.about_node);
            },
            [](const EdgeCreation& c) {
                return "create edge " + render_ref(c.subject) + " " + render_ref(c.predicate, true) + " " +
                       render_ref(c.object);
            },
            [](const EdgeDeletion& c) {
                return "delete edge " + render_ref(c.subject) + " " + render_ref(c.predicate, true) + " " +
                       render_ref(c.object);
            },
            [](const NodeMove& c) {
                auto out = "move " + render_ref(c.about_node) + " from " + render_ref(c.old_value) + " to " +
                           render_ref(c.new_value);
                if (c.predicate) out += " with predicate " + render_ref(*c.predicate, true);
                return out;
            },
            [](const PredicateChange& c) {
                return "change relationship between " + render_ref(c.subject) + " and " +
                       render_ref(c.object) + " from " + render_ref(c.old_value) + " to " +
                       render_ref(c.new_value);
            },
        },
        change.body);
}

auto render_document(const ChangeSet& changes) -> std::string {
    std::string out;
    for (const auto& change : changes.changes) {
        out += render_command(change);
        out += '\n';
    }
    return out;
}

}  // namespace kgcl
