#include "kgcl/error.hpp"
#include "kgcl/graph_io.hpp"

#include <optional>
#include <vector>

namespace kgcl {

namespace {

auto trim(std::string_view s) -> std::string_view {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void obo_error(int line, const std::string& what) {
    throw Error(ErrorCode::format_error, "line " + std::to_string(line) + ": " + what);
}

/// Drops a trailing `! comment` and `{qualifiers}` from an unquoted value.
auto strip_trailing(std::string_view value) -> std::string_view {
    if (auto bang = value.find(" !"); bang != std::string_view::npos) value = value.substr(0, bang);
    if (value.starts_with("!")) value = {};
    value = trim(value);
    if (value.ends_with('}')) {
        if (auto brace = value.rfind('{'); brace != std::string_view::npos) value = value.substr(0, brace);
    }
    return trim(value);
}

/// Reads the leading OBO quoted string; returns the unescaped text and the rest.
auto read_quoted(std::string_view value, int line) -> std::pair<std::string, std::string_view> {
    value = trim(value);
    if (!value.starts_with('"')) obo_error(line, "expected a quoted string");
    std::string out;
    for (std::size_t i = 1; i < value.size(); ++i) {
        const char c = value[i];
        if (c == '"') return {out, value.substr(i + 1)};
        if (c == '\\' && i + 1 < value.size()) {
            const char next = value[++i];
            switch (next) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                default: out += next; break;
            }
            continue;
        }
        out += c;
    }
    obo_error(line, "unterminated quoted string");
}

struct Stanza {
    enum class Kind { term, typedef_, instance, other } kind = Kind::other;
    int line = 0;
    std::optional<std::string> id;
    Node node;
    std::vector<Edge> edges;  // subject filled in when the stanza closes
};

auto scope_from_obo(std::string_view token) -> std::optional<SynonymScope> {
    if (token == "EXACT") return SynonymScope::exact;
    if (token == "NARROW") return SynonymScope::narrow;
    if (token == "BROAD") return SynonymScope::broad;
    if (token == "RELATED") return SynonymScope::related;
    return std::nullopt;
}

auto first_word(std::string_view s) -> std::pair<std::string_view, std::string_view> {
    s = trim(s);
    const auto sp = s.find_first_of(" \t");
    if (sp == std::string_view::npos) return {s, {}};
    return {s.substr(0, sp), trim(s.substr(sp + 1))};
}

void handle_tag(Stanza& st, std::string_view tag, std::string_view value, int line) {
    if (tag == "id") {
        st.id = std::string(strip_trailing(value));
    } else if (tag == "name") {
        st.node.label = std::string(strip_trailing(value));
    } else if (tag == "def") {
        st.node.definition = read_quoted(value, line).first;
    } else if (tag == "synonym") {
        auto [text, rest] = read_quoted(value, line);
        auto [scope_token, tail] = first_word(rest);
        auto scope = scope_from_obo(scope_token);
        if (!scope) obo_error(line, "unknown synonym scope '" + std::string(scope_token) + "'");
        Synonym syn{std::move(text), *scope};
        if (!st.node.has_synonym(syn) && !syn.value.empty()) st.node.synonyms.push_back(std::move(syn));
    } else if (tag == "is_a") {
        st.edges.push_back({{}, "is_a", contract_obo_iri(strip_trailing(value))});
    } else if (tag == "relationship") {
        auto [rel, target] = first_word(strip_trailing(value));
        if (target.empty()) obo_error(line, "relationship without a target");
        st.edges.push_back({{}, contract_obo_iri(rel), contract_obo_iri(first_word(target).first)});
    } else if (tag == "is_obsolete") {
        st.node.deprecated = strip_trailing(value) == "true";
    } else if (tag == "replaced_by") {
        if (!st.node.replaced_by) st.node.replaced_by = contract_obo_iri(strip_trailing(value));
    }
}

void close_stanza(Stanza& st, Graph& graph) {
    if (st.kind == Stanza::Kind::other) return;
    if (!st.id) obo_error(st.line, "stanza without an id");
    const auto id = contract_obo_iri(*st.id);
    if (!is_curie(id)) {
        if (st.kind == Stanza::Kind::typedef_) return;
        obo_error(st.line, "id '" + id + "' is not a CURIE");
    }
    st.node.id = id;
    st.node.kind = st.kind == Stanza::Kind::term       ? NodeKind::class_node
                   : st.kind == Stanza::Kind::typedef_ ? NodeKind::property
                                                       : NodeKind::individual;
    if (st.node.replaced_by && !is_curie(*st.node.replaced_by)) {
        obo_error(st.line, "replaced_by '" + *st.node.replaced_by + "' is not a CURIE");
    }
    if (st.node.replaced_by) st.node.deprecated = true;
    graph.add_node(std::move(st.node));
    for (auto& e : st.edges) {
        e.subject = id;
        if (!is_curie(e.object)) obo_error(st.line, "edge target '" + e.object + "' is not a CURIE");
        if (!is_curie(e.predicate) && !is_bare_name(e.predicate)) {
            obo_error(st.line, "relation '" + e.predicate + "' is neither a CURIE nor a relation name");
        }
        graph.add_edge(std::move(e));
    }
}

}  // namespace

auto load_obo(std::string_view text) -> Graph {
    Graph graph;
    Stanza current;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const auto line = trim(text.substr(pos, nl - pos));
        ++line_no;
        pos = nl + 1;

        if (line.empty() || line.starts_with('!')) continue;
        if (line.starts_with('[')) {
            close_stanza(current, graph);
            current = Stanza{};
            current.line = line_no;
            if (line == "[Term]") {
                current.kind = Stanza::Kind::term;
            } else if (line == "[Typedef]") {
                current.kind = Stanza::Kind::typedef_;
            } else if (line == "[Instance]") {
                current.kind = Stanza::Kind::instance;
            }
            continue;
        }
        if (current.kind == Stanza::Kind::other) continue;  // header or unknown stanza
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) obo_error(line_no, "expected 'tag: value'");
        handle_tag(current, trim(line.substr(0, colon)), trim(line.substr(colon + 1)), line_no);
    }
    close_stanza(current, graph);
    return graph;
}

}  // namespace kgcl
