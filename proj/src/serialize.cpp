#include "kgcl/serialize.hpp"

#include "kgcl/cnl.hpp"
#include "kgcl/error.hpp"

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace kgcl {

namespace {

using ordered_json = nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

constexpr std::array<std::string_view, 10> k_field_order{
    "id", "type", "about_node", "old_value", "new_value",
    "subject", "predicate", "object", "replacement", "scope"};

auto field_rank(std::string_view name) -> std::size_t {
    return static_cast<std::size_t>(
        std::find(k_field_order.begin(), k_field_order.end(), name) - k_field_order.begin());
}

class RecordBuilder {
public:
    void text(std::string_view key, const std::string& value) { m_fields.emplace_back(key, value); }
    void text(std::string_view key, const std::optional<std::string>& value) {
        if (value) text(key, *value);
    }
    void ref(std::string_view key, const NodeRef& value) { text(key, encode_ref(value)); }
    void ref(std::string_view key, const std::optional<NodeRef>& value) {
        if (value) ref(key, *value);
    }

    auto finish() -> ChangeRecord {
        std::stable_sort(m_fields.begin(), m_fields.end(),
                         [](const auto& a, const auto& b) { return field_rank(a.first) < field_rank(b.first); });
        return std::move(m_fields);
    }

private:
    ChangeRecord m_fields;
};

/// Reads fields out of a record, tracking which were consumed.
class RecordReader {
public:
    RecordReader(const ChangeRecord& record, std::size_t index) : m_index(index) {
        for (const auto& [k, v] : record) {
            if (!m_fields.emplace(k, v).second) {
                throw Error(ErrorCode::format_error, where() + ": field '" + k + "' appears twice");
            }
        }
    }

    auto optional_text(const std::string& key) -> std::optional<std::string> {
        auto it = m_fields.find(key);
        if (it == m_fields.end()) return std::nullopt;
        m_used.insert(key);
        return it->second;
    }

    auto text(const std::string& key) -> std::string {
        auto value = optional_text(key);
        if (!value) throw Error(ErrorCode::missing_field, where() + ": missing field '" + key + "'");
        return *value;
    }

    auto optional_ref(const std::string& key) -> std::optional<NodeRef> {
        auto value = optional_text(key);
        if (!value) return std::nullopt;
        auto ref = decode_ref(*value);
        if (!ref) {
            throw Error(ErrorCode::format_error,
                        where() + ": field '" + key + "' is not a CURIE or quoted label: " + *value);
        }
        return ref;
    }

    auto ref(const std::string& key) -> NodeRef {
        auto value = optional_ref(key);
        if (!value) throw Error(ErrorCode::missing_field, where() + ": missing field '" + key + "'");
        return *value;
    }

    auto scope() -> std::optional<SynonymScope> {
        auto value = optional_text("scope");
        if (!value) return std::nullopt;
        auto scope = parse_scope(*value);
        if (!scope) throw Error(ErrorCode::format_error, where() + ": unknown scope '" + *value + "'");
        return scope;
    }

    void finish() const {
        for (const auto& [k, v] : m_fields) {
            if (!m_used.contains(k)) {
                throw Error(ErrorCode::unexpected_field, where() + ": field '" + k + "' does not apply");
            }
        }
    }

    [[nodiscard]] auto where() const -> std::string { return "record " + std::to_string(m_index); }

private:
    std::map<std::string, std::string> m_fields;
    std::set<std::string> m_used;
    std::size_t m_index;
};

[[noreturn]] void unknown_type(const std::string& type, std::size_t index) {
    throw Error(ErrorCode::unknown_change_type,
                "record " + std::to_string(index) + ": unknown change type '" + type + "'");
}

auto body_from_record(const std::string& type, RecordReader& r, std::size_t index) -> ChangeBody {
    if (type == "NodeRename") {
        auto node = r.ref("about_node");
        auto old_value = r.optional_text("old_value");
        return NodeRename{std::move(node), std::move(old_value), r.text("new_value")};
    }
    if (type == "NodeObsoletion" || type == "NodeObsolescence") {
        auto node = r.ref("about_node");
        return NodeObsoletion{std::move(node), r.optional_ref("replacement")};
    }
    if (type == "NodeDeletion") return NodeDeletion{r.ref("about_node")};
    if (type == "ClassCreation") {
        auto node = r.optional_ref("about_node");
        return ClassCreation{std::move(node), r.optional_text("new_value")};
    }
    if (type == "SynonymReplacement") {
        auto node = r.ref("about_node");
        auto old_value = r.text("old_value");
        return SynonymReplacement{std::move(node), std::move(old_value), r.text("new_value")};
    }
    if (type == "NewTextDefinition") {
        auto node = r.ref("about_node");
        return NewTextDefinition{std::move(node), r.text("new_value")};
    }
    if (type == "RemoveTextDefinition") return RemoveTextDefinition{r.ref("about_node")};
    if (type == "NodeTextDefinitionChange") {
        auto node = r.ref("about_node");
        auto old_value = r.optional_text("old_value");
        return NodeTextDefinitionChange{std::move(node), std::move(old_value), r.text("new_value")};
    }
    if (type == "NewSynonym") {
        auto node = r.ref("about_node");
        auto value = r.text("new_value");
        return NewSynonym{std::move(node), std::move(value), r.scope()};
    }
    if (type == "RemoveSynonym") {
        auto node = r.ref("about_node");
        return RemoveSynonym{std::move(node), r.text("old_value")};
    }
    if (type == "EdgeCreation" || type == "EdgeDeletion") {
        auto s = r.ref("subject");
        auto p = r.ref("predicate");
        auto o = r.ref("object");
        if (type == "EdgeCreation") return EdgeCreation{std::move(s), std::move(p), std::move(o)};
        return EdgeDeletion{std::move(s), std::move(p), std::move(o)};
    }
    if (type == "NodeMove") {
        auto node = r.ref("about_node");
        auto from = r.ref("old_value");
        auto to = r.ref("new_value");
        return NodeMove{std::move(node), std::move(from), std::move(to), r.optional_ref("predicate")};
    }
    if (type == "PredicateChange") {
        auto s = r.ref("subject");
        auto o = r.ref("object");
        auto from = r.ref("old_value");
        return PredicateChange{std::move(s), std::move(o), std::move(from), r.ref("new_value")};
    }
    unknown_type(type, index);
}

auto has_tab_or_newline(std::string_view s) -> bool {
    return s.find_first_of("\t\n\r") != std::string_view::npos;
}

auto split(std::string_view text, char sep) -> std::vector<std::string_view> {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = text.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(text.substr(pos));
            return out;
        }
        out.push_back(text.substr(pos, next - pos));
        pos = next + 1;
    }
}

/// False for text YAML would read back as null or as something other than itself.
auto reads_back_as_plain_scalar(const std::string& text) -> bool {
    if (text.empty()) return false;
    try {
        const auto node = YAML::Load(text);
        return node.IsScalar() && node.Scalar() == text;
    } catch (const YAML::Exception&) {
        return false;
    }
}

auto record_to_json(const ChangeRecord& record) -> ordered_json {
    ordered_json obj = ordered_json::object();
    for (const auto& [k, v] : record) obj[k] = v;
    return obj;
}

auto record_from_json(const nlohmann::json& obj, std::size_t index) -> ChangeRecord {
    if (!obj.is_object()) {
        throw Error(ErrorCode::format_error, "record " + std::to_string(index) + ": expected an object");
    }
    ChangeRecord record;
    for (const auto& [k, v] : obj.items()) {
        if (!v.is_string()) {
            throw Error(ErrorCode::format_error,
                        "record " + std::to_string(index) + ": field '" + k + "' must be a string");
        }
        record.emplace_back(k, v.get<std::string>());
    }
    return record;
}

auto parse_json(std::string_view bytes) -> nlohmann::json {
    try {
        return nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::format_error, std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

auto encode_ref(const NodeRef& ref) -> std::string {
    return ref.kind == RefKind::curie ? ref.value : "'" + ref.value + "'";
}

auto decode_ref(std::string_view text) -> std::optional<NodeRef> {
    if (text.size() >= 2 && text.front() == '\'' && text.back() == '\'') {
        return NodeRef::label(std::string(text.substr(1, text.size() - 2)));
    }
    if (is_curie(text)) return NodeRef::curie(std::string(text));
    if (is_bare_name(text)) return NodeRef::label(std::string(text));
    return std::nullopt;
}

auto to_record(const Change& change) -> ChangeRecord {
    RecordBuilder b;
    b.text("id", change.id);
    b.text("type", std::string(type_name(change)));
    std::visit(
        overloaded{
            [&](const NodeRename& c) {
                b.ref("about_node", c.about_node);
                b.text("old_value", c.old_value);
                b.text("new_value", c.new_value);
            },
            [&](const NodeObsoletion& c) {
                b.ref("about_node", c.about_node);
                b.ref("replacement", c.replacement);
            },
            [&](const NodeDeletion& c) { b.ref("about_node", c.about_node); },
            [&](const ClassCreation& c) {
                b.ref("about_node", c.about_node);
                b.text("new_value", c.new_value);
            },
            [&](const SynonymReplacement& c) {
                b.ref("about_node", c.about_node);
                b.text("old_value", c.old_value);
                b.text("new_value", c.new_value);
            },
            [&](const NewTextDefinition& c) {
                b.ref("about_node", c.about_node);
                b.text("new_value", c.new_value);
            },
            [&](const RemoveTextDefinition& c) { b.ref("about_node", c.about_node); },
            [&](const NodeTextDefinitionChange& c) {
                b.ref("about_node", c.about_node);
                b.text("old_value", c.old_value);
                b.text("new_value", c.new_value);
            },
            [&](const NewSynonym& c) {
                b.ref("about_node", c.about_node);
                b.text("new_value", c.new_value);
                if (c.scope) b.text("scope", std::string(to_string_view(*c.scope)));
            },
            [&](const RemoveSynonym& c) {
                b.ref("about_node", c.about_node);
                b.text("old_value", c.old_value);
            },
            [&](const EdgeCreation& c) {
                b.ref("subject", c.subject);
                b.ref("predicate", c.predicate);
                b.ref("object", c.object);
            },
            [&](const EdgeDeletion& c) {
                b.ref("subject", c.subject);
                b.ref("predicate", c.predicate);
                b.ref("object", c.object);
            },
            [&](const NodeMove& c) {
                b.ref("about_node", c.about_node);
                b.ref("predicate", c.predicate);
                b.ref("old_value", c.old_value);
                b.ref("new_value", c.new_value);
            },
            [&](const PredicateChange& c) {
                b.ref("subject", c.subject);
                b.ref("object", c.object);
                b.ref("old_value", c.old_value);
                b.ref("new_value", c.new_value);
            },
        },
        change.body);
    return b.finish();
}

auto from_record(const ChangeRecord& record, std::size_t index) -> Change {
    RecordReader reader(record, index);
    auto type = reader.optional_text("type");
    if (!type) throw Error(ErrorCode::missing_field, reader.where() + ": missing field 'type'");
    Change change;
    change.body = body_from_record(*type, reader, index);
    change.id = reader.optional_text("id");
    reader.finish();
    if (auto problems = validate(change); !problems.empty()) {
        throw Error(ErrorCode::invalid_change, reader.where() + ": " + problems.front());
    }
    return change;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

auto to_json(const ChangeSet& changes) -> std::string {
    ordered_json arr = ordered_json::array();
    for (const auto& change : changes.changes) arr.push_back(record_to_json(to_record(change)));
    return arr.dump();
}

auto from_json(std::string_view bytes) -> ChangeSet {
    const auto doc = parse_json(bytes);
    if (!doc.is_array()) throw Error(ErrorCode::format_error, "expected a JSON array of change records");
    ChangeSet out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        out.changes.push_back(from_record(record_from_json(doc[i], i), i));
    }
    return out;
}

auto change_to_json(const Change& change) -> std::string { return record_to_json(to_record(change)).dump(); }

auto change_from_json(std::string_view bytes) -> Change {
    return from_record(record_from_json(parse_json(bytes), 0), 0);
}

// ---------------------------------------------------------------------------
// YAML
// ---------------------------------------------------------------------------

auto to_yaml(const ChangeSet& changes) -> std::string {
    YAML::Emitter out;
    out << YAML::BeginSeq;
    for (const auto& change : changes.changes) {
        out << YAML::BeginMap;
        for (const auto& [k, v] : to_record(change)) {
            out << YAML::Key << k << YAML::Value;
            if (!reads_back_as_plain_scalar(v)) out << YAML::DoubleQuoted;
            out << v;
        }
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    if (!out.good()) throw Error(ErrorCode::format_error, std::string("YAML emit failed: ") + out.GetLastError());
    return std::string(out.c_str()) + "\n";
}

auto from_yaml(std::string_view text) -> ChangeSet {
    YAML::Node doc;
    try {
        doc = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw Error(ErrorCode::format_error, std::string("malformed YAML: ") + e.what());
    }
    ChangeSet out;
    if (doc.IsNull()) return out;
    if (!doc.IsSequence()) throw Error(ErrorCode::format_error, "expected a YAML sequence of change records");
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        if (!item.IsMap()) {
            throw Error(ErrorCode::format_error, "record " + std::to_string(i) + ": expected a mapping");
        }
        ChangeRecord record;
        for (const auto& kv : item) {
            const auto key = kv.first.as<std::string>();
            if (!kv.second.IsScalar()) {
                throw Error(ErrorCode::format_error,
                            "record " + std::to_string(i) + ": field '" + key + "' must be a string");
            }
            record.emplace_back(key, kv.second.Scalar());
        }
        out.changes.push_back(from_record(record, i));
    }
    return out;
}

// ---------------------------------------------------------------------------
// TSV
// ---------------------------------------------------------------------------

auto tsv_header() -> std::string_view {
    static const std::string header = [] {
        std::string h;
        for (const auto& f : k_field_order) h += (h.empty() ? "" : "\t") + std::string(f);
        return h;
    }();
    return header;
}

auto to_tsv(const ChangeSet& changes) -> std::string {
    std::string out(tsv_header());
    out += '\n';
    for (std::size_t i = 0; i < changes.changes.size(); ++i) {
        std::array<std::string, k_field_order.size()> cells;
        for (const auto& [k, v] : to_record(changes.changes[i])) {
            if (has_tab_or_newline(v)) {
                throw Error(ErrorCode::tabular_unrepresentable,
                            "change " + std::to_string(i) + ": field '" + k + "' contains a tab or newline");
            }
            cells[field_rank(k)] = v;
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c != 0) out += '\t';
            out += cells[c];
        }
        out += '\n';
    }
    return out;
}

auto from_tsv(std::string_view text) -> ChangeSet {
    auto lines = split(text, '\n');
    for (auto& line : lines) {
        if (line.ends_with('\r')) line.remove_suffix(1);
    }
    if (lines.empty() || lines.front() != tsv_header()) {
        throw Error(ErrorCode::bad_header, "first line must be the header: " + std::string(tsv_header()));
    }
    ChangeSet out;
    std::size_t index = 0;
    for (std::size_t n = 1; n < lines.size(); ++n) {
        if (lines[n].empty()) continue;
        auto cells = split(lines[n], '\t');
        if (cells.size() > k_field_order.size()) {
            throw Error(ErrorCode::format_error, "line " + std::to_string(n + 1) + ": too many columns");
        }
        ChangeRecord record;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!cells[c].empty()) record.emplace_back(std::string(k_field_order[c]), std::string(cells[c]));
        }
        out.changes.push_back(from_record(record, index++));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Format dispatch
// ---------------------------------------------------------------------------

auto parse_change_format(std::string_view name) -> std::optional<ChangeFormat> {
    if (name == "cnl" || name == "kgcl") return ChangeFormat::cnl;
    if (name == "json") return ChangeFormat::json;
    if (name == "yaml" || name == "yml") return ChangeFormat::yaml;
    if (name == "tsv") return ChangeFormat::tsv;
    return std::nullopt;
}

auto change_format_for_path(std::string_view path) -> ChangeFormat {
    const auto dot = path.rfind('.');
    if (dot == std::string_view::npos) return ChangeFormat::cnl;
    return parse_change_format(path.substr(dot + 1)).value_or(ChangeFormat::cnl);
}

auto write_changes(const ChangeSet& changes, ChangeFormat format) -> std::string {
    switch (format) {
        case ChangeFormat::cnl:  return render_document(changes);
        case ChangeFormat::json: return to_json(changes) + "\n";
        case ChangeFormat::yaml: return to_yaml(changes);
        case ChangeFormat::tsv:  return to_tsv(changes);
    }
    return {};
}

auto read_changes(std::string_view text, ChangeFormat format) -> ChangeSet {
    switch (format) {
        case ChangeFormat::cnl:  return parse_document(text);
        case ChangeFormat::json: return from_json(text);
        case ChangeFormat::yaml: return from_yaml(text);
        case ChangeFormat::tsv:  return from_tsv(text);
    }
    return {};
}

}  // namespace kgcl
