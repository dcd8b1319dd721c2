#include "kgcl/change.hpp"

#include <set>

namespace kgcl {

namespace {

auto is_alpha(char c) noexcept -> bool {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

auto is_digit(char c) noexcept -> bool { return c >= '0' && c <= '9'; }

auto is_local_char(char c) noexcept -> bool {
    return is_alpha(c) || is_digit(c) || c == '_' || c == '.' || c == '-';
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

class Validator {
public:
    void ref(std::string_view field, const NodeRef& ref) {
        if (ref.kind == RefKind::curie) {
            if (!is_curie(ref.value)) {
                add(std::string(field) + ": '" + ref.value + "' is not a well-formed CURIE");
            }
        } else if (ref.value.empty()) {
            add(std::string(field) + ": label is empty");
        }
    }

    void text(std::string_view field, const std::string& value) {
        if (value.empty()) {
            add(std::string(field) + ": value is empty");
        }
    }

    void text(std::string_view field, const std::optional<std::string>& value) {
        if (value) {
            text(field, *value);
        }
    }

    void add(std::string message) { m_messages.push_back(std::move(message)); }

    auto take() -> std::vector<std::string> { return std::move(m_messages); }

private:
    std::vector<std::string> m_messages;
};

}  // namespace

auto is_curie(std::string_view text) noexcept -> bool {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) {
        return false;
    }
    const auto prefix = text.substr(0, colon);
    const auto local = text.substr(colon + 1);
    if (!(is_alpha(prefix[0]) || prefix[0] == '_')) {
        return false;
    }
    for (char c : prefix) {
        if (!is_local_char(c)) {
            return false;
        }
    }
    for (char c : local) {
        if (!is_local_char(c)) {
            return false;
        }
    }
    return true;
}

auto is_bare_name(std::string_view text) noexcept -> bool {
    if (text.empty() || !(is_alpha(text[0]) || text[0] == '_')) {
        return false;
    }
    for (char c : text) {
        if (!(is_alpha(c) || is_digit(c) || c == '_')) {
            return false;
        }
    }
    return true;
}

auto NodeRef::from_identifier(std::string text) -> NodeRef {
    if (is_curie(text)) {
        return curie(std::move(text));
    }
    return label(std::move(text));
}

auto to_string_view(SynonymScope scope) noexcept -> std::string_view {
    switch (scope) {
        case SynonymScope::exact:   return "exact";
        case SynonymScope::narrow:  return "narrow";
        case SynonymScope::broad:   return "broad";
        case SynonymScope::related: return "related";
    }
    return "related";
}

auto parse_scope(std::string_view text) noexcept -> std::optional<SynonymScope> {
    if (text == "exact") return SynonymScope::exact;
    if (text == "narrow") return SynonymScope::narrow;
    if (text == "broad") return SynonymScope::broad;
    if (text == "related") return SynonymScope::related;
    return std::nullopt;
}

auto to_string_view(ChangeGroup group) noexcept -> std::string_view {
    return group == ChangeGroup::node_change ? "NodeChange" : "EdgeChange";
}

auto same_content(const Change& a, const Change& b) -> bool { return a.body == b.body; }

auto same_content(const ChangeSet& a, const ChangeSet& b) -> bool {
    if (a.changes.size() != b.changes.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.changes.size(); ++i) {
        if (!same_content(a.changes[i], b.changes[i])) {
            return false;
        }
    }
    return true;
}

auto classify(const Change& change) noexcept -> ChangeGroup {
    return std::visit(
        overloaded{
            [](const EdgeCreation&) { return ChangeGroup::edge_change; },
            [](const EdgeDeletion&) { return ChangeGroup::edge_change; },
            [](const NodeMove&) { return ChangeGroup::edge_change; },
            [](const PredicateChange&) { return ChangeGroup::edge_change; },
            [](const auto&) { return ChangeGroup::node_change; },
        },
        change.body);
}

auto all_type_names() -> const std::vector<std::string_view>& {
    static const std::vector<std::string_view> names{
        "NodeRename",        "NodeObsoletion",       "NodeDeletion",
        "ClassCreation",     "SynonymReplacement",   "NewTextDefinition",
        "RemoveTextDefinition", "NodeTextDefinitionChange", "NewSynonym",
        "RemoveSynonym",     "EdgeCreation",         "EdgeDeletion",
        "NodeMove",          "PredicateChange",
    };
    return names;
}

auto type_name(const Change& change) noexcept -> std::string_view {
    return all_type_names()[change.body.index()];
}

auto anchor_ref(const Change& change) -> std::optional<NodeRef> {
    return std::visit(
        overloaded{
            [](const ClassCreation& c) { return c.about_node; },
            [](const EdgeCreation& c) { return std::optional<NodeRef>(c.subject); },
            [](const EdgeDeletion& c) { return std::optional<NodeRef>(c.subject); },
            [](const PredicateChange& c) { return std::optional<NodeRef>(c.subject); },
            [](const auto& c) { return std::optional<NodeRef>(c.about_node); },
        },
        change.body);
}

auto validate(const Change& change) -> std::vector<std::string> {
    Validator v;
    if (change.id && change.id->empty()) {
        v.add("id: present but empty");
    }
    std::visit(
        overloaded{
            [&](const NodeRename& c) {
                v.ref("about_node", c.about_node);
                v.text("old_value", c.old_value);
                v.text("new_value", c.new_value);
            },
            [&](const NodeObsoletion& c) {
                v.ref("about_node", c.about_node);
                if (c.replacement) v.ref("replacement", *c.replacement);
            },
            [&](const NodeDeletion& c) { v.ref("about_node", c.about_node); },
            [&](const ClassCreation& c) {
                if (!c.about_node && !c.new_value) {
                    v.add("ClassCreation needs an id, a label, or both");
                }
                if (c.about_node) {
                    if (c.about_node->kind != RefKind::curie) {
                        v.add("about_node: a new class id must be a CURIE");
                    } else {
                        v.ref("about_node", *c.about_node);
                    }
                }
                v.text("new_value", c.new_value);
            },
            [&](const SynonymReplacement& c) {
                v.ref("about_node", c.about_node);
                v.text("old_value", c.old_value);
                v.text("new_value", c.new_value);
            },
            [&](const NewTextDefinition& c) {
                v.ref("about_node", c.about_node);
                v.text("new_value", c.new_value);
            },
            [&](const RemoveTextDefinition& c) { v.ref("about_node", c.about_node); },
            [&](const NodeTextDefinitionChange& c) {
                v.ref("about_node", c.about_node);
                v.text("old_value", c.old_value);
                v.text("new_value", c.new_value);
            },
            [&](const NewSynonym& c) {
                v.ref("about_node", c.about_node);
                v.text("new_value", c.new_value);
            },
            [&](const RemoveSynonym& c) {
                v.ref("about_node", c.about_node);
                v.text("old_value", c.old_value);
            },
            [&](const EdgeCreation& c) {
                v.ref("subject", c.subject);
                v.ref("predicate", c.predicate);
                v.ref("object", c.object);
            },
            [&](const EdgeDeletion& c) {
                v.ref("subject", c.subject);
                v.ref("predicate", c.predicate);
                v.ref("object", c.object);
            },
            [&](const NodeMove& c) {
                v.ref("about_node", c.about_node);
                v.ref("old_value", c.old_value);
                v.ref("new_value", c.new_value);
                if (c.predicate) v.ref("predicate", *c.predicate);
                if (c.old_value == c.new_value) {
                    v.add("old_value and new_value must differ");
                }
            },
            [&](const PredicateChange& c) {
                v.ref("subject", c.subject);
                v.ref("object", c.object);
                v.ref("old_value", c.old_value);
                v.ref("new_value", c.new_value);
                if (c.old_value == c.new_value) {
                    v.add("old_value and new_value must differ");
                }
            },
        },
        change.body);
    return v.take();
}

auto validate(const ChangeSet& changes) -> std::vector<std::string> {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < changes.changes.size(); ++i) {
        const auto& change = changes.changes[i];
        for (auto& msg : validate(change)) {
            out.push_back("change " + std::to_string(i) + ": " + msg);
        }
        if (change.id && !seen.insert(*change.id).second) {
            out.push_back("change " + std::to_string(i) + ": duplicate id '" + *change.id + "'");
        }
    }
    return out;
}

}  // namespace kgcl
