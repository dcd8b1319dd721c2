#include "kgcl/request.hpp"

#include "kgcl/error.hpp"

namespace kgcl {

namespace {

auto trim(std::string_view s) -> std::string_view {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

auto is_trigger(std::string_view line) -> bool {
    line = trim(line);
    while (line.starts_with('#')) line.remove_prefix(1);
    return trim(line) == k_trigger_line;
}

/// The command text of a `- ` or `* ` bullet, or nullopt for other lines.
auto bullet_text(std::string_view line) -> std::optional<std::string_view> {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) return std::nullopt;
    line.remove_prefix(first);
    if (line.size() >= 2 && (line[0] == '-' || line[0] == '*') && (line[1] == ' ' || line[1] == '\t')) {
        return trim(line.substr(2));
    }
    return std::nullopt;
}

auto concept_name(const NodeRef& ref, const Graph* resolver) -> std::string {
    if (ref.kind == RefKind::label) return ref.value;
    if (resolver != nullptr) {
        if (const auto* node = resolver->find(ref.value); node != nullptr && node->label) return *node->label;
    }
    return ref.value;
}

}  // namespace

auto extract(std::string_view issue_text) -> ExtractionResult {
    ExtractionResult result;
    std::size_t pos = 0;
    int line_no = 0;
    bool in_block = false;
    while (pos < issue_text.size()) {
        auto nl = issue_text.find('\n', pos);
        if (nl == std::string_view::npos) nl = issue_text.size();
        const auto line = issue_text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        if (!in_block) {
            if (is_trigger(line)) {
                in_block = true;
                result.trigger_found = true;
            }
            continue;
        }
        if (trim(line).empty()) continue;
        const auto command = bullet_text(line);
        if (!command) break;
        result.command_lines.emplace_back(line_no, std::string(*command));
        try {
            result.changes.changes.push_back(parse_command(*command));
        } catch (const ParseError& e) {
            result.errors.emplace_back(line_no, e.relocated(line_no - 1));
        }
    }
    return result;
}

auto render_title(const Change& change, const Graph* resolver) -> std::string {
    const std::string prefix = "Proposal: ";
    if (const auto* c = std::get_if<NewSynonym>(&change.body)) {
        return prefix + "add synonym '" + c->new_value + "' for " + concept_name(c->about_node, resolver);
    }
    if (const auto* c = std::get_if<RemoveSynonym>(&change.body)) {
        return prefix + "remove synonym '" + c->old_value + "' for " + concept_name(c->about_node, resolver);
    }
    if (const auto* c = std::get_if<NodeObsoletion>(&change.body)) {
        auto title = prefix + "obsolete " + concept_name(c->about_node, resolver);
        if (c->replacement) title += " with replacement " + concept_name(*c->replacement, resolver);
        return title;
    }
    if (const auto* c = std::get_if<NodeRename>(&change.body)) {
        auto title = prefix + "rename " + concept_name(c->about_node, resolver);
        if (c->old_value) title += " from '" + *c->old_value + "'";
        return title + " to '" + c->new_value + "'";
    }
    try {
        return prefix + render_command(change);
    } catch (const Error&) {
        return prefix + std::string(type_name(change));
    }
}

auto render_request_body(const ChangeSet& changes) -> std::string {
    std::string out(k_trigger_line);
    out += '\n';
    for (const auto& change : changes.changes) {
        auto command = render_command(change);
        if (command.find_first_of("\r\n") != std::string::npos) {
            throw Error(ErrorCode::unrenderable_change,
                        std::string(type_name(change)) + " contains a line break and cannot be a bullet");
        }
        out += "- " + command + '\n';
    }
    return out;
}

}  // namespace kgcl
