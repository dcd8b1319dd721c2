/// @file change.hpp
/// @brief The change-type taxonomy and change data model.
///
/// A Change is one of fourteen concrete change types, grouped into node
/// changes and edge changes. Every other module either produces or consumes
/// these values. All types here are plain values: copyable, comparable and
/// immutable once built.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kgcl {

/// True for `prefix:local` with prefix `[A-Za-z_][A-Za-z0-9_.-]*` and local `[A-Za-z0-9_.-]+`.
[[nodiscard]] auto is_curie(std::string_view text) noexcept -> bool;

/// True for `[A-Za-z_][A-Za-z0-9_]*`, the shape of unquoted relation names such as `part_of`.
[[nodiscard]] auto is_bare_name(std::string_view text) noexcept -> bool;

enum class RefKind { curie, label };

/// A node designator: either a CURIE or a label that has to be resolved against a graph.
struct NodeRef {
    RefKind kind = RefKind::curie;
    std::string value;

    [[nodiscard]] static auto curie(std::string id) -> NodeRef { return {RefKind::curie, std::move(id)}; }
    [[nodiscard]] static auto label(std::string text) -> NodeRef { return {RefKind::label, std::move(text)}; }

    /// CURIE-shaped text becomes a curie ref, anything else a label ref.
    [[nodiscard]] static auto from_identifier(std::string text) -> NodeRef;

    auto operator<=>(const NodeRef&) const = default;
};

enum class SynonymScope { exact, narrow, broad, related };

[[nodiscard]] auto to_string_view(SynonymScope scope) noexcept -> std::string_view;
[[nodiscard]] auto parse_scope(std::string_view text) noexcept -> std::optional<SynonymScope>;

// ---------------------------------------------------------------------------
// Node changes
// ---------------------------------------------------------------------------

struct NodeRename {
    NodeRef about_node;
    std::optional<std::string> old_value;
    std::string new_value;
    auto operator==(const NodeRename&) const -> bool = default;
};

struct NodeObsoletion {
    NodeRef about_node;
    std::optional<NodeRef> replacement;
    auto operator==(const NodeObsoletion&) const -> bool = default;
};

struct NodeDeletion {
    NodeRef about_node;
    auto operator==(const NodeDeletion&) const -> bool = default;
};

/// At least one of the id and the label must be present.
struct ClassCreation {
    std::optional<NodeRef> about_node;
    std::optional<std::string> new_value;
    auto operator==(const ClassCreation&) const -> bool = default;
};

struct SynonymReplacement {
    NodeRef about_node;
    std::string old_value;
    std::string new_value;
    auto operator==(const SynonymReplacement&) const -> bool = default;
};

struct NewTextDefinition {
    NodeRef about_node;
    std::string new_value;
    auto operator==(const NewTextDefinition&) const -> bool = default;
};

struct RemoveTextDefinition {
    NodeRef about_node;
    auto operator==(const RemoveTextDefinition&) const -> bool = default;
};

struct NodeTextDefinitionChange {
    NodeRef about_node;
    std::optional<std::string> old_value;
    std::string new_value;
    auto operator==(const NodeTextDefinitionChange&) const -> bool = default;
};

struct NewSynonym {
    NodeRef about_node;
    std::string new_value;
    std::optional<SynonymScope> scope;
    auto operator==(const NewSynonym&) const -> bool = default;
};

struct RemoveSynonym {
    NodeRef about_node;
    std::string old_value;
    auto operator==(const RemoveSynonym&) const -> bool = default;
};

// ---------------------------------------------------------------------------
// Edge changes
// ---------------------------------------------------------------------------

struct EdgeCreation {
    NodeRef subject;
    NodeRef predicate;
    NodeRef object;
    auto operator==(const EdgeCreation&) const -> bool = default;
};

struct EdgeDeletion {
    NodeRef subject;
    NodeRef predicate;
    NodeRef object;
    auto operator==(const EdgeDeletion&) const -> bool = default;
};

/// Moves `about_node` from parent `old_value` to parent `new_value`.
/// Without a predicate, the apply engine infers it from the single existing edge.
struct NodeMove {
    NodeRef about_node;
    NodeRef old_value;
    NodeRef new_value;
    std::optional<NodeRef> predicate;
    auto operator==(const NodeMove&) const -> bool = default;
};

struct PredicateChange {
    NodeRef subject;
    NodeRef object;
    NodeRef old_value;
    NodeRef new_value;
    auto operator==(const PredicateChange&) const -> bool = default;
};

using ChangeBody = std::variant<
    NodeRename, NodeObsoletion, NodeDeletion, ClassCreation, SynonymReplacement,
    NewTextDefinition, RemoveTextDefinition, NodeTextDefinitionChange, NewSynonym,
    RemoveSynonym, EdgeCreation, EdgeDeletion, NodeMove, PredicateChange>;

struct Change {
    std::optional<std::string> id;
    ChangeBody body;

    Change() = default;
    template <typename T>
        requires std::is_constructible_v<ChangeBody, T&&>
    Change(T&& variant_value)  // NOLINT(google-explicit-constructor)
        : body(std::forward<T>(variant_value)) {}

    auto operator==(const Change&) const -> bool = default;
};

/// Equality that ignores change ids.
[[nodiscard]] auto same_content(const Change& a, const Change& b) -> bool;

struct ChangeSet {
    std::vector<Change> changes;

    [[nodiscard]] auto size() const noexcept -> std::size_t { return changes.size(); }
    [[nodiscard]] auto empty() const noexcept -> bool { return changes.empty(); }
    auto operator==(const ChangeSet&) const -> bool = default;
};

/// Equality that ignores change ids.
[[nodiscard]] auto same_content(const ChangeSet& a, const ChangeSet& b) -> bool;

enum class ChangeGroup { node_change, edge_change };

[[nodiscard]] auto to_string_view(ChangeGroup group) noexcept -> std::string_view;

[[nodiscard]] auto classify(const Change& change) noexcept -> ChangeGroup;

/// The change-type name, e.g. "NodeRename".
[[nodiscard]] auto type_name(const Change& change) noexcept -> std::string_view;

/// All fourteen type names in declaration order.
[[nodiscard]] auto all_type_names() -> const std::vector<std::string_view>&;

/// The node a change is primarily about: `about_node`, or `subject` for
/// edge changes; empty for a ClassCreation without an explicit id.
[[nodiscard]] auto anchor_ref(const Change& change) -> std::optional<NodeRef>;

/// Returns one message per violated invariant; empty means valid.
[[nodiscard]] auto validate(const Change& change) -> std::vector<std::string>;

/// Validates each change and checks that ids are pairwise distinct.
[[nodiscard]] auto validate(const ChangeSet& changes) -> std::vector<std::string>;

}  // namespace kgcl
