/// @file graph.hpp
/// @brief In-memory knowledge graph: nodes with metadata plus a set of labeled edges.

#pragma once

#include "kgcl/change.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace kgcl {

using NodeId = std::string;

enum class NodeKind { class_node, property, individual };

[[nodiscard]] auto to_string_view(NodeKind kind) noexcept -> std::string_view;

struct Synonym {
    std::string value;
    SynonymScope scope = SynonymScope::related;
    auto operator<=>(const Synonym&) const = default;
};

struct Node {
    NodeId id;
    std::optional<std::string> label;
    std::optional<std::string> definition;
    std::vector<Synonym> synonyms;
    bool deprecated = false;
    std::optional<NodeId> replaced_by;
    NodeKind kind = NodeKind::class_node;
    /// Serialized changes stored against this node, oldest first.
    std::vector<std::string> pending;

    [[nodiscard]] auto has_synonym(const Synonym& s) const -> bool;
    auto operator==(const Node&) const -> bool = default;
};

/// Node equality with synonyms compared as multisets.
[[nodiscard]] auto node_equal(const Node& a, const Node& b) -> bool;

struct Edge {
    NodeId subject;
    std::string predicate;  ///< CURIE or bare relation name
    NodeId object;
    auto operator<=>(const Edge&) const = default;
};

/// Owns nodes, edges, and a label index kept in step with node labels.
///
/// Node metadata is only mutable through `edit`, which re-indexes the label
/// afterwards. A Graph supports concurrent readers or a single writer.
class Graph {
public:
    using NodeMap = std::map<NodeId, Node>;
    using EdgeSet = std::set<Edge>;

    [[nodiscard]] auto nodes() const noexcept -> const NodeMap& { return m_nodes; }
    [[nodiscard]] auto edges() const noexcept -> const EdgeSet& { return m_edges; }

    [[nodiscard]] auto find(std::string_view id) const -> const Node*;
    [[nodiscard]] auto contains(std::string_view id) const -> bool { return find(id) != nullptr; }

    /// Ids of all nodes carrying exactly this label.
    [[nodiscard]] auto with_label(std::string_view label) const -> std::vector<NodeId>;

    /// Throws Error(duplicate_node_id) if the id is taken.
    void add_node(Node node);

    /// Removes the node and every edge whose subject or object is the node.
    /// Returns false if the node did not exist.
    auto remove_node(std::string_view id) -> bool;

    /// Applies `fn` to the node, then refreshes the label index. Returns false if absent.
    auto edit(std::string_view id, const std::function<void(Node&)>& fn) -> bool;

    [[nodiscard]] auto has_edge(const Edge& edge) const -> bool { return m_edges.contains(edge); }

    /// Returns false, leaving the set untouched, if the triple already exists.
    auto add_edge(Edge edge) -> bool;
    auto remove_edge(const Edge& edge) -> bool;

    /// Edges with this subject, in (predicate, object) order.
    [[nodiscard]] auto edges_from(std::string_view subject) const -> std::vector<Edge>;
    /// Edges with this object.
    [[nodiscard]] auto edges_to(std::string_view object) const -> std::vector<Edge>;

    /// Consistency check of internal indexes; returns problems found (empty = consistent).
    [[nodiscard]] auto audit() const -> std::vector<std::string>;

private:
    struct ByObject {
        using is_transparent = void;
        auto operator()(const Edge& a, const Edge& b) const -> bool {
            return std::tie(a.object, a.subject, a.predicate) < std::tie(b.object, b.subject, b.predicate);
        }
    };

    void index_label(const NodeId& id, const std::optional<std::string>& label);
    void unindex_label(const NodeId& id, const std::optional<std::string>& label);

    NodeMap m_nodes;
    EdgeSet m_edges;
    std::set<Edge, ByObject> m_edges_by_object;
    std::unordered_map<std::string, std::set<NodeId>> m_label_index;
};

/// Node maps equal field-wise (synonyms as multisets, pending as ordered lists) and edge sets equal.
[[nodiscard]] auto graph_equal(const Graph& a, const Graph& b) -> bool;

/// Human-readable description of the first difference found, or empty if graph_equal.
[[nodiscard]] auto describe_difference(const Graph& a, const Graph& b) -> std::string;

/// Resolves a ref to a node id.
///
/// A curie ref must name an existing node. A label ref must match exactly one
/// node label; if no label matches and the text is itself a CURIE of an
/// existing node, that node is returned. Throws Error(not_found) or
/// Error(ambiguous) listing all candidates.
[[nodiscard]] auto resolve(const Graph& graph, const NodeRef& ref) -> NodeId;

struct LintWarning {
    std::string message;
    auto operator==(const LintWarning&) const -> bool = default;
};

/// Dangling edge endpoints and live nodes pointing at deprecated ones.
[[nodiscard]] auto lint(const Graph& graph) -> std::vector<LintWarning>;

}  // namespace kgcl
