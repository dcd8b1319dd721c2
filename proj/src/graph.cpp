#include "kgcl/graph.hpp"

#include "kgcl/error.hpp"

#include <algorithm>

namespace kgcl {

auto to_string_view(NodeKind kind) noexcept -> std::string_view {
    switch (kind) {
        case NodeKind::class_node: return "CLASS";
        case NodeKind::property:   return "PROPERTY";
        case NodeKind::individual: return "INDIVIDUAL";
    }
    return "CLASS";
}

auto Node::has_synonym(const Synonym& s) const -> bool {
    return std::find(synonyms.begin(), synonyms.end(), s) != synonyms.end();
}

auto node_equal(const Node& a, const Node& b) -> bool {
    if (a.id != b.id || a.label != b.label || a.definition != b.definition ||
        a.deprecated != b.deprecated || a.replaced_by != b.replaced_by || a.kind != b.kind ||
        a.pending != b.pending || a.synonyms.size() != b.synonyms.size()) {
        return false;
    }
    auto left = a.synonyms;
    auto right = b.synonyms;
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    return left == right;
}

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

auto Graph::find(std::string_view id) const -> const Node* {
    auto it = m_nodes.find(std::string(id));
    return it == m_nodes.end() ? nullptr : &it->second;
}

auto Graph::with_label(std::string_view label) const -> std::vector<NodeId> {
    auto it = m_label_index.find(std::string(label));
    if (it == m_label_index.end()) return {};
    return {it->second.begin(), it->second.end()};
}

void Graph::add_node(Node node) {
    if (m_nodes.contains(node.id)) {
        throw Error(ErrorCode::duplicate_node_id, "duplicate node id '" + node.id + "'");
    }
    index_label(node.id, node.label);
    auto id = node.id;
    m_nodes.emplace(std::move(id), std::move(node));
}

auto Graph::remove_node(std::string_view id) -> bool {
    auto it = m_nodes.find(std::string(id));
    if (it == m_nodes.end()) return false;
    unindex_label(it->first, it->second.label);
    for (const auto& edge : edges_from(id)) remove_edge(edge);
    for (const auto& edge : edges_to(id)) remove_edge(edge);
    m_nodes.erase(it);
    return true;
}

auto Graph::edit(std::string_view id, const std::function<void(Node&)>& fn) -> bool {
    auto it = m_nodes.find(std::string(id));
    if (it == m_nodes.end()) return false;
    auto old_label = it->second.label;
    fn(it->second);
    it->second.id = it->first;
    if (it->second.label != old_label) {
        unindex_label(it->first, old_label);
        index_label(it->first, it->second.label);
    }
    return true;
}

auto Graph::add_edge(Edge edge) -> bool {
    if (m_edges.contains(edge)) return false;
    m_edges_by_object.insert(edge);
    m_edges.insert(std::move(edge));
    return true;
}

auto Graph::remove_edge(const Edge& edge) -> bool {
    if (m_edges.erase(edge) == 0) return false;
    m_edges_by_object.erase(edge);
    return true;
}

auto Graph::edges_from(std::string_view subject) const -> std::vector<Edge> {
    std::vector<Edge> out;
    const Edge probe{std::string(subject), {}, {}};
    for (auto it = m_edges.lower_bound(probe); it != m_edges.end() && it->subject == subject; ++it) {
        out.push_back(*it);
    }
    return out;
}

auto Graph::edges_to(std::string_view object) const -> std::vector<Edge> {
    std::vector<Edge> out;
    const Edge probe{{}, {}, std::string(object)};
    for (auto it = m_edges_by_object.lower_bound(probe);
         it != m_edges_by_object.end() && it->object == object; ++it) {
        out.push_back(*it);
    }
    return out;
}

void Graph::index_label(const NodeId& id, const std::optional<std::string>& label) {
    if (label) m_label_index[*label].insert(id);
}

void Graph::unindex_label(const NodeId& id, const std::optional<std::string>& label) {
    if (!label) return;
    auto it = m_label_index.find(*label);
    if (it == m_label_index.end()) return;
    it->second.erase(id);
    if (it->second.empty()) m_label_index.erase(it);
}

auto Graph::audit() const -> std::vector<std::string> {
    std::vector<std::string> problems;
    std::size_t labelled = 0;
    for (const auto& [id, node] : m_nodes) {
        if (node.id != id) problems.push_back("node keyed '" + id + "' carries id '" + node.id + "'");
        if (node.replaced_by && !node.deprecated) {
            problems.push_back("node '" + id + "' has replaced_by but is not deprecated");
        }
        auto syns = node.synonyms;
        std::sort(syns.begin(), syns.end());
        if (std::adjacent_find(syns.begin(), syns.end()) != syns.end()) {
            problems.push_back("node '" + id + "' has duplicate synonyms");
        }
        if (!node.label) continue;
        ++labelled;
        auto it = m_label_index.find(*node.label);
        if (it == m_label_index.end() || !it->second.contains(id)) {
            problems.push_back("label of '" + id + "' missing from label index");
        }
    }
    std::size_t indexed = 0;
    for (const auto& [label, ids] : m_label_index) {
        if (ids.empty()) problems.push_back("empty label index entry '" + label + "'");
        for (const auto& id : ids) {
            ++indexed;
            const auto* node = find(id);
            if (node == nullptr || node->label != label) {
                problems.push_back("stale label index entry '" + label + "' -> '" + id + "'");
            }
        }
    }
    if (indexed != labelled) problems.push_back("label index size mismatch");
    if (m_edges.size() != m_edges_by_object.size()) problems.push_back("edge index size mismatch");
    for (const auto& edge : m_edges_by_object) {
        if (!m_edges.contains(edge)) problems.push_back("stale reverse edge index entry");
    }
    return problems;
}

// ---------------------------------------------------------------------------
// Free functions
// ---------------------------------------------------------------------------

auto describe_difference(const Graph& a, const Graph& b) -> std::string {
    for (const auto& [id, node] : a.nodes()) {
        const auto* other = b.find(id);
        if (other == nullptr) return "node '" + id + "' only in left";
        if (!node_equal(node, *other)) return "node '" + id + "' differs";
    }
    for (const auto& [id, node] : b.nodes()) {
        if (!a.contains(id)) return "node '" + id + "' only in right";
    }
    for (const auto& e : a.edges()) {
        if (!b.has_edge(e)) return "edge " + e.subject + " " + e.predicate + " " + e.object + " only in left";
    }
    for (const auto& e : b.edges()) {
        if (!a.has_edge(e)) return "edge " + e.subject + " " + e.predicate + " " + e.object + " only in right";
    }
    return {};
}

auto graph_equal(const Graph& a, const Graph& b) -> bool {
    if (a.nodes().size() != b.nodes().size() || a.edges() != b.edges()) return false;
    auto ia = a.nodes().begin();
    auto ib = b.nodes().begin();
    for (; ia != a.nodes().end(); ++ia, ++ib) {
        if (ia->first != ib->first || !node_equal(ia->second, ib->second)) return false;
    }
    return true;
}

auto resolve(const Graph& graph, const NodeRef& ref) -> NodeId {
    if (ref.kind == RefKind::curie) {
        if (graph.contains(ref.value)) return ref.value;
        throw Error(ErrorCode::not_found, "no node with id " + ref.value);
    }
    auto ids = graph.with_label(ref.value);
    if (ids.size() == 1) return ids.front();
    if (ids.size() > 1) {
        std::string list;
        for (const auto& id : ids) list += (list.empty() ? "" : ", ") + id;
        throw Error(ErrorCode::ambiguous, "label '" + ref.value + "' matches " + list);
    }
    if (is_curie(ref.value) && graph.contains(ref.value)) return ref.value;
    throw Error(ErrorCode::not_found, "no node with label '" + ref.value + "'");
}

auto lint(const Graph& graph) -> std::vector<LintWarning> {
    std::vector<LintWarning> out;
    for (const auto& e : graph.edges()) {
        const auto* subject = graph.find(e.subject);
        const auto* object = graph.find(e.object);
        const auto triple = e.subject + " " + e.predicate + " " + e.object;
        if (subject == nullptr) out.push_back({"dangling subject in edge " + triple});
        if (object == nullptr) out.push_back({"dangling object in edge " + triple});
        if (subject != nullptr && object != nullptr && !subject->deprecated && object->deprecated) {
            out.push_back({"edge " + triple + " points at deprecated node " + e.object});
        }
    }
    return out;
}

}  // namespace kgcl
