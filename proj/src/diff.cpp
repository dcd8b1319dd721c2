#include "kgcl/diff.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>

namespace kgcl {

namespace {

auto ref(const NodeId& id) -> NodeRef { return NodeRef::curie(id); }

auto pred_ref(const std::string& predicate) -> NodeRef { return NodeRef::from_identifier(predicate); }

/// Differences the change language cannot express as in-place edits of a
/// node; those nodes are deleted and created afresh.
auto needs_recreate(const Node& l, const Node& r) -> bool {
    if (l.deprecated && !r.deprecated) return true;
    if (l.deprecated && r.deprecated && l.replaced_by != r.replaced_by) return true;
    if (l.label && !r.label) return true;
    return l.kind != r.kind && r.kind == NodeKind::class_node;
}

void emit_creation(const Node& r, ChangeSet& out) {
    out.changes.emplace_back(ClassCreation{ref(r.id), r.label});
    if (r.definition) out.changes.emplace_back(NewTextDefinition{ref(r.id), *r.definition});
    auto syns = r.synonyms;
    std::sort(syns.begin(), syns.end());
    for (const auto& s : syns) out.changes.emplace_back(NewSynonym{ref(r.id), s.value, s.scope});
    if (r.deprecated) {
        std::optional<NodeRef> replacement;
        if (r.replaced_by) replacement = ref(*r.replaced_by);
        out.changes.emplace_back(NodeObsoletion{ref(r.id), replacement});
    }
}

void emit_synonym_changes(const Node& l, const Node& r, const DiffOptions& opts, ChangeSet& out) {
    const std::set<Synonym> left(l.synonyms.begin(), l.synonyms.end());
    const std::set<Synonym> right(r.synonyms.begin(), r.synonyms.end());
    std::vector<Synonym> removed;
    std::vector<Synonym> added;
    std::set_difference(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(removed));
    std::set_difference(right.begin(), right.end(), left.begin(), left.end(), std::back_inserter(added));
    if (removed.empty() && added.empty()) return;

    if (opts.coalesce_synonym_replacements && removed.size() == 1 && added.size() == 1 &&
        removed.front().scope == added.front().scope) {
        // Replacement addresses the synonym by value alone, so the value must be unique.
        const auto same_value = std::count_if(left.begin(), left.end(), [&](const Synonym& s) {
            return s.value == removed.front().value;
        });
        if (same_value == 1) {
            out.changes.emplace_back(SynonymReplacement{ref(l.id), removed.front().value, added.front().value});
            return;
        }
    }

    // RemoveSynonym drops every scope of a value, so surviving scopes are re-added.
    std::set<std::string> wiped;
    for (const auto& s : removed) wiped.insert(s.value);
    for (const auto& value : wiped) out.changes.emplace_back(RemoveSynonym{ref(l.id), value});
    std::set<Synonym> to_add(added.begin(), added.end());
    for (const auto& s : right) {
        if (wiped.contains(s.value)) to_add.insert(s);
    }
    for (const auto& s : to_add) out.changes.emplace_back(NewSynonym{ref(l.id), s.value, s.scope});
}

void emit_node_edits(const Node& l, const Node& r, const DiffOptions& opts, ChangeSet& out) {
    if (l.label != r.label && r.label) {
        out.changes.emplace_back(NodeRename{ref(l.id), l.label, *r.label});
    }
    if (!l.definition && r.definition) {
        out.changes.emplace_back(NewTextDefinition{ref(l.id), *r.definition});
    } else if (l.definition && !r.definition) {
        out.changes.emplace_back(RemoveTextDefinition{ref(l.id)});
    } else if (l.definition && r.definition && *l.definition != *r.definition) {
        out.changes.emplace_back(NodeTextDefinitionChange{ref(l.id), l.definition, *r.definition});
    }
    emit_synonym_changes(l, r, opts, out);
    if (!l.deprecated && r.deprecated) {
        std::optional<NodeRef> replacement;
        if (r.replaced_by) replacement = ref(*r.replaced_by);
        out.changes.emplace_back(NodeObsoletion{ref(l.id), replacement});
    }
}

struct EdgeChangeOut {
    Edge key;
    Change change;
};

class EdgeCoalescer {
public:
    EdgeCoalescer(const Graph& left, const Graph& right, std::set<Edge> removed, std::set<Edge> added)
        : m_left(left), m_right(right), m_removed(std::move(removed)), m_added(std::move(added)) {}

    auto run(const DiffOptions& opts) -> std::vector<EdgeChangeOut> {
        bool progress = true;
        while (progress) {
            progress = false;
            if (opts.coalesce_predicate_changes) progress |= pair_predicate_changes();
            if (opts.coalesce_moves) progress |= pair_moves();
        }
        for (const auto& e : m_removed) {
            m_out.push_back({e, EdgeDeletion{ref(e.subject), pred_ref(e.predicate), ref(e.object)}});
        }
        for (const auto& e : m_added) {
            m_out.push_back({e, EdgeCreation{ref(e.subject), pred_ref(e.predicate), ref(e.object)}});
        }
        std::sort(m_out.begin(), m_out.end(), [](const EdgeChangeOut& a, const EdgeChangeOut& b) {
            return a.key < b.key;  // each triple is the key of at most one change
        });
        return std::move(m_out);
    }

private:
    using Key = std::pair<std::string, std::string>;
    struct Group {
        std::vector<Edge> removed;
        std::vector<Edge> added;
    };

    /// Groups with exactly one removal and one addition under `key_of`.
    template <typename KeyFn>
    auto unique_pairs(KeyFn key_of) const -> std::vector<std::pair<Edge, Edge>> {
        std::map<Key, Group> groups;
        for (const auto& e : m_removed) groups[key_of(e)].removed.push_back(e);
        for (const auto& e : m_added) {
            auto it = groups.find(key_of(e));
            if (it != groups.end()) it->second.added.push_back(e);
        }
        std::vector<std::pair<Edge, Edge>> out;
        for (auto& [key, g] : groups) {
            if (g.removed.size() == 1 && g.added.size() == 1) out.emplace_back(g.removed.front(), g.added.front());
        }
        return out;
    }

    auto pair_predicate_changes() -> bool {
        auto pairs = unique_pairs([](const Edge& e) { return Key{e.subject, e.object}; });
        for (const auto& [old_edge, new_edge] : pairs) {
            consume(old_edge, new_edge);
            m_out.push_back({old_edge, PredicateChange{ref(old_edge.subject), ref(old_edge.object),
                                                       pred_ref(old_edge.predicate), pred_ref(new_edge.predicate)}});
        }
        return !pairs.empty();
    }

    auto pair_moves() -> bool {
        auto pairs = unique_pairs([](const Edge& e) { return Key{e.subject, e.predicate}; });
        for (const auto& [old_edge, new_edge] : pairs) {
            consume(old_edge, new_edge);
            NodeMove move{ref(old_edge.subject), ref(old_edge.object), ref(new_edge.object), std::nullopt};
            if (!predicate_inferable(old_edge)) move.predicate = pred_ref(old_edge.predicate);
            m_out.push_back({old_edge, std::move(move)});
        }
        return !pairs.empty();
    }

    /// Apply infers the predicate when exactly one edge joins child and old
    /// parent. That holds throughout the edge phase iff the left graph has
    /// just this one and the right graph has none.
    [[nodiscard]] auto predicate_inferable(const Edge& old_edge) const -> bool {
        const auto count_to = [&](const Graph& g) {
            const auto edges = g.edges_from(old_edge.subject);
            return std::count_if(edges.begin(), edges.end(),
                                 [&](const Edge& e) { return e.object == old_edge.object; });
        };
        return count_to(m_left) == 1 && count_to(m_right) == 0;
    }

    void consume(const Edge& old_edge, const Edge& new_edge) {
        m_removed.erase(old_edge);
        m_added.erase(new_edge);
    }

    const Graph& m_left;
    const Graph& m_right;
    std::set<Edge> m_removed;
    std::set<Edge> m_added;
    std::vector<EdgeChangeOut> m_out;
};

}  // namespace

auto diff(const Graph& left, const Graph& right, const DiffOptions& opts) -> ChangeSet {
    ChangeSet out;
    std::set<NodeId> cascaded;  // nodes whose left-side edges vanish with a NodeDeletion

    auto li = left.nodes().begin();
    auto ri = right.nodes().begin();
    while (li != left.nodes().end() || ri != right.nodes().end()) {
        if (ri == right.nodes().end() || (li != left.nodes().end() && li->first < ri->first)) {
            out.changes.emplace_back(NodeDeletion{ref(li->first)});
            cascaded.insert(li->first);
            ++li;
        } else if (li == left.nodes().end() || ri->first < li->first) {
            emit_creation(ri->second, out);
            ++ri;
        } else {
            if (needs_recreate(li->second, ri->second)) {
                out.changes.emplace_back(NodeDeletion{ref(li->first)});
                cascaded.insert(li->first);
                emit_creation(ri->second, out);
            } else {
                emit_node_edits(li->second, ri->second, opts, out);
            }
            ++li;
            ++ri;
        }
    }

    std::vector<Edge> surviving;
    surviving.reserve(left.edges().size());
    for (const auto& e : left.edges()) {
        if (!cascaded.contains(e.subject) && !cascaded.contains(e.object)) surviving.push_back(e);
    }
    std::set<Edge> removed;
    std::set<Edge> added;
    std::set_difference(surviving.begin(), surviving.end(), right.edges().begin(), right.edges().end(),
                        std::inserter(removed, removed.end()));
    std::set_difference(right.edges().begin(), right.edges().end(), surviving.begin(), surviving.end(),
                        std::inserter(added, added.end()));

    for (auto& item : EdgeCoalescer(left, right, std::move(removed), std::move(added)).run(opts)) {
        out.changes.push_back(std::move(item.change));
    }
    return out;
}

auto format_diff(const ChangeSet& changes, ChangeFormat format) -> std::string {
    return write_changes(changes, format);
}

}  // namespace kgcl
