#include "generators.hpp"

#include "kgcl/apply.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <iterator>
#include <string_view>
#include <vector>

namespace kgcl::testing {

namespace {

constexpr std::array<std::string_view, 16> k_words{
    "heart", "liver", "lung", "kidney", "bone", "thigh", "arm", "gut",
    "canal", "cell", "tissue", "organ", "system", "digestive", "Crohn's", "café"};

constexpr std::array<std::string_view, 4> k_predicates{"is_a", "part_of", "BFO:0000050", "RO:0002202"};

constexpr std::array<std::string_view, 18> k_awkward{
    "yes", "null", "~", "1e3", "0x10", "- a", "a: b", "#x", "'q'", "\"dq\"",
    " leading", "trailing ", "back\\slash", "it's", "a'b'c", "[x]", "{y}", "ünïcödé ✓"};

constexpr std::array<SynonymScope, 4> k_scopes{SynonymScope::exact, SynonymScope::narrow, SynonymScope::broad,
                                                SynonymScope::related};

auto coin(Rng& rng, double p = 0.5) -> bool { return std::bernoulli_distribution(p)(rng); }

auto pick_index(Rng& rng, std::size_t n) -> std::size_t {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

template <typename C>
auto pick(Rng& rng, const C& c) -> decltype(*std::begin(c)) {
    auto it = std::begin(c);
    std::advance(it, static_cast<std::ptrdiff_t>(pick_index(rng, static_cast<std::size_t>(std::size(c)))));
    return *it;
}

auto make_id(std::string_view prefix, std::size_t n) -> std::string {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%07zu", n);
    return std::string(prefix) + ":" + buf;
}

auto random_scope(Rng& rng) -> SynonymScope { return pick(rng, k_scopes); }

auto random_predicate(Rng& rng) -> std::string { return std::string(pick(rng, k_predicates)); }

auto node_ids(const Graph& g) -> std::vector<NodeId> {
    std::vector<NodeId> out;
    out.reserve(g.nodes().size());
    for (const auto& [id, node] : g.nodes()) out.push_back(id);
    return out;
}

/// Label ref when the label identifies the node uniquely, otherwise the CURIE.
auto ref_for(Rng& rng, const Graph& g, const NodeId& id) -> NodeRef {
    if (const auto* node = g.find(id); node != nullptr && node->label && coin(rng, 0.4)) {
        const auto same = g.with_label(*node->label);
        if (same.size() == 1 && !is_curie(*node->label)) return NodeRef::label(*node->label);
    }
    return NodeRef::curie(id);
}

auto unused_id(Rng& rng, const Graph& g, std::string_view prefix) -> NodeId {
    for (;;) {
        auto id = make_id(prefix, std::uniform_int_distribution<std::size_t>(1, 9'999'999)(rng));
        if (!g.contains(id)) return id;
    }
}

template <typename Pred>
auto nodes_where(const Graph& g, Pred pred) -> std::vector<const Node*> {
    std::vector<const Node*> out;
    for (const auto& [id, node] : g.nodes()) {
        if (pred(node)) out.push_back(&node);
    }
    return out;
}

auto value_count(const Node& n, const std::string& value) -> std::size_t {
    return static_cast<std::size_t>(
        std::count_if(n.synonyms.begin(), n.synonyms.end(), [&](const Synonym& s) { return s.value == value; }));
}

auto edge_count(const Graph& g, const NodeId& subject, const NodeId& object) -> std::size_t {
    const auto edges = g.edges_from(subject);
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [&](const Edge& e) { return e.object == object; }));
}

auto random_ref(Rng& rng, bool allow_control) -> NodeRef {
    if (coin(rng)) return NodeRef::curie(make_id(coin(rng) ? "EX" : "UBERON", pick_index(rng, 10'000)));
    return NodeRef::label(random_text(rng, allow_control));
}

auto random_predicate_ref(Rng& rng, bool allow_control) -> NodeRef {
    if (coin(rng, 0.7)) return NodeRef::from_identifier(random_predicate(rng));
    return random_ref(rng, allow_control);
}

}  // namespace

auto random_label(Rng& rng) -> std::string {
    std::string out(pick(rng, k_words));
    if (coin(rng, 0.6)) out += " " + std::string(pick(rng, k_words));
    return out;
}

auto random_text(Rng& rng, bool allow_control) -> std::string {
    std::string out;
    switch (pick_index(rng, allow_control ? 5 : 4)) {
        case 0: out = std::string(pick(rng, k_awkward)); break;
        case 1: out = random_label(rng); break;
        case 2: out = " " + random_label(rng) + " with " + std::string(pick(rng, k_awkward)); break;
        case 3: out = std::string(pick(rng, k_words)) + "'s " + std::string(pick(rng, k_awkward)); break;
        default: out = random_label(rng) + (coin(rng) ? "\t" : "\n") + random_label(rng); break;
    }
    return out;
}

auto random_graph(Rng& rng, const GraphGenOptions& opts) -> Graph {
    Graph g;
    const auto n = std::uniform_int_distribution<std::size_t>(opts.min_nodes, opts.max_nodes)(rng);
    std::vector<NodeId> ids;
    for (std::size_t i = 0; i < n; ++i) {
        Node node;
        node.id = make_id(coin(rng, 0.8) ? "EX" : "UBERON", i + 1);
        if (coin(rng, 0.9)) node.label = random_label(rng);
        if (coin(rng, 0.4)) node.definition = random_text(rng);
        const auto syn_count = pick_index(rng, 4);
        for (std::size_t k = 0; k < syn_count; ++k) {
            Synonym s{coin(rng) ? random_label(rng) : random_text(rng), random_scope(rng)};
            if (!node.has_synonym(s)) node.synonyms.push_back(std::move(s));
        }
        if (coin(rng, opts.property_node_rate)) node.kind = NodeKind::property;
        ids.push_back(node.id);
        g.add_node(std::move(node));
    }
    for (const auto& id : ids) {
        if (!coin(rng, opts.deprecated_rate)) continue;
        const auto replacement = coin(rng) ? std::optional<NodeId>(pick(rng, ids)) : std::nullopt;
        g.edit(id, [&](Node& node) {
            node.deprecated = true;
            if (replacement && *replacement != id) node.replaced_by = replacement;
        });
    }
    const auto edge_target = static_cast<std::size_t>(static_cast<double>(n) * opts.edges_per_node);
    for (std::size_t i = 0; i < edge_target; ++i) {
        Edge e{pick(rng, ids), random_predicate(rng), pick(rng, ids)};
        if (coin(rng, opts.dangling_object_rate)) e.object = make_id("EXT", pick_index(rng, 1000));
        if (e.subject != e.object) g.add_edge(std::move(e));
    }
    return g;
}

auto random_applicable_change(Rng& rng, const Graph& g, bool allow_creation) -> std::optional<Change> {
    const auto ids = node_ids(g);
    const std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    const auto kind = pick_index(rng, 14);
    if (ids.empty() && kind != 3) return std::nullopt;

    switch (kind) {
        case 0: {
            const auto& node = *g.find(pick(rng, ids));
            std::optional<std::string> old;
            if (node.label && coin(rng)) old = node.label;
            return NodeRename{ref_for(rng, g, node.id), old, random_label(rng)};
        }
        case 1: {
            const auto live = nodes_where(g, [](const Node& n) { return !n.deprecated; });
            if (live.empty()) return std::nullopt;
            const auto& node = *pick(rng, live);
            std::optional<NodeRef> replacement;
            if (coin(rng)) {
                auto other = coin(rng, 0.8) ? pick(rng, ids) : make_id("EXT", pick_index(rng, 1000));
                if (other != node.id) replacement = NodeRef::curie(other);
            }
            return NodeObsoletion{ref_for(rng, g, node.id), replacement};
        }
        case 2: return NodeDeletion{ref_for(rng, g, pick(rng, ids))};
        case 3: {
            if (!allow_creation) return std::nullopt;
            std::optional<NodeRef> id;
            if (coin(rng, 0.7)) id = NodeRef::curie(unused_id(rng, g, "EX"));
            return ClassCreation{id, random_label(rng)};
        }
        case 4: {
            const auto with_syn = nodes_where(g, [](const Node& n) { return !n.synonyms.empty(); });
            if (with_syn.empty()) return std::nullopt;
            const auto& node = *pick(rng, with_syn);
            const auto& syn = pick(rng, node.synonyms);
            if (value_count(node, syn.value) != 1) return std::nullopt;
            auto replacement = random_text(rng);
            if (replacement == syn.value || node.has_synonym({replacement, syn.scope})) return std::nullopt;
            return SynonymReplacement{ref_for(rng, g, node.id), syn.value, replacement};
        }
        case 5: {
            const auto bare = nodes_where(g, [](const Node& n) { return !n.definition; });
            if (bare.empty()) return std::nullopt;
            return NewTextDefinition{ref_for(rng, g, pick(rng, bare)->id), random_text(rng)};
        }
        case 6: {
            const auto defined = nodes_where(g, [](const Node& n) { return n.definition.has_value(); });
            if (defined.empty()) return std::nullopt;
            return RemoveTextDefinition{ref_for(rng, g, pick(rng, defined)->id)};
        }
        case 7: {
            const auto defined = nodes_where(g, [](const Node& n) { return n.definition.has_value(); });
            if (defined.empty()) return std::nullopt;
            const auto& node = *pick(rng, defined);
            std::optional<std::string> old;
            if (coin(rng)) old = node.definition;
            return NodeTextDefinitionChange{ref_for(rng, g, node.id), old, random_text(rng)};
        }
        case 8: {
            const auto& node = *g.find(pick(rng, ids));
            std::optional<SynonymScope> scope;
            if (coin(rng, 0.8)) scope = random_scope(rng);
            auto value = coin(rng) ? random_label(rng) : random_text(rng);
            if (node.has_synonym({value, scope.value_or(SynonymScope::related)})) return std::nullopt;
            return NewSynonym{ref_for(rng, g, node.id), std::move(value), scope};
        }
        case 9: {
            const auto with_syn = nodes_where(g, [](const Node& n) { return !n.synonyms.empty(); });
            if (with_syn.empty()) return std::nullopt;
            const auto& node = *pick(rng, with_syn);
            return RemoveSynonym{ref_for(rng, g, node.id), pick(rng, node.synonyms).value};
        }
        case 10: {
            Edge e{pick(rng, ids), random_predicate(rng), pick(rng, ids)};
            if (coin(rng, 0.05)) e.object = make_id("EXT", pick_index(rng, 1000));
            if (e.subject == e.object || g.has_edge(e)) return std::nullopt;
            return EdgeCreation{ref_for(rng, g, e.subject), NodeRef::from_identifier(e.predicate),
                                ref_for(rng, g, e.object)};
        }
        case 11: {
            if (edges.empty()) return std::nullopt;
            const auto& e = pick(rng, edges);
            return EdgeDeletion{ref_for(rng, g, e.subject), NodeRef::from_identifier(e.predicate),
                                ref_for(rng, g, e.object)};
        }
        case 12: {
            if (edges.empty()) return std::nullopt;
            const auto& e = pick(rng, edges);
            const auto target = pick(rng, ids);
            if (target == e.object || target == e.subject || g.has_edge({e.subject, e.predicate, target})) {
                return std::nullopt;
            }
            std::optional<NodeRef> predicate;
            if (edge_count(g, e.subject, e.object) != 1 || coin(rng, 0.3)) {
                predicate = NodeRef::from_identifier(e.predicate);
            }
            return NodeMove{ref_for(rng, g, e.subject), ref_for(rng, g, e.object), ref_for(rng, g, target),
                            predicate};
        }
        default: {
            if (edges.empty()) return std::nullopt;
            const auto& e = pick(rng, edges);
            const auto predicate = random_predicate(rng);
            if (predicate == e.predicate || g.has_edge({e.subject, predicate, e.object})) return std::nullopt;
            return PredicateChange{ref_for(rng, g, e.subject), ref_for(rng, g, e.object),
                                   NodeRef::from_identifier(e.predicate), NodeRef::from_identifier(predicate)};
        }
    }
}

auto random_change_sequence(Rng& rng, const Graph& start, std::size_t max_len) -> ChangeSet {
    ChangeSet out;
    Graph work = start;
    const auto target = pick_index(rng, max_len + 1);
    for (std::size_t attempts = 0; out.size() < target && attempts < target * 20; ++attempts) {
        auto change = random_applicable_change(rng, work);
        if (!change) continue;
        if (apply_change(work, *change).status == ApplyStatus::applied) out.changes.push_back(std::move(*change));
    }
    return out;
}

auto random_change(Rng& rng, bool allow_control) -> Change {
    const auto text = [&] { return random_text(rng, allow_control); };
    const auto ref = [&] { return random_ref(rng, allow_control); };
    switch (pick_index(rng, 14)) {
        case 0: return NodeRename{ref(), coin(rng) ? std::optional<std::string>(text()) : std::nullopt, text()};
        case 1: return NodeObsoletion{ref(), coin(rng) ? std::optional<NodeRef>(ref()) : std::nullopt};
        case 2: return NodeDeletion{ref()};
        case 3: {
            ClassCreation c;
            const auto shape = pick_index(rng, 3);
            if (shape != 1) c.about_node = NodeRef::curie(make_id("EX", pick_index(rng, 10'000)));
            if (shape != 0) c.new_value = text();
            return c;
        }
        case 4: return SynonymReplacement{ref(), text(), text()};
        case 5: return NewTextDefinition{ref(), text()};
        case 6: return RemoveTextDefinition{ref()};
        case 7: return NodeTextDefinitionChange{ref(), coin(rng) ? std::optional<std::string>(text()) : std::nullopt,
                                                text()};
        case 8: return NewSynonym{ref(), text(), coin(rng) ? std::optional(random_scope(rng)) : std::nullopt};
        case 9: return RemoveSynonym{ref(), text()};
        case 10: return EdgeCreation{ref(), random_predicate_ref(rng, allow_control), ref()};
        case 11: return EdgeDeletion{ref(), random_predicate_ref(rng, allow_control), ref()};
        case 12: {
            auto from = ref();
            auto to = ref();
            while (to == from) to = ref();
            return NodeMove{ref(), std::move(from), std::move(to),
                            coin(rng) ? std::optional(random_predicate_ref(rng, allow_control)) : std::nullopt};
        }
        default: {
            auto old_pred = random_predicate_ref(rng, allow_control);
            auto new_pred = random_predicate_ref(rng, allow_control);
            while (new_pred == old_pred) new_pred = random_predicate_ref(rng, allow_control);
            return PredicateChange{ref(), ref(), std::move(old_pred), std::move(new_pred)};
        }
    }
}

auto random_changeset(Rng& rng, std::size_t max_len, bool allow_control) -> ChangeSet {
    ChangeSet out;
    const auto n = pick_index(rng, max_len + 1);
    for (std::size_t i = 0; i < n; ++i) {
        auto change = random_change(rng, allow_control);
        if (coin(rng, 0.3)) change.id = coin(rng) ? "chg-" + std::to_string(i) : std::to_string(i);
        out.changes.push_back(std::move(change));
    }
    return out;
}

}  // namespace kgcl::testing
