#include "kgcl/apply.hpp"

#include "kgcl/serialize.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace kgcl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

auto describe(const NodeRef& ref) -> std::string {
    return ref.kind == RefKind::curie ? ref.value : "'" + ref.value + "'";
}

auto triple(const Edge& e) -> std::string { return e.subject + " " + e.predicate + " " + e.object; }

/// Resolves refs and runs one change. Every precondition is checked before
/// the first mutation, so a thrown Error leaves the graph untouched.
class Executor {
public:
    Executor(Graph& graph, const ApplyOptions& opts, ApplyEntry& entry)
        : m_graph(graph), m_opts(opts), m_entry(entry) {}

    void run(const Change& change) {
        std::visit([this](const auto& c) { execute(c); }, change.body);
    }

    /// A node that must exist.
    auto anchor(const NodeRef& ref, const char* field) -> NodeId {
        NodeId id;
        try {
            id = resolve(m_graph, ref);
        } catch (const Error& e) {
            fail(e.code(), std::string(field) + " " + describe(ref) + ": " + e.what());
        }
        m_entry.resolved_ids.emplace_back(field, id);
        return id;
    }

private:
    /// A node that may be absent when named by CURIE.
    auto target(const NodeRef& ref, const char* field) -> NodeId {
        if (ref.kind == RefKind::curie && m_opts.allow_unresolved_curie_targets) {
            m_entry.resolved_ids.emplace_back(field, ref.value);
            return ref.value;
        }
        return anchor(ref, field);
    }

    /// Relation names pass through verbatim; other labels resolve to a node id.
    auto predicate(const NodeRef& ref, const char* field) -> std::string {
        if (ref.kind == RefKind::label && is_bare_name(ref.value)) {
            m_entry.resolved_ids.emplace_back(field, ref.value);
            return ref.value;
        }
        return target(ref, field);
    }

    auto node(const NodeId& id) const -> const Node& { return *m_graph.find(id); }

    void edit(const NodeId& id, const std::function<void(Node&)>& fn) { m_graph.edit(id, fn); }

    void execute(const NodeRename& c) {
        const auto id = anchor(c.about_node, "about_node");
        const auto& current = node(id).label;
        if (c.old_value && current != c.old_value) {
            fail(ErrorCode::mismatch, "label of " + id + " is " + (current ? "'" + *current + "'" : "absent") +
                                          ", not '" + *c.old_value + "'");
        }
        edit(id, [&](Node& n) { n.label = c.new_value; });
    }

    void execute(const NodeObsoletion& c) {
        const auto id = anchor(c.about_node, "about_node");
        std::optional<NodeId> replacement;
        if (c.replacement) replacement = target(*c.replacement, "replacement");
        if (node(id).deprecated) fail(ErrorCode::already_exists, id + " is already obsolete");
        if (replacement == id) fail(ErrorCode::mismatch, id + " cannot replace itself");
        edit(id, [&](Node& n) {
            n.deprecated = true;
            n.replaced_by = replacement;
        });
    }

    void execute(const NodeDeletion& c) {
        const auto id = anchor(c.about_node, "about_node");
        m_graph.remove_node(id);
    }

    void execute(const ClassCreation& c) {
        NodeId id;
        if (c.about_node) {
            id = c.about_node->value;
            if (m_graph.contains(id)) fail(ErrorCode::already_exists, "node " + id + " already exists");
        } else {
            id = mint_id();
            m_entry.message = "minted id " + id;
        }
        m_entry.resolved_ids.emplace_back("about_node", id);
        Node n;
        n.id = id;
        n.label = c.new_value;
        n.kind = NodeKind::class_node;
        m_graph.add_node(std::move(n));
    }

    void execute(const SynonymReplacement& c) {
        const auto id = anchor(c.about_node, "about_node");
        const auto& syns = node(id).synonyms;
        const auto matches = std::count_if(syns.begin(), syns.end(),
                                           [&](const Synonym& s) { return s.value == c.old_value; });
        if (matches == 0) fail(ErrorCode::missing_target, id + " has no synonym '" + c.old_value + "'");
        if (matches > 1) fail(ErrorCode::ambiguous, id + " has several synonyms '" + c.old_value + "'");
        const auto it = std::find_if(syns.begin(), syns.end(),
                                     [&](const Synonym& s) { return s.value == c.old_value; });
        const Synonym replaced{c.new_value, it->scope};
        if (node(id).has_synonym(replaced)) {
            fail(ErrorCode::already_exists, id + " already has synonym '" + c.new_value + "'");
        }
        const auto pos = static_cast<std::size_t>(it - syns.begin());
        edit(id, [&](Node& n) { n.synonyms[pos].value = c.new_value; });
    }

    void execute(const NewTextDefinition& c) {
        const auto id = anchor(c.about_node, "about_node");
        if (node(id).definition) fail(ErrorCode::already_exists, id + " already has a definition");
        edit(id, [&](Node& n) { n.definition = c.new_value; });
    }

    void execute(const RemoveTextDefinition& c) {
        const auto id = anchor(c.about_node, "about_node");
        if (!node(id).definition) fail(ErrorCode::missing_target, id + " has no definition");
        edit(id, [&](Node& n) { n.definition.reset(); });
    }

    void execute(const NodeTextDefinitionChange& c) {
        const auto id = anchor(c.about_node, "about_node");
        const auto& current = node(id).definition;
        if (!current) fail(ErrorCode::missing_target, id + " has no definition");
        if (c.old_value && *current != *c.old_value) {
            fail(ErrorCode::mismatch, "definition of " + id + " does not match old_value");
        }
        edit(id, [&](Node& n) { n.definition = c.new_value; });
    }

    void execute(const NewSynonym& c) {
        const auto id = anchor(c.about_node, "about_node");
        const Synonym syn{c.new_value, c.scope.value_or(SynonymScope::related)};
        if (node(id).has_synonym(syn)) {
            fail(ErrorCode::already_exists, id + " already has " + std::string(to_string_view(syn.scope)) +
                                                " synonym '" + syn.value + "'");
        }
        if (!c.scope) m_entry.message = "scope defaulted to related";
        edit(id, [&](Node& n) { n.synonyms.push_back(syn); });
    }

    void execute(const RemoveSynonym& c) {
        const auto id = anchor(c.about_node, "about_node");
        const auto& syns = node(id).synonyms;
        if (std::none_of(syns.begin(), syns.end(), [&](const Synonym& s) { return s.value == c.old_value; })) {
            fail(ErrorCode::missing_target, id + " has no synonym '" + c.old_value + "'");
        }
        edit(id, [&](Node& n) {
            std::erase_if(n.synonyms, [&](const Synonym& s) { return s.value == c.old_value; });
        });
    }

    void execute(const EdgeCreation& c) {
        Edge e{anchor(c.subject, "subject"), predicate(c.predicate, "predicate"), target(c.object, "object")};
        if (m_graph.has_edge(e)) fail(ErrorCode::already_exists, "edge " + triple(e) + " already exists");
        m_graph.add_edge(std::move(e));
    }

    void execute(const EdgeDeletion& c) {
        const Edge e{target(c.subject, "subject"), predicate(c.predicate, "predicate"), target(c.object, "object")};
        if (!m_graph.remove_edge(e)) fail(ErrorCode::missing_target, "edge " + triple(e) + " does not exist");
    }

    void execute(const NodeMove& c) {
        const auto child = target(c.about_node, "about_node");
        const auto from = target(c.old_value, "old_value");
        const auto to = target(c.new_value, "new_value");
        Edge old_edge{child, {}, from};
        if (c.predicate) {
            old_edge.predicate = predicate(*c.predicate, "predicate");
            if (!m_graph.has_edge(old_edge)) {
                fail(ErrorCode::missing_target, "edge " + triple(old_edge) + " does not exist");
            }
        } else {
            std::vector<Edge> candidates;
            for (auto& e : m_graph.edges_from(child)) {
                if (e.object == from) candidates.push_back(std::move(e));
            }
            if (candidates.size() != 1) {
                fail(ErrorCode::ambiguous_edge, std::to_string(candidates.size()) + " edges from " + child +
                                                    " to " + from + "; a move needs exactly one");
            }
            old_edge = std::move(candidates.front());
            m_entry.resolved_ids.emplace_back("predicate", old_edge.predicate);
        }
        Edge new_edge{child, old_edge.predicate, to};
        if (m_graph.has_edge(new_edge)) {
            fail(ErrorCode::already_exists, "edge " + triple(new_edge) + " already exists");
        }
        m_graph.remove_edge(old_edge);
        m_graph.add_edge(std::move(new_edge));
    }

    void execute(const PredicateChange& c) {
        const auto subject = target(c.subject, "subject");
        const auto object = target(c.object, "object");
        const Edge old_edge{subject, predicate(c.old_value, "old_value"), object};
        Edge new_edge{subject, predicate(c.new_value, "new_value"), object};
        if (!m_graph.has_edge(old_edge)) {
            fail(ErrorCode::missing_target, "edge " + triple(old_edge) + " does not exist");
        }
        if (m_graph.has_edge(new_edge)) {
            fail(ErrorCode::already_exists, "edge " + triple(new_edge) + " already exists");
        }
        m_graph.remove_edge(old_edge);
        m_graph.add_edge(std::move(new_edge));
    }

    auto mint_id() const -> NodeId {
        for (long long counter = 1;; ++counter) {
            auto digits = std::to_string(counter);
            const auto width = static_cast<std::size_t>(std::max(m_opts.auto_id_width, 1));
            if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
            auto id = m_opts.auto_id_prefix + ":" + digits;
            if (!m_graph.contains(id)) return id;
        }
    }

    Graph& m_graph;
    const ApplyOptions& m_opts;
    ApplyEntry& m_entry;
};

void store_provisional(Graph& graph, const Change& change, const ApplyOptions& opts, ApplyEntry& entry) {
    const auto anchor = anchor_ref(change);
    if (!anchor || std::holds_alternative<ClassCreation>(change.body)) {
        fail(ErrorCode::unrenderable_change, "a ClassCreation has no existing node to hold a pending change");
    }
    Executor executor(graph, opts, entry);
    const auto id = executor.anchor(*anchor, classify(change) == ChangeGroup::edge_change &&
                                                     !std::holds_alternative<NodeMove>(change.body)
                                                 ? "subject"
                                                 : "about_node");
    auto payload = change_to_json(change);
    graph.edit(id, [&](Node& n) { n.pending.push_back(std::move(payload)); });
    entry.message = "stored as pending on " + id;
}

}  // namespace

auto to_string_view(ApplyStatus status) noexcept -> std::string_view {
    switch (status) {
        case ApplyStatus::applied:            return "applied";
        case ApplyStatus::stored_provisional: return "stored_provisional";
        case ApplyStatus::failed:             return "failed";
    }
    return "failed";
}

auto ApplyReport::failed_count() const -> std::size_t {
    return static_cast<std::size_t>(std::count_if(
        entries.begin(), entries.end(), [](const ApplyEntry& e) { return e.status == ApplyStatus::failed; }));
}

auto apply_change(Graph& graph, const Change& change, const ApplyOptions& opts) -> ApplyEntry {
    ApplyEntry entry;
    if (auto problems = validate(change); !problems.empty()) {
        entry.error = ErrorCode::invalid_change;
        entry.message = problems.front();
        return entry;
    }
    try {
        if (opts.provisional) {
            store_provisional(graph, change, opts, entry);
            entry.status = ApplyStatus::stored_provisional;
        } else {
            Executor(graph, opts, entry).run(change);
            entry.status = ApplyStatus::applied;
        }
    } catch (const Error& e) {
        entry.status = ApplyStatus::failed;
        entry.error = e.code();
        entry.message = e.what();
    }
    return entry;
}

auto apply_changeset(Graph& graph, const ChangeSet& changes, const ApplyOptions& opts) -> ApplyReport {
    ApplyReport report;
    for (std::size_t i = 0; i < changes.changes.size(); ++i) {
        auto entry = apply_change(graph, changes.changes[i], opts);
        entry.index = i;
        const bool failed = entry.status == ApplyStatus::failed;
        report.entries.push_back(std::move(entry));
        if (failed && opts.on_error == OnError::halt) {
            report.halted_at = i;
            break;
        }
    }
    return report;
}

auto apply_pending(Graph& graph, PendingSelector /*selector*/) -> ApplyReport {
    struct Item {
        NodeId node;
        std::size_t position;
        std::string payload;
    };
    std::vector<Item> items;
    for (const auto& [id, node] : graph.nodes()) {
        for (std::size_t i = 0; i < node.pending.size(); ++i) items.push_back({id, i, node.pending[i]});
    }

    ApplyReport report;
    std::map<NodeId, std::set<std::size_t>> done;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& item = items[i];
        ApplyEntry entry;
        try {
            entry = apply_change(graph, change_from_json(item.payload));
        } catch (const Error& e) {
            entry.error = e.code();
            entry.message = std::string("unreadable pending payload: ") + e.what();
        }
        entry.index = i;
        entry.pending_node = item.node;
        if (entry.status == ApplyStatus::applied) done[item.node].insert(item.position);
        report.entries.push_back(std::move(entry));
    }

    for (const auto& [id, positions] : done) {
        graph.edit(id, [&](Node& n) {
            std::vector<std::string> kept;
            for (std::size_t i = 0; i < n.pending.size(); ++i) {
                if (!positions.contains(i)) kept.push_back(std::move(n.pending[i]));
            }
            n.pending = std::move(kept);
        });
    }
    return report;
}

auto report_to_json(const ApplyReport& report) -> std::string {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
        nlohmann::ordered_json j;
        j["index"] = e.index;
        j["status"] = std::string(to_string_view(e.status));
        if (e.error) j["error"] = std::string(to_string_view(*e.error));
        if (!e.message.empty()) j["message"] = e.message;
        if (e.pending_node) j["pending_node"] = *e.pending_node;
        nlohmann::ordered_json ids = nlohmann::ordered_json::array();
        for (const auto& [field, id] : e.resolved_ids) ids.push_back({{"field", field}, {"id", id}});
        j["resolved_ids"] = std::move(ids);
        entries.push_back(std::move(j));
    }
    nlohmann::ordered_json doc;
    doc["entries"] = std::move(entries);
    doc["failed"] = report.failed_count();
    if (report.halted_at) doc["halted_at"] = *report.halted_at;
    return doc.dump(2) + "\n";
}

}  // namespace kgcl
