#include "kgcl/error.hpp"
#include "kgcl/graph_io.hpp"

#include <json.hpp>

#include <array>
#include <utility>

namespace kgcl {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr std::string_view k_obo_purl = "http://purl.obolibrary.org/obo/";

constexpr std::array<std::pair<SynonymScope, std::string_view>, 4> k_synonym_preds{{
    {SynonymScope::exact, "hasExactSynonym"},
    {SynonymScope::narrow, "hasNarrowSynonym"},
    {SynonymScope::broad, "hasBroadSynonym"},
    {SynonymScope::related, "hasRelatedSynonym"},
}};

auto synonym_pred(SynonymScope scope) -> std::string_view {
    for (const auto& [s, pred] : k_synonym_preds) {
        if (s == scope) return pred;
    }
    return "hasRelatedSynonym";
}

auto scope_from_pred(std::string_view pred) -> std::optional<SynonymScope> {
    // OBO-graphs writers sometimes emit the full oboInOwl IRI.
    if (auto pos = pred.rfind('#'); pos != std::string_view::npos) pred = pred.substr(pos + 1);
    for (const auto& [s, name] : k_synonym_preds) {
        if (name == pred) return s;
    }
    return std::nullopt;
}

auto is_replaced_by_pred(std::string_view pred) -> bool {
    return pred == "term_replaced_by" || pred == "IAO:0100001" ||
           pred == "http://purl.obolibrary.org/obo/IAO_0100001";
}

[[noreturn]] void format_error(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::format_error, path + ": " + what);
}

auto get_string(const json& obj, const char* key, const std::string& path, bool required)
    -> std::optional<std::string> {
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (required) format_error(path, std::string("missing \"") + key + "\"");
        return std::nullopt;
    }
    if (!it->is_string()) format_error(path + "." + key, "expected a string");
    return it->get<std::string>();
}

auto get_array(const json& obj, const char* key, const std::string& path) -> const json* {
    auto it = obj.find(key);
    if (it == obj.end()) return nullptr;
    if (!it->is_array()) format_error(path + "." + key, "expected an array");
    return &*it;
}

auto require_curie(std::string text, const std::string& path) -> std::string {
    text = contract_obo_iri(text);
    if (!is_curie(text)) format_error(path, "'" + text + "' is not a CURIE");
    return text;
}

auto read_node(const json& j, const std::string& path) -> Node {
    if (!j.is_object()) format_error(path, "expected an object");
    Node node;
    node.id = require_curie(*get_string(j, "id", path, true), path + ".id");
    node.label = get_string(j, "lbl", path, false);
    if (auto type = get_string(j, "type", path, false)) {
        if (*type == "CLASS") {
            node.kind = NodeKind::class_node;
        } else if (*type == "PROPERTY") {
            node.kind = NodeKind::property;
        } else if (*type == "INDIVIDUAL") {
            node.kind = NodeKind::individual;
        } else {
            format_error(path + ".type", "unknown node type '" + *type + "'");
        }
    }

    auto meta_it = j.find("meta");
    if (meta_it == j.end()) return node;
    const auto meta_path = path + ".meta";
    const auto& meta = *meta_it;
    if (!meta.is_object()) format_error(meta_path, "expected an object");

    if (auto def = meta.find("definition"); def != meta.end()) {
        if (!def->is_object()) format_error(meta_path + ".definition", "expected an object");
        node.definition = get_string(*def, "val", meta_path + ".definition", true);
    }

    if (const auto* syns = get_array(meta, "synonyms", meta_path)) {
        for (std::size_t i = 0; i < syns->size(); ++i) {
            const auto spath = meta_path + ".synonyms[" + std::to_string(i) + "]";
            const auto& s = (*syns)[i];
            if (!s.is_object()) format_error(spath, "expected an object");
            auto value = *get_string(s, "val", spath, true);
            auto pred = *get_string(s, "pred", spath, true);
            auto scope = scope_from_pred(pred);
            if (!scope) format_error(spath + ".pred", "unknown synonym predicate '" + pred + "'");
            Synonym syn{std::move(value), *scope};
            if (syn.value.empty()) format_error(spath + ".val", "empty synonym");
            if (node.has_synonym(syn)) format_error(spath, "duplicate synonym");
            node.synonyms.push_back(std::move(syn));
        }
    }

    if (auto dep = meta.find("deprecated"); dep != meta.end()) {
        if (!dep->is_boolean()) format_error(meta_path + ".deprecated", "expected a boolean");
        node.deprecated = dep->get<bool>();
    }

    if (const auto* bpvs = get_array(meta, "basicPropertyValues", meta_path)) {
        for (std::size_t i = 0; i < bpvs->size(); ++i) {
            const auto bpath = meta_path + ".basicPropertyValues[" + std::to_string(i) + "]";
            const auto& pv = (*bpvs)[i];
            if (!pv.is_object()) format_error(bpath, "expected an object");
            auto pred = *get_string(pv, "pred", bpath, true);
            auto val = *get_string(pv, "val", bpath, true);
            if (is_replaced_by_pred(pred)) {
                if (node.replaced_by) format_error(bpath, "second term_replaced_by value");
                node.replaced_by = require_curie(std::move(val), bpath + ".val");
            } else if (pred == "pending_change") {
                node.pending.push_back(std::move(val));
            }
        }
    }
    if (node.replaced_by && !node.deprecated) {
        format_error(meta_path, "term_replaced_by on a node that is not deprecated");
    }
    return node;
}

void read_graph_body(const json& doc, const std::string& path, Graph& graph) {
    if (!doc.is_object()) format_error(path, "expected an object");
    if (const auto* nodes = get_array(doc, "nodes", path)) {
        for (std::size_t i = 0; i < nodes->size(); ++i) {
            graph.add_node(read_node((*nodes)[i], path + ".nodes[" + std::to_string(i) + "]"));
        }
    }
    if (const auto* edges = get_array(doc, "edges", path)) {
        for (std::size_t i = 0; i < edges->size(); ++i) {
            const auto epath = path + ".edges[" + std::to_string(i) + "]";
            const auto& e = (*edges)[i];
            if (!e.is_object()) format_error(epath, "expected an object");
            auto sub = require_curie(*get_string(e, "sub", epath, true), epath + ".sub");
            auto pred = contract_obo_iri(*get_string(e, "pred", epath, true));
            if (!is_curie(pred) && !is_bare_name(pred)) {
                format_error(epath + ".pred", "'" + pred + "' is neither a CURIE nor a relation name");
            }
            auto obj = require_curie(*get_string(e, "obj", epath, true), epath + ".obj");
            if (!graph.add_edge({std::move(sub), std::move(pred), std::move(obj)})) {
                format_error(epath, "duplicate edge");
            }
        }
    }
}

}  // namespace

auto contract_obo_iri(std::string_view text) -> std::string {
    if (!text.starts_with(k_obo_purl)) return std::string(text);
    auto local = std::string(text.substr(k_obo_purl.size()));
    const auto underscore = local.find('_');
    if (underscore == std::string::npos) return std::string(text);
    local[underscore] = ':';
    return local;
}

auto load_graph_json(std::string_view bytes) -> Graph {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::format_error, std::string("$: malformed JSON: ") + e.what());
    }
    Graph graph;
    if (doc.is_object() && doc.contains("graphs")) {
        const auto* graphs = get_array(doc, "graphs", "$");
        for (std::size_t i = 0; i < graphs->size(); ++i) {
            read_graph_body((*graphs)[i], "$.graphs[" + std::to_string(i) + "]", graph);
        }
    } else {
        read_graph_body(doc, "$", graph);
    }
    return graph;
}

auto save_graph_json(const Graph& graph) -> std::string {
    ordered_json nodes = ordered_json::array();
    for (const auto& [id, node] : graph.nodes()) {
        ordered_json n;
        n["id"] = id;
        if (node.label) n["lbl"] = *node.label;
        n["type"] = std::string(to_string_view(node.kind));

        ordered_json meta = ordered_json::object();
        if (node.definition) meta["definition"] = {{"val", *node.definition}};
        if (!node.synonyms.empty()) {
            ordered_json syns = ordered_json::array();
            for (const auto& s : node.synonyms) {
                syns.push_back({{"pred", std::string(synonym_pred(s.scope))}, {"val", s.value}});
            }
            meta["synonyms"] = std::move(syns);
        }
        if (node.deprecated) meta["deprecated"] = true;
        ordered_json bpvs = ordered_json::array();
        if (node.replaced_by) bpvs.push_back({{"pred", "term_replaced_by"}, {"val", *node.replaced_by}});
        for (const auto& p : node.pending) bpvs.push_back({{"pred", "pending_change"}, {"val", p}});
        if (!bpvs.empty()) meta["basicPropertyValues"] = std::move(bpvs);
        if (!meta.empty()) n["meta"] = std::move(meta);
        nodes.push_back(std::move(n));
    }

    ordered_json edges = ordered_json::array();
    for (const auto& e : graph.edges()) {
        edges.push_back({{"sub", e.subject}, {"pred", e.predicate}, {"obj", e.object}});
    }

    ordered_json doc;
    doc["nodes"] = std::move(nodes);
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

auto graph_format_for_path(std::string_view path) -> GraphFormat {
    return path.ends_with(".obo") ? GraphFormat::obo : GraphFormat::json;
}

auto load_graph(std::string_view bytes, GraphFormat format) -> Graph {
    return format == GraphFormat::obo ? load_obo(bytes) : load_graph_json(bytes);
}

}  // namespace kgcl
