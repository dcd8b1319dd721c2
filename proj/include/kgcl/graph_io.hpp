/// @file graph_io.hpp
/// @brief Graph-JSON load/save and a minimal OBO flat-file reader.
///
/// Graph-JSON is the OBO-graphs style subset:
///
///     {"nodes": [{"id": "X:1", "lbl": "...", "type": "CLASS",
///                 "meta": {"definition": {"val": "..."},
///                          "synonyms": [{"val": "...", "pred": "hasExactSynonym"}],
///                          "deprecated": true,
///                          "basicPropertyValues": [{"pred": "term_replaced_by", "val": "X:2"},
///                                                  {"pred": "pending_change", "val": "{...}"}]}}],
///      "edges": [{"sub": "X:1", "pred": "is_a", "obj": "X:2"}]}
///
/// A wrapping `{"graphs": [...]}` document is also accepted. OBO PURLs such
/// as `http://purl.obolibrary.org/obo/UBERON_0002398` are contracted to
/// CURIEs on input.

#pragma once

#include "kgcl/graph.hpp"

#include <string>
#include <string_view>

namespace kgcl {

/// Throws Error(format_error) naming the JSON path of the offending element,
/// or Error(duplicate_node_id).
[[nodiscard]] auto load_graph_json(std::string_view bytes) -> Graph;

/// Deterministic: nodes sorted by id, edges by (subject, predicate, object),
/// synonyms and pending payloads in stored order.
[[nodiscard]] auto save_graph_json(const Graph& graph) -> std::string;

/// Reads [Term], [Typedef] and [Instance] stanzas: id, name, def, synonym,
/// is_a, relationship, is_obsolete, replaced_by. Other tags are ignored.
/// Typedefs with non-CURIE ids (e.g. `part_of`) are not turned into nodes.
[[nodiscard]] auto load_obo(std::string_view text) -> Graph;

enum class GraphFormat { json, obo };

/// `.obo` selects OBO, everything else graph-JSON.
[[nodiscard]] auto graph_format_for_path(std::string_view path) -> GraphFormat;

[[nodiscard]] auto load_graph(std::string_view bytes, GraphFormat format) -> Graph;

/// Contracts an OBO PURL to a CURIE; other text is returned unchanged.
[[nodiscard]] auto contract_obo_iri(std::string_view text) -> std::string;

}  // namespace kgcl
