/// @file serialize.hpp
/// @brief Change sets as JSON, YAML and TSV documents.
///
/// All three formats share one flat record shape:
///
///     id, type, about_node, old_value, new_value,
///     subject, predicate, object, replacement, scope
///
/// Only the fields that apply to a record's `type` are present. Node
/// references are written as bare CURIEs, or as `'label'` for label refs.
/// `NodeObsolescence` is read as an alias of `NodeObsoletion`.

#pragma once

#include "kgcl/change.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgcl {

/// Field name/value pairs in canonical key order.
using ChangeRecord = std::vector<std::pair<std::string, std::string>>;

[[nodiscard]] auto to_record(const Change& change) -> ChangeRecord;

/// `index` is the record's position, used in error messages.
/// Throws Error(unknown_change_type | missing_field | unexpected_field | format_error | invalid_change).
[[nodiscard]] auto from_record(const ChangeRecord& record, std::size_t index = 0) -> Change;

[[nodiscard]] auto encode_ref(const NodeRef& ref) -> std::string;
[[nodiscard]] auto decode_ref(std::string_view text) -> std::optional<NodeRef>;

/// Compact JSON array, e.g. `[{"type":"NodeDeletion","about_node":"X:1"}]`.
[[nodiscard]] auto to_json(const ChangeSet& changes) -> std::string;
[[nodiscard]] auto from_json(std::string_view bytes) -> ChangeSet;

/// Compact JSON object for a single change; used for pending-change payloads.
[[nodiscard]] auto change_to_json(const Change& change) -> std::string;
[[nodiscard]] auto change_from_json(std::string_view bytes) -> Change;

[[nodiscard]] auto to_yaml(const ChangeSet& changes) -> std::string;
[[nodiscard]] auto from_yaml(std::string_view text) -> ChangeSet;

/// The fixed TSV header, without a trailing newline.
[[nodiscard]] auto tsv_header() -> std::string_view;

/// Throws Error(tabular_unrepresentable) for values containing tabs or newlines.
[[nodiscard]] auto to_tsv(const ChangeSet& changes) -> std::string;
/// Throws Error(bad_header) when the first line is not tsv_header().
[[nodiscard]] auto from_tsv(std::string_view text) -> ChangeSet;

enum class ChangeFormat { cnl, json, yaml, tsv };

[[nodiscard]] auto parse_change_format(std::string_view name) -> std::optional<ChangeFormat>;

/// Guesses from the file extension; CNL for anything unrecognised.
[[nodiscard]] auto change_format_for_path(std::string_view path) -> ChangeFormat;

[[nodiscard]] auto write_changes(const ChangeSet& changes, ChangeFormat format) -> std::string;
[[nodiscard]] auto read_changes(std::string_view text, ChangeFormat format) -> ChangeSet;

}  // namespace kgcl
