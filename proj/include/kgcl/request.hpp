/// @file request.hpp
/// @brief Curation-request text: command extraction and proposal rendering.
///
/// A request body carries a trigger line followed by a bulleted list of
/// commands:
///
///     ## Hey ontobot! apply:
///     - create exact synonym 'thigh bone' for 'femur'
///     - obsolete 'trachea'

#pragma once

#include "kgcl/change.hpp"
#include "kgcl/cnl.hpp"
#include "kgcl/graph.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgcl {

inline constexpr std::string_view k_trigger_line = "Hey ontobot! apply:";

struct ExtractionResult {
    ChangeSet changes;
    /// (1-based line number, bullet text without the marker)
    std::vector<std::pair<int, std::string>> command_lines;
    std::vector<std::pair<int, ParseError>> errors;
    bool trigger_found = false;
};

/// Only the first trigger block is read; it ends at the first line that is
/// neither blank nor a `- ` / `* ` bullet.
[[nodiscard]] auto extract(std::string_view issue_text) -> ExtractionResult;

/// Issue title for a change. With a resolver graph, CURIEs are shown as labels.
[[nodiscard]] auto render_title(const Change& change, const Graph* resolver = nullptr) -> std::string;

/// Trigger line plus one `- <command>` bullet per change.
/// Throws Error(unrenderable_change) for changes that cannot be rendered
/// onto a single line.
[[nodiscard]] auto render_request_body(const ChangeSet& changes) -> std::string;

}  // namespace kgcl
