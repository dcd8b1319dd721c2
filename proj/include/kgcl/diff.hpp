/// @file diff.hpp
/// @brief Parsimonious change sets between two versions of a graph.
///
/// Nodes are matched strictly by id. Raw edge additions and removals are
/// coalesced into PredicateChange (same subject and object) first, then
/// NodeMove (same subject and predicate), repeating until nothing else
/// pairs up. A group only coalesces when it holds exactly one removal and
/// one addition; anything less clear-cut stays as raw edge changes.
///
/// The output, applied to `left`, reproduces `right` for every difference
/// the change language can express. Changes are ordered node-phase first
/// (by node id, then by a fixed per-node step order) and then edge-phase
/// (by the subject, predicate, object of the removed or added triple).

#pragma once

#include "kgcl/change.hpp"
#include "kgcl/graph.hpp"
#include "kgcl/serialize.hpp"

#include <string>

namespace kgcl {

struct DiffOptions {
    bool coalesce_moves = true;
    bool coalesce_predicate_changes = true;
    bool coalesce_synonym_replacements = true;
};

[[nodiscard]] auto diff(const Graph& left, const Graph& right, const DiffOptions& opts = {}) -> ChangeSet;

/// One rendering per change; CNL is one command per line.
[[nodiscard]] auto format_diff(const ChangeSet& changes, ChangeFormat format) -> std::string;

}  // namespace kgcl
