/// @file apply.hpp
/// @brief Executes change sets against a Graph, directly or provisionally.

#pragma once

#include "kgcl/change.hpp"
#include "kgcl/error.hpp"
#include "kgcl/graph.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kgcl {

enum class OnError { halt, skip_and_report };

struct ApplyOptions {
    /// Store changes as pending payloads on their anchor node instead of executing them.
    bool provisional = false;
    std::string auto_id_prefix = "KGCL";
    int auto_id_width = 7;
    OnError on_error = OnError::halt;
    /// Lets replacement, object, parent and predicate CURIEs name nodes absent from the graph.
    bool allow_unresolved_curie_targets = true;
};

enum class ApplyStatus { applied, stored_provisional, failed };

[[nodiscard]] auto to_string_view(ApplyStatus status) noexcept -> std::string_view;

struct ApplyEntry {
    std::size_t index = 0;
    ApplyStatus status = ApplyStatus::failed;
    std::string message;
    std::optional<ErrorCode> error;
    /// (field, node id) for every ref that was resolved.
    std::vector<std::pair<std::string, std::string>> resolved_ids;
    /// Set by apply_pending: where the payload was stored.
    std::optional<NodeId> pending_node;
};

struct ApplyReport {
    std::vector<ApplyEntry> entries;
    /// Index of the change that stopped a halting run.
    std::optional<std::size_t> halted_at;

    [[nodiscard]] auto failed_count() const -> std::size_t;
    [[nodiscard]] auto ok() const -> bool { return failed_count() == 0; }
};

/// Applies one change. On failure the graph is left exactly as it was.
auto apply_change(Graph& graph, const Change& change, const ApplyOptions& opts = {}) -> ApplyEntry;

/// Applies changes in order; later changes see the effects of earlier ones.
auto apply_changeset(Graph& graph, const ChangeSet& changes, const ApplyOptions& opts = {}) -> ApplyReport;

enum class PendingSelector { all };

/// Applies every stored pending change in (node id, position) order. Payloads
/// that apply are removed; failures stay in place and are reported.
auto apply_pending(Graph& graph, PendingSelector selector = PendingSelector::all) -> ApplyReport;

/// JSON form of a report, for `--report`.
[[nodiscard]] auto report_to_json(const ApplyReport& report) -> std::string;

}  // namespace kgcl
