/// @file cnl.hpp
/// @brief Parser and canonical renderer for the change-language CNL.
///
/// One production per change type. Keywords are lowercase and
/// case-sensitive. A `<ref>` is a CURIE, a single-quoted label, or a bare
/// relation name such as `part_of`:
///
///     rename <ref> from <q> to <q>        rename <ref> to <q>
///     obsolete <ref>                      obsolete <ref> with replacement <ref>
///     delete node <ref>
///     create <q>                          create node <ref> [<q>]
///     replace synonym <q> with <q> for <ref>
///     add definition <q> to <ref>
///     remove definition for <ref>
///     change definition of <ref> to <q>   change definition of <ref> from <q> to <q>
///     create [exact|narrow|broad|related] synonym <q> for <ref>
///     remove synonym <q> for <ref>
///     create edge <ref> <ref> <ref>
///     delete edge <ref> <ref> <ref>
///     move <ref> from <ref> to <ref> [with predicate <ref>]
///     change relationship between <ref> and <ref> from <ref> to <ref>
///
/// Quoted strings are captured verbatim apart from the escapes `\'` and `\\`.

#pragma once

#include "kgcl/change.hpp"
#include "kgcl/error.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace kgcl {

struct SourceSpan {
    int line = 1;
    int column = 1;
    int length = 0;
    auto operator==(const SourceSpan&) const -> bool = default;
};

class ParseError : public Error {
public:
    ParseError(SourceSpan span, std::vector<std::string> expected, std::string found);

    [[nodiscard]] auto span() const noexcept -> const SourceSpan& { return m_span; }
    [[nodiscard]] auto expected() const noexcept -> const std::vector<std::string>& { return m_expected; }
    [[nodiscard]] auto found() const noexcept -> const std::string& { return m_found; }

    /// Same error shifted to a different starting line (used by document parsing).
    [[nodiscard]] auto relocated(int line_offset) const -> ParseError;

private:
    SourceSpan m_span;
    std::vector<std::string> m_expected;
    std::string m_found;
};

/// Raised by parse_document after every line has been tried.
class DocumentParseError : public Error {
public:
    explicit DocumentParseError(std::vector<ParseError> errors);

    [[nodiscard]] auto errors() const noexcept -> const std::vector<ParseError>& { return m_errors; }

private:
    std::vector<ParseError> m_errors;
};

/// Parses exactly one command. Newlines may only appear inside quotes.
[[nodiscard]] auto parse_command(std::string_view text) -> Change;

struct DocumentParse {
    ChangeSet changes;
    std::vector<ParseError> errors;
};

/// Parses one command per line, skipping blank lines and `#` comments.
/// A quoted string may span lines. Never throws on bad commands.
[[nodiscard]] auto parse_document_lenient(std::string_view text) -> DocumentParse;

/// Like parse_document_lenient, but throws DocumentParseError if any line failed.
[[nodiscard]] auto parse_document(std::string_view text) -> ChangeSet;

/// Canonical CNL for a change. Throws Error(unrenderable_change) when a
/// required field is missing.
[[nodiscard]] auto render_command(const Change& change) -> std::string;

/// One canonical command per line, each terminated by '\n'.
[[nodiscard]] auto render_document(const ChangeSet& changes) -> std::string;

/// Single-quotes a string, escaping `\` and `'`.
[[nodiscard]] auto quote(std::string_view text) -> std::string;

}  // namespace kgcl
