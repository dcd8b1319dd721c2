// kgcl: parse, apply, diff and extract knowledge-graph change commands.
//
// Exit codes: 0 success, 1 a change failed or a command did not parse,
// 2 usage or I/O error.

#include "kgcl/apply.hpp"
#include "kgcl/cnl.hpp"
#include "kgcl/diff.hpp"
#include "kgcl/graph_io.hpp"
#include "kgcl/request.hpp"
#include "kgcl/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

constexpr int k_exit_ok = 0;
constexpr int k_exit_failed = 1;
constexpr int k_exit_usage = 2;

/// Raised for unreadable input or unwritable output.
struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

auto read_input(const std::string& path) -> std::string {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write " + path);
    out << data;
    if (!out) throw IoFailure("cannot write " + path);
}

auto graph_format(const std::string& path, const std::string& override_name) -> kgcl::GraphFormat {
    if (override_name == "obo") return kgcl::GraphFormat::obo;
    if (override_name == "json") return kgcl::GraphFormat::json;
    return kgcl::graph_format_for_path(path);
}

auto load_graph_file(const std::string& path, const std::string& format_name) -> kgcl::Graph {
    const auto bytes = read_input(path);
    try {
        return kgcl::load_graph(bytes, graph_format(path, format_name));
    } catch (const kgcl::Error& e) {
        throw IoFailure(path + ": " + e.what());
    }
}

void print_parse_errors(const std::vector<kgcl::ParseError>& errors, const std::string& source) {
    for (const auto& e : errors) std::cerr << source << ": " << e.what() << "\n";
}

auto change_format(const std::string& name) -> kgcl::ChangeFormat {
    return kgcl::parse_change_format(name).value_or(kgcl::ChangeFormat::yaml);
}

const std::vector<std::string> k_format_names{"cnl", "json", "yaml", "tsv"};

// ---------------------------------------------------------------------------
// parse
// ---------------------------------------------------------------------------

struct ParseArgs {
    std::vector<std::string> commands;
    std::string kgcl_file;
    std::string format = "yaml";
};

auto run_parse(const ParseArgs& args) -> int {
    kgcl::ChangeSet changes;
    bool failed = false;
    if (!args.commands.empty()) {
        for (std::size_t i = 0; i < args.commands.size(); ++i) {
            try {
                changes.changes.push_back(kgcl::parse_command(args.commands[i]));
            } catch (const kgcl::ParseError& e) {
                std::cerr << "command " << i + 1 << ": " << e.what() << "\n";
                failed = true;
            }
        }
    } else {
        const auto source = args.kgcl_file.empty() ? std::string("-") : args.kgcl_file;
        auto parsed = kgcl::parse_document_lenient(read_input(source));
        print_parse_errors(parsed.errors, source == "-" ? "<stdin>" : source);
        failed = !parsed.errors.empty();
        changes = std::move(parsed.changes);
    }
    if (failed) return k_exit_failed;
    std::cout << kgcl::write_changes(changes, change_format(args.format));
    return k_exit_ok;
}

// ---------------------------------------------------------------------------
// apply
// ---------------------------------------------------------------------------

struct ApplyArgs {
    std::string input;
    std::string output;
    std::string input_format;
    std::vector<std::string> commands;
    std::string kgcl_file;
    std::string changes_file;
    bool provisional = false;
    std::string pending;
    std::string auto_id_prefix = "KGCL";
    int auto_id_width = 7;
    std::string on_error = "halt";
    std::string report_path;
};

void print_report(const kgcl::ApplyReport& report, const kgcl::ChangeSet& changes) {
    for (const auto& e : report.entries) {
        std::cerr << "[" << e.index << "] " << kgcl::to_string_view(e.status);
        if (e.pending_node) {
            std::cerr << " (pending on " << *e.pending_node << ")";
        } else if (e.index < changes.changes.size()) {
            try {
                std::cerr << " " << kgcl::render_command(changes.changes[e.index]);
            } catch (const kgcl::Error&) {
                std::cerr << " " << kgcl::type_name(changes.changes[e.index]);
            }
        }
        if (!e.message.empty()) std::cerr << ": " << e.message;
        std::cerr << "\n";
    }
}

auto run_apply(const ApplyArgs& args) -> int {
    auto graph = load_graph_file(args.input, args.input_format);

    kgcl::ChangeSet changes;
    bool parse_failed = false;
    for (std::size_t i = 0; i < args.commands.size(); ++i) {
        try {
            changes.changes.push_back(kgcl::parse_command(args.commands[i]));
        } catch (const kgcl::ParseError& e) {
            std::cerr << "-k " << i + 1 << ": " << e.what() << "\n";
            parse_failed = true;
        }
    }
    if (!args.kgcl_file.empty()) {
        auto parsed = kgcl::parse_document_lenient(read_input(args.kgcl_file));
        print_parse_errors(parsed.errors, args.kgcl_file == "-" ? "<stdin>" : args.kgcl_file);
        parse_failed = parse_failed || !parsed.errors.empty();
        for (auto& c : parsed.changes.changes) changes.changes.push_back(std::move(c));
    }
    if (!args.changes_file.empty()) {
        try {
            auto more = kgcl::read_changes(read_input(args.changes_file),
                                           kgcl::change_format_for_path(args.changes_file));
            for (auto& c : more.changes) changes.changes.push_back(std::move(c));
        } catch (const kgcl::DocumentParseError& e) {
            print_parse_errors(e.errors(), args.changes_file);
            parse_failed = true;
        } catch (const kgcl::Error& e) {
            std::cerr << args.changes_file << ": " << e.what() << "\n";
            parse_failed = true;
        }
    }
    if (parse_failed) return k_exit_failed;

    kgcl::ApplyOptions opts;
    opts.provisional = args.provisional;
    opts.auto_id_prefix = args.auto_id_prefix;
    opts.auto_id_width = args.auto_id_width;
    opts.on_error = args.on_error == "skip" ? kgcl::OnError::skip_and_report : kgcl::OnError::halt;

    auto report = kgcl::apply_changeset(graph, changes, opts);
    if (!args.pending.empty() && !report.halted_at) {
        auto pending = kgcl::apply_pending(graph, kgcl::PendingSelector::all);
        for (auto& e : pending.entries) {
            e.index += changes.changes.size();
            report.entries.push_back(std::move(e));
        }
    }

    print_report(report, changes);
    if (!args.report_path.empty()) write_output(args.report_path, kgcl::report_to_json(report));

    if (opts.on_error == kgcl::OnError::halt && !report.ok()) {
        std::cerr << "kgcl apply: " << report.failed_count() << " change(s) failed; " << args.output
                  << " not written\n";
        return k_exit_failed;
    }
    write_output(args.output, kgcl::save_graph_json(graph));
    if (!report.ok()) std::cerr << "kgcl apply: " << report.failed_count() << " change(s) failed (skipped)\n";
    return k_exit_ok;
}

// ---------------------------------------------------------------------------
// diff
// ---------------------------------------------------------------------------

struct DiffArgs {
    std::string left;
    std::string right;
    std::string output;
    std::string input_format;
    std::string format = "cnl";
    bool no_moves = false;
    bool no_predicate_changes = false;
    bool no_synonym_replacements = false;
    bool fail_on_diff = false;
};

auto run_diff(const DiffArgs& args) -> int {
    const auto left = load_graph_file(args.left, args.input_format);
    const auto right = load_graph_file(args.right, args.input_format);
    kgcl::DiffOptions opts;
    opts.coalesce_moves = !args.no_moves;
    opts.coalesce_predicate_changes = !args.no_predicate_changes;
    opts.coalesce_synonym_replacements = !args.no_synonym_replacements;
    const auto changes = kgcl::diff(left, right, opts);
    auto format = change_format(args.format);
    std::string text;
    if (!(changes.empty() && format == kgcl::ChangeFormat::cnl)) text = kgcl::format_diff(changes, format);
    write_output(args.output, text);
    return args.fail_on_diff && !changes.empty() ? k_exit_failed : k_exit_ok;
}

// ---------------------------------------------------------------------------
// extract
// ---------------------------------------------------------------------------

struct ExtractArgs {
    std::string input = "-";
    std::string format = "yaml";
    bool strict = false;
    bool require_trigger = false;
};

auto run_extract(const ExtractArgs& args) -> int {
    const auto result = kgcl::extract(read_input(args.input));
    for (const auto& [line, error] : result.errors) std::cerr << error.what() << "\n";
    if (args.require_trigger && !result.trigger_found) {
        std::cerr << "kgcl extract: no '" << kgcl::k_trigger_line << "' line found\n";
        return k_exit_failed;
    }
    if (args.strict && !result.errors.empty()) return k_exit_failed;
    if (!result.trigger_found) return k_exit_ok;
    std::cout << kgcl::write_changes(result.changes, change_format(args.format));
    return k_exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parse, apply, diff and extract knowledge-graph change commands"};
    app.require_subcommand(1);

    ParseArgs parse_args;
    auto* parse = app.add_subcommand("parse", "Parse CNL commands and print them as a change set");
    parse->add_option("commands", parse_args.commands, "Commands to parse (default: read --kgcl-file or stdin)");
    parse->add_option("--kgcl-file", parse_args.kgcl_file, "File of CNL commands, one per line ('-' for stdin)");
    parse->add_option("--format", parse_args.format, "Output format")->check(CLI::IsMember(k_format_names));

    ApplyArgs apply_args;
    auto* apply = app.add_subcommand("apply", "Apply changes to a graph");
    apply->add_option("-i,--input", apply_args.input, "Input graph (.json or .obo)")->required();
    apply->add_option("-o,--output", apply_args.output, "Output graph-JSON path ('-' for stdout)")->required();
    apply->add_option("-k,--kgcl", apply_args.commands, "A CNL command; repeatable");
    apply->add_option("--kgcl-file", apply_args.kgcl_file, "File of CNL commands ('-' for stdin)");
    apply->add_option("--changes", apply_args.changes_file, "Change set file (.json, .yaml or .tsv)");
    apply->add_flag("--provisional", apply_args.provisional, "Store changes as pending instead of applying");
    apply->add_option("--pending", apply_args.pending, "Apply stored pending changes")
        ->check(CLI::IsMember({"all"}));
    apply->add_option("--auto-id-prefix", apply_args.auto_id_prefix, "Prefix for minted class ids");
    apply->add_option("--auto-id-width", apply_args.auto_id_width, "Digits in minted class ids")
        ->check(CLI::PositiveNumber);
    apply->add_option("--on-error", apply_args.on_error, "halt (default) or skip")
        ->check(CLI::IsMember({"halt", "skip"}));
    apply->add_option("--report", apply_args.report_path, "Write the JSON apply report here");
    apply->add_option("--input-format", apply_args.input_format, "Override input format")
        ->check(CLI::IsMember({"json", "obo"}));

    DiffArgs diff_args;
    auto* diff = app.add_subcommand("diff", "Describe the changes from one graph to another");
    diff->add_option("--left", diff_args.left, "Older graph")->required();
    diff->add_option("--right", diff_args.right, "Newer graph")->required();
    diff->add_option("-o,--output", diff_args.output, "Output path (default stdout)");
    diff->add_option("--format", diff_args.format, "Output format")->check(CLI::IsMember(k_format_names));
    diff->add_option("--input-format", diff_args.input_format, "Override input format")
        ->check(CLI::IsMember({"json", "obo"}));
    diff->add_flag("--no-coalesce-moves", diff_args.no_moves, "Report moves as edge deletion + creation");
    diff->add_flag("--no-coalesce-predicate-changes", diff_args.no_predicate_changes,
                   "Report predicate changes as edge deletion + creation");
    diff->add_flag("--no-coalesce-synonym-replacements", diff_args.no_synonym_replacements,
                   "Report synonym replacements as removal + addition");
    diff->add_flag("--fail-on-diff", diff_args.fail_on_diff, "Exit 1 when the graphs differ");

    ExtractArgs extract_args;
    auto* extract = app.add_subcommand("extract", "Extract commands from curation-request text");
    extract->add_option("input", extract_args.input, "Issue text file (default stdin)");
    extract->add_option("--format", extract_args.format, "Output format")->check(CLI::IsMember(k_format_names));
    extract->add_flag("--strict", extract_args.strict, "Fail on any bullet that does not parse");
    extract->add_flag("--require-trigger", extract_args.require_trigger, "Fail when no trigger line is present");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? k_exit_ok : k_exit_usage;
    }

    try {
        if (*parse) return run_parse(parse_args);
        if (*apply) return run_apply(apply_args);
        if (*diff) return run_diff(diff_args);
        if (*extract) return run_extract(extract_args);
    } catch (const IoFailure& e) {
        std::cerr << "kgcl: " << e.what() << "\n";
        return k_exit_usage;
    } catch (const kgcl::Error& e) {
        std::cerr << "kgcl: " << e.what() << "\n";
        return k_exit_failed;
    } catch (const std::exception& e) {
        std::cerr << "kgcl: " << e.what() << "\n";
        return k_exit_usage;
    }
    return k_exit_usage;
}
