// End-to-end tests for the kgcl command-line tool.

#include "kgcl/graph.hpp"
#include "kgcl/graph_io.hpp"
#include "kgcl/serialize.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"

namespace kgcl {
namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        m_dir = fs::temp_directory_path() / (std::string("kgcl_cli_") + info->name() + "_" +
                                             std::to_string(::getpid()));
        fs::create_directories(m_dir);
    }
    void TearDown() override { fs::remove_all(m_dir); }

    auto path(const std::string& name) const -> std::string { return (m_dir / name).string(); }

    void write(const std::string& name, const std::string& content) const {
        std::ofstream(path(name), std::ios::binary) << content;
    }

    auto read(const std::string& name) const -> std::string {
        std::ifstream in(path(name), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

    /// Runs the CLI through /bin/sh; `args` is already shell-quoted.
    auto kgcl(const std::string& args, const std::string& stdin_text = "") const -> RunResult {
        write("stdin.txt", stdin_text);
        const auto cmd = std::string("'") + KGCL_CLI_PATH + "' " + args + " < '" + path("stdin.txt") + "' 2> '" +
                         path("stderr.txt") + "'";
        RunResult r;
        FILE* pipe = ::popen(cmd.c_str(), "r");
        if (pipe == nullptr) return r;
        std::array<char, 4096> buf{};
        std::size_t n = 0;
        while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
        const int status = ::pclose(pipe);
        r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.err = read("stderr.txt");
        return r;
    }

    static auto fixture(const std::string& name) -> std::string { return "'" + testing::fixture_path(name) + "'"; }

    fs::path m_dir;
};

TEST_F(CliTest, ParsePositionalToYaml) {
    const auto r = kgcl("parse \"obsolete 'trachea'\"");
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(r.out, "- type: NodeObsoletion\n  about_node: \"'trachea'\"\n");
}

TEST_F(CliTest, ParseEmptyStdin) {
    const auto r = kgcl("parse --format json");
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(r.out, "[]\n");
}

TEST_F(CliTest, ParseErrorNamesLine) {
    const auto r = kgcl("parse \"renam X:1 from 'a' to 'b'\"");
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_NE(r.err.find("line 1, column 1"), std::string::npos) << r.err;
}

TEST_F(CliTest, ParseFileToCnl) {
    write("cmds.kgcl", "# comment\nobsolete   X:1\n\nrename X:2 to 'b'\n");
    const auto r = kgcl("parse --format cnl --kgcl-file '" + path("cmds.kgcl") + "'");
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(r.out, "obsolete X:1\nrename X:2 to 'b'\n");
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(kgcl("").exit_code, 2);
    EXPECT_EQ(kgcl("frobnicate").exit_code, 2);
    EXPECT_EQ(kgcl("apply -k 'obsolete X:1'").exit_code, 2);
    EXPECT_EQ(kgcl("parse --format xml").exit_code, 2);
    EXPECT_EQ(kgcl("apply -i '" + path("missing.json") + "' -o '" + path("out.json") + "'").exit_code, 2);
    EXPECT_EQ(kgcl("--help").exit_code, 0);
}

TEST_F(CliTest, ApplyObsoleteWithReplacement) {
    write("in.json", R"({"nodes":[{"id":"EX:1234","lbl":"old"}]})");
    const auto r = kgcl("apply -i '" + path("in.json") + "' -k \"obsolete EX:1234 with replacement EX:5678\" -o '" +
                        path("out.json") + "'");
    EXPECT_EQ(r.exit_code, 0) << r.err;
    const auto g = load_graph_json(read("out.json"));
    EXPECT_TRUE(g.find("EX:1234")->deprecated);
    EXPECT_EQ(g.find("EX:1234")->replaced_by, "EX:5678");
}

TEST_F(CliTest, ApplyProvisionalThenPending) {
    write("g.json", R"({"nodes":[{"id":"EX:1234","lbl":"old"}]})");
    ASSERT_EQ(kgcl("apply -i '" + path("g.json") + "' -k 'obsolete EX:1234' -o '" + path("direct.json") + "'")
                  .exit_code,
              0);
    ASSERT_EQ(kgcl("apply -i '" + path("g.json") + "' -k 'obsolete EX:1234' --provisional -o '" + path("out.json") +
                   "'")
                  .exit_code,
              0);
    EXPECT_NE(read("out.json").find("pending_change"), std::string::npos);
    ASSERT_EQ(kgcl("apply -i '" + path("out.json") + "' --pending all -o '" + path("final.json") + "'").exit_code, 0);
    EXPECT_TRUE(graph_equal(load_graph_json(read("final.json")), load_graph_json(read("direct.json"))));
    EXPECT_EQ(read("final.json"), read("direct.json"));
}

TEST_F(CliTest, ApplyMissingNodeFails) {
    write("g.json", R"({"nodes":[{"id":"EX:1","lbl":"a"}]})");
    const auto r = kgcl("apply -i '" + path("g.json") + "' -k \"obsolete 'ghost'\" -o '" + path("out.json") +
                        "' --report '" + path("report.json") + "'");
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_NE(r.err.find("ghost"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(path("out.json")));
    const auto report = nlohmann::json::parse(read("report.json"));
    EXPECT_EQ(report["failed"], 1);
    EXPECT_NE(report["entries"][0]["message"].get<std::string>().find("ghost"), std::string::npos);
}

TEST_F(CliTest, ApplySkipExitsZero) {
    write("g.json", R"({"nodes":[{"id":"EX:1","lbl":"a"}]})");
    const auto r = kgcl("apply -i '" + path("g.json") + "' -k \"obsolete 'ghost'\" -k 'obsolete EX:1' --on-error skip"
                        " -o '" + path("out.json") + "' --report '" + path("report.json") + "'");
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_TRUE(load_graph_json(read("out.json")).find("EX:1")->deprecated);
    EXPECT_EQ(nlohmann::json::parse(read("report.json"))["failed"], 1);
}

TEST_F(CliTest, ApplyChangesFileAndObo) {
    write("changes.yaml", "- type: NewSynonym\n  about_node: MONDO:0859190\n  new_value: ' padded'\n  scope: exact\n");
    const auto r = kgcl("apply -i " + fixture("mondo_excerpt.obo") + " --changes '" + path("changes.yaml") +
                        "' -o '" + path("out.json") + "'");
    EXPECT_EQ(r.exit_code, 0) << r.err;
    const auto g = load_graph_json(read("out.json"));
    EXPECT_TRUE(g.find("MONDO:0859190")->has_synonym({" padded", SynonymScope::exact}));
}

TEST_F(CliTest, ApplyBadCommandIsParseFailure) {
    write("g.json", "{}");
    const auto r = kgcl("apply -i '" + path("g.json") + "' -k 'obsolete' -o '" + path("out.json") + "'");
    EXPECT_EQ(r.exit_code, 1);
}

TEST_F(CliTest, DiffMoveFixture) {
    const auto r = kgcl("diff --left " + fixture("move_before.json") + " --right " + fixture("move_after.json"));
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(r.out, "move EX:E from EX:C to EX:B\n");
    const auto raw = kgcl("diff --no-coalesce-moves --left " + fixture("move_before.json") + " --right " +
                          fixture("move_after.json"));
    EXPECT_EQ(raw.out, "create edge EX:E is_a EX:B\ndelete edge EX:E is_a EX:C\n");
    EXPECT_EQ(kgcl("diff --fail-on-diff --left " + fixture("move_before.json") + " --right " +
                   fixture("move_after.json"))
                  .exit_code,
              1);
}

TEST_F(CliTest, DiffIdentical) {
    const auto r =
        kgcl("diff --fail-on-diff --left " + fixture("move_before.json") + " --right " + fixture("move_before.json"));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, "");
    EXPECT_EQ(kgcl("diff --left '" + path("nope.json") + "' --right " + fixture("move_before.json")).exit_code, 2);
}

TEST_F(CliTest, DiffPipesIntoApply) {
    write("left.json", R"({"nodes":[{"id":"X:1","lbl":"a","meta":{"synonyms":[{"pred":"hasExactSynonym","val":"s"}]}},
        {"id":"X:2","lbl":"b"},{"id":"X:3","lbl":"c"}],
        "edges":[{"sub":"X:1","pred":"is_a","obj":"X:2"},{"sub":"X:3","pred":"part_of","obj":"X:2"}]})");
    write("right.json", R"({"nodes":[{"id":"X:1","lbl":"a'","meta":{"definition":{"val":"d"},"deprecated":true}},
        {"id":"X:2","lbl":"b"},{"id":"X:4","lbl":"new"}],
        "edges":[{"sub":"X:1","pred":"is_a","obj":"X:4"}]})");
    const auto d = kgcl("diff --left '" + path("left.json") + "' --right '" + path("right.json") + "'");
    ASSERT_EQ(d.exit_code, 0) << d.err;
    const auto a = kgcl("apply -i '" + path("left.json") + "' --kgcl-file - -o '" + path("out.json") + "'", d.out);
    ASSERT_EQ(a.exit_code, 0) << a.err << d.out;
    const auto expected = load_graph_json(read("right.json"));
    const auto actual = load_graph_json(read("out.json"));
    EXPECT_TRUE(graph_equal(expected, actual)) << describe_difference(expected, actual);
}

TEST_F(CliTest, DiffIsDeterministic) {
    const auto args =
        "diff --format json --left " + fixture("move_after.json") + " --right " + fixture("move_before.json");
    EXPECT_EQ(kgcl(args).out, kgcl(args).out);
}

TEST_F(CliTest, ExtractSynonymIssue) {
    const auto r = kgcl("extract " + fixture("synonym_issue_spaced.md"));
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(r.out,
              "- type: NewSynonym\n  about_node: MONDO:0859190\n"
              "  new_value: \" ZMYM2-related neurodevelopmental disorder with multiple anomalies\"\n"
              "  scope: exact\n");
}

TEST_F(CliTest, ExtractWithoutTrigger) {
    const auto r = kgcl("extract", "just prose\n");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, "");
    EXPECT_EQ(kgcl("extract --require-trigger", "just prose\n").exit_code, 1);
}

TEST_F(CliTest, ExtractStrict) {
    const std::string body = "Hey ontobot! apply:\n- obsolte X:1\n- obsolete X:2\n";
    const auto lenient = kgcl("extract --format cnl", body);
    EXPECT_EQ(lenient.exit_code, 0);
    EXPECT_EQ(lenient.out, "obsolete X:2\n");
    EXPECT_NE(lenient.err.find("line 2"), std::string::npos) << lenient.err;
    EXPECT_EQ(kgcl("extract --strict", body).exit_code, 1);
}

}  // namespace
}  // namespace kgcl
