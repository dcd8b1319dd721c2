// Tests for curation-request extraction and proposal rendering.

#include "kgcl/request.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"

namespace kgcl {
namespace {

constexpr const char* k_zmym2 = " ZMYM2-related neurodevelopmental disorder with multiple anomalies";

void expect_zmym2(const ExtractionResult& r) {
    ASSERT_TRUE(r.trigger_found);
    ASSERT_TRUE(r.errors.empty());
    ASSERT_EQ(r.changes.size(), 1U);
    const auto& syn = std::get<NewSynonym>(r.changes.changes[0].body);
    EXPECT_EQ(syn.about_node, NodeRef::curie("MONDO:0859190"));
    EXPECT_EQ(syn.scope, SynonymScope::exact);
    EXPECT_EQ(syn.new_value, k_zmym2);
}

TEST(Extract, IssueBodies) {
    expect_zmym2(extract(testing::read_fixture("synonym_issue.md")));
    expect_zmym2(extract(testing::read_fixture("synonym_issue_spaced.md")));
}

TEST(Extract, HeadingLevelDoesNotMatter) {
    const std::string bullet = "\n- obsolete X:1\n";
    for (const char* trigger : {"Hey ontobot! apply:", "## Hey ontobot! apply:", "  ### Hey ontobot! apply:  "}) {
        const auto r = extract(std::string(trigger) + bullet);
        EXPECT_TRUE(r.trigger_found) << trigger;
        EXPECT_EQ(r.changes.size(), 1U) << trigger;
    }
    EXPECT_FALSE(extract("hey ontobot! apply:\n- obsolete X:1\n").trigger_found);
}

TEST(Extract, NoTrigger) {
    const auto r = extract("- obsolete X:1\n");
    EXPECT_FALSE(r.trigger_found);
    EXPECT_TRUE(r.changes.empty());
}

TEST(Extract, PartialExtraction) {
    const auto r = extract("Please fix.\n\nHey ontobot! apply:\n- obsolte X:1\n- obsolete X:2\n");
    ASSERT_EQ(r.changes.size(), 1U);
    ASSERT_EQ(r.errors.size(), 1U);
    EXPECT_EQ(r.errors[0].first, 4);
    EXPECT_EQ(r.errors[0].second.span().line, 4);
    ASSERT_EQ(r.command_lines.size(), 2U);
    EXPECT_EQ(r.command_lines[1], (std::pair<int, std::string>{5, "obsolete X:2"}));
}

TEST(Extract, StopsAtProse) {
    const auto r = extract("Hey ontobot! apply:\n  * obsolete X:1\n\n- obsolete X:2\nThanks!\n- obsolete X:3\n");
    EXPECT_EQ(r.changes.size(), 2U);
}

TEST(Extract, OnlyFirstBlock) {
    const auto r = extract("Hey ontobot! apply:\n- obsolete X:1\nbreak\nHey ontobot! apply:\n- obsolete X:2\n");
    EXPECT_EQ(r.changes.size(), 1U);
}

TEST(RenderTitle, BioPortalTemplates) {
    Graph g;
    g.add_node({.id = "MONDO:0000001", .label = "cortical blindness"});
    const Change syn = NewSynonym{NodeRef::curie("MONDO:0000001"), "cortical visual impairment", SynonymScope::exact};
    EXPECT_EQ(render_title(syn, &g), "Proposal: add synonym 'cortical visual impairment' for cortical blindness");
    EXPECT_EQ(render_title(syn), "Proposal: add synonym 'cortical visual impairment' for MONDO:0000001");
    EXPECT_EQ(render_title(RemoveSynonym{NodeRef::label("cortical blindness"), "x"}),
              "Proposal: remove synonym 'x' for cortical blindness");
    EXPECT_EQ(render_title(NodeObsoletion{NodeRef::curie("MONDO:0000001"), std::nullopt}),
              "Proposal: obsolete MONDO:0000001");
    EXPECT_EQ(render_title(NodeObsoletion{NodeRef::curie("MONDO:0000001"), NodeRef::curie("MONDO:0000002")}, &g),
              "Proposal: obsolete cortical blindness with replacement MONDO:0000002");
    EXPECT_EQ(render_title(NodeRename{NodeRef::curie("MONDO:0000001"), "cortical blindness", "cerebral blindness"}),
              "Proposal: rename MONDO:0000001 from 'cortical blindness' to 'cerebral blindness'");
    EXPECT_EQ(render_title(EdgeCreation{NodeRef::label("hepatocyte"), NodeRef::label("part_of"), NodeRef::label("liver")}),
              "Proposal: create edge 'hepatocyte' part_of 'liver'");
}

TEST(RequestBody, SingleSynonymFormat) {
    ChangeSet cs;
    cs.changes.push_back(NewSynonym{NodeRef::curie("MONDO:0859190"), k_zmym2, SynonymScope::exact});
    EXPECT_EQ(render_request_body(cs),
              "Hey ontobot! apply:\n"
              "- create exact synonym ' ZMYM2-related neurodevelopmental disorder with multiple anomalies' for "
              "MONDO:0859190\n");
    EXPECT_EQ(render_request_body({}), "Hey ontobot! apply:\n");
    const auto back = extract(render_request_body({}));
    EXPECT_TRUE(back.trigger_found);
    EXPECT_TRUE(back.changes.empty());
}

TEST(RequestBody, MultilineValuesRejected) {
    ChangeSet cs;
    cs.changes.push_back(NewTextDefinition{NodeRef::curie("X:1"), "two\nlines"});
    EXPECT_THROW((void)render_request_body(cs), Error);
}

TEST(RequestProperty, ExtractInvertsRender) {
    testing::Rng rng(47);
    for (int i = 0; i < 300; ++i) {
        const auto cs = testing::random_changeset(rng, 10, false);
        const auto r = extract(render_request_body(cs));
        ASSERT_TRUE(r.errors.empty());
        ASSERT_TRUE(same_content(r.changes, cs)) << render_request_body(cs);
    }
}

}  // namespace
}  // namespace kgcl
