#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "qlc/finders.hpp"
#include "qlc/question_json.hpp"
#include "random_project.hpp"

namespace {

using namespace fx;
using qlc::AnswerKind;
using qlc::Dimension;
using qlc::QuestionKind;
using qlc::Scope;

struct Row {
    int number;
    const char* title;
    Scope scope;
    Dimension dimension;
    AnswerKind answer;
};

// The Block Model placement of the thirty kinds with the answer widget shown
// next to each (quiz = multiple choice, numeric input, checkbox = yes/no,
// text line = strings, text box = free text).
const std::vector<Row> kTable = {
    {1, "Block Controlling Loop", Scope::Atom, Dimension::Text, AnswerKind::MultipleChoice},
    {2, "Element in Loop Condition", Scope::Atom, Dimension::Text, AnswerKind::MultipleChoice},
    {3, "If Block Condition", Scope::Atom, Dimension::Text, AnswerKind::MultipleChoice},
    {4, "Variable in Script", Scope::Atom, Dimension::Text, AnswerKind::Strings},
    {5, "Set Variable", Scope::Atom, Dimension::Execution, AnswerKind::Strings},
    {6, "Purpose of If Condition", Scope::Atom, Dimension::Purpose, AnswerKind::FreeText},
    {7, "Purpose of Loop Condition", Scope::Atom, Dimension::Purpose, AnswerKind::FreeText},
    {8, "Purpose of Variable", Scope::Atom, Dimension::Purpose, AnswerKind::FreeText},
    {9, "Blocks in If Statement", Scope::Block, Dimension::Text, AnswerKind::MultipleChoice},
    {10, "Element in Loop Body", Scope::Block, Dimension::Text, AnswerKind::MultipleChoice},
    {11, "If-Else Statement Execution", Scope::Block, Dimension::Execution, AnswerKind::MultipleChoice},
    {12, "If-Then Statement Execution", Scope::Block, Dimension::Execution, AnswerKind::YesNo},
    {13, "Repeat Times Execution", Scope::Block, Dimension::Execution, AnswerKind::Number},
    {14, "Purpose of Forever Loop", Scope::Block, Dimension::Purpose, AnswerKind::FreeText},
    {15, "Purpose of My Block", Scope::Block, Dimension::Purpose, AnswerKind::FreeText},
    {16, "Purpose of Repeat Times Loop", Scope::Block, Dimension::Purpose, AnswerKind::FreeText},
    {17, "Purpose of Repeat Until Loop", Scope::Block, Dimension::Purpose, AnswerKind::FreeText},
    {18, "Purpose of Script", Scope::Block, Dimension::Purpose, AnswerKind::FreeText},
    {19, "My Block Definition", Scope::Relation, Dimension::Text, AnswerKind::MultipleChoice},
    {20, "Script to Set Variable", Scope::Relation, Dimension::Text, AnswerKind::MultipleChoice},
    {21, "Statement Triggers Event", Scope::Relation, Dimension::Text, AnswerKind::MultipleChoice},
    {22, "Scripts Triggered by Event", Scope::Relation, Dimension::Execution, AnswerKind::Number},
    {23, "Scripts Triggered by Statement", Scope::Relation, Dimension::Execution, AnswerKind::MultipleChoice},
    {24, "Purpose of Broadcast", Scope::Relation, Dimension::Purpose, AnswerKind::FreeText},
    {25, "Scripts for Actor", Scope::Macro, Dimension::Text, AnswerKind::Number},
    {26, "Scripts in Program", Scope::Macro, Dimension::Text, AnswerKind::Number},
    {27, "Variable for Actor", Scope::Macro, Dimension::Text, AnswerKind::MultipleChoice},
    {28, "Script Execution Order Different Actors", Scope::Macro, Dimension::Execution,
     AnswerKind::MultipleChoice},
    {29, "Script Execution Order Same Actor", Scope::Macro, Dimension::Execution, AnswerKind::YesNo},
    {30, "Purpose of Program", Scope::Macro, Dimension::Purpose, AnswerKind::FreeText},
};

TEST(Taxonomy, ClassificationTable) {
    ASSERT_EQ(kTable.size(), qlc::kQuestionKindCount);
    for (const Row& r : kTable) {
        const auto kind = qlc::kind_from_number(r.number);
        ASSERT_TRUE(kind.has_value()) << r.number;
        EXPECT_EQ(qlc::kind_number(*kind), r.number);
        EXPECT_EQ(qlc::kind_title(*kind), r.title);
        const qlc::Classification c = qlc::classify(*kind);
        EXPECT_EQ(c.cell.scope, r.scope) << r.title;
        EXPECT_EQ(c.cell.dimension, r.dimension) << r.title;
        EXPECT_EQ(c.answer, r.answer) << r.title;
        EXPECT_EQ(qlc::choice_scope(*kind) == qlc::ChoiceScope::None, r.answer != AnswerKind::MultipleChoice)
            << r.title;
    }
    EXPECT_FALSE(qlc::kind_from_number(0));
    EXPECT_FALSE(qlc::kind_from_number(31));
}

TEST(Taxonomy, NamesRoundTrip) {
    std::set<std::string> names;
    for (const QuestionKind k : qlc::all_question_kinds()) {
        const std::string name(qlc::kind_name(k));
        EXPECT_TRUE(names.insert(name).second) << name;
        EXPECT_EQ(qlc::kind_from_name(name), k);
        EXPECT_EQ(name.find(' '), std::string::npos);
    }
    EXPECT_FALSE(qlc::kind_from_name("NoSuchKind"));
    for (const auto a : {AnswerKind::Number, AnswerKind::Strings, AnswerKind::YesNo, AnswerKind::MultipleChoice,
                         AnswerKind::FreeText}) {
        EXPECT_EQ(qlc::answer_kind_from_name(qlc::answer_kind_name(a)), a);
    }
}

TEST(Taxonomy, EveryCellHasAKind) {
    const auto& cells = qlc::all_cells();
    ASSERT_EQ(cells.size(), 12U);
    EXPECT_EQ(cells[0], (qlc::BlockModelCell{Scope::Atom, Dimension::Text}));
    EXPECT_EQ(cells[1], (qlc::BlockModelCell{Scope::Atom, Dimension::Execution}));
    EXPECT_EQ(cells[11], (qlc::BlockModelCell{Scope::Macro, Dimension::Purpose}));
    for (const auto& cell : cells) {
        const bool used = std::any_of(qlc::all_question_kinds().begin(), qlc::all_question_kinds().end(),
                                      [&](QuestionKind k) { return qlc::classify(k).cell == cell; });
        EXPECT_TRUE(used);
        EXPECT_EQ(qlc::scope_from_name(qlc::scope_name(cell.scope)), cell.scope);
        EXPECT_EQ(qlc::dimension_from_name(qlc::dimension_name(cell.dimension)), cell.dimension);
    }
}

TEST(Prompt, Instantiate) {
    EXPECT_EQ(qlc::instantiate_prompt("What value will {variable} have?", {{"variable", "(score)"}}),
              "What value will (score) have?");
    EXPECT_EQ(qlc::instantiate_prompt("{a}{b}{a}", {{"a", "x"}, {"b", "y"}}), "xyx");
    EXPECT_EQ(qlc::instantiate_prompt("keep {unknown} and {", {}), "keep {unknown} and {");
    EXPECT_EQ(qlc::prompt_template(QuestionKind::BlockControllingLoop),
              "Which of these blocks controls how many times this loop is executed?");
}

TEST(CanonicalNumber, Forms) {
    EXPECT_EQ(qlc::canonical_number("10"), "10");
    EXPECT_EQ(qlc::canonical_number("10.0"), "10");
    EXPECT_EQ(qlc::canonical_number(" 0.50 "), "0.5");
    EXPECT_EQ(qlc::canonical_number("-0"), "0");
    EXPECT_EQ(qlc::canonical_number("007"), "7");
    EXPECT_EQ(qlc::canonical_number(" abc "), "abc");
    EXPECT_EQ(qlc::canonical_number(""), "");
    EXPECT_EQ(qlc::canonical_number("1e2"), "100");
}

TEST(QuestionJson, RoundTripRandomProjects) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const qlc::Project p = random_project(seed).parse("r" + std::to_string(seed));
        qlc::FinderConfig cfg;
        cfg.master_seed = seed;
        const qlc::QuestionSet set = qlc::generate_questions(p, cfg);
        const std::string text = qlc::dump_question_set(set);
        ASSERT_EQ(qlc::parse_question_set(text), set) << "seed " << seed;
        EXPECT_EQ(text.back(), '\n');
    }
}

TEST(QuestionJson, StrippedSetHasNoKeys) {
    const qlc::QuestionSet set = qlc::generate_questions(catch_game().parse("catch_game"), {});
    const nlohmann::json stripped = qlc::question_set_to_json(set, false);
    ASSERT_FALSE(stripped["questions"].empty());
    for (const auto& q : stripped["questions"]) EXPECT_FALSE(q.contains("key"));
    const qlc::QuestionSet back = qlc::question_set_from_json(stripped);
    for (const auto& q : back.questions) EXPECT_FALSE(q.key.has_value());
    EXPECT_EQ(stripped["id"], "catch_game@0");
    EXPECT_EQ(set.id(), "catch_game@0");
}

TEST(QuestionJson, AnswerKeyShapes) {
    using nlohmann::json;
    EXPECT_EQ(qlc::answer_key_to_json(qlc::NumberAnswer{"10"}), (json{{"kind", "Number"}, {"value", "10"}}));
    EXPECT_EQ(qlc::answer_key_to_json(qlc::YesNoAnswer{false}), (json{{"kind", "YesNo"}, {"value", "No"}}));
    EXPECT_EQ(qlc::answer_key_to_json(qlc::ChoiceAnswer{{0, 2}}),
              (json{{"kind", "MultipleChoice"}, {"value", {0, 2}}}));
    EXPECT_EQ(qlc::answer_key_to_json(qlc::StringsAnswer{{"a", "b"}}),
              (json{{"kind", "Strings"}, {"value", {"a", "b"}}}));
    for (const qlc::AnswerKey& k : std::vector<qlc::AnswerKey>{qlc::NumberAnswer{"3"}, qlc::YesNoAnswer{true},
                                                                qlc::ChoiceAnswer{{1}}, qlc::StringsAnswer{{"x"}}}) {
        EXPECT_EQ(qlc::answer_key_from_json(qlc::answer_key_to_json(k)), k);
    }
}

TEST(QuestionJson, MalformedInput) {
    EXPECT_THROW(qlc::parse_question_set("not json"), qlc::FormatError);
    EXPECT_THROW(qlc::parse_question_set("[]"), qlc::FormatError);
    EXPECT_THROW(qlc::parse_question_set(R"({"projectId":"p","masterSeed":0,"questions":[{"id":1}]})"),
                 qlc::FormatError);
    EXPECT_THROW(qlc::answer_key_from_json({{"kind", "Bogus"}, {"value", 1}}), qlc::FormatError);
    EXPECT_THROW(qlc::scope_ref_from_json({{"kind", "galaxy"}}), qlc::FormatError);
}

}  // namespace
