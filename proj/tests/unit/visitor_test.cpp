#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "qlc/visitor.hpp"
#include "random_project.hpp"

namespace {

using namespace fx;

struct Trace : qlc::AstVisitor {
    std::vector<std::string> events;
    int depth = 0;
    int max_depth = 0;
    void enter_project(const qlc::Project&) override { events.emplace_back("project"); }
    void exit_project(const qlc::Project&) override { events.emplace_back("/project"); }
    void enter_actor(const qlc::Actor& a) override { events.push_back("actor " + a.name); }
    void exit_actor(const qlc::Actor& a) override { events.push_back("/actor " + a.name); }
    void enter_script(const qlc::Script&, const qlc::Actor&) override { events.emplace_back("script"); }
    void exit_script(const qlc::Script&, const qlc::Actor&) override { events.emplace_back("/script"); }
    void enter_procedure(const qlc::ProcedureDefinition& p, const qlc::Actor&) override {
        events.push_back("procedure " + p.signature);
    }
    void enter_block(const qlc::Block& b) override {
        events.push_back(b.opcode);
        max_depth = std::max(max_depth, ++depth);
    }
    void exit_block(const qlc::Block&) override { --depth; }
    void enter_expression(const qlc::Expression& e) override {
        if (!e.empty()) events.push_back("expr " + e.id());
    }
};

struct Counter : qlc::AstVisitor {
    std::size_t blocks = 0;
    std::size_t expressions = 0;
    std::size_t enters = 0;
    std::size_t exits = 0;
    void enter_block(const qlc::Block&) override { ++blocks; ++enters; }
    void exit_block(const qlc::Block&) override { ++exits; }
    void enter_expression(const qlc::Expression&) override { ++expressions; ++enters; }
    void exit_expression(const qlc::Expression&) override { ++exits; }
};

TEST(Visitor, OrderOnCatchGame) {
    const qlc::Project p = catch_game().parse();
    Trace t;
    qlc::visit(p, t);
    ASSERT_GE(t.events.size(), 6U);
    EXPECT_EQ(t.events.front(), "project");
    EXPECT_EQ(t.events.back(), "/project");
    EXPECT_EQ(t.events[1], "actor Stage");
    const auto bat = std::find(t.events.begin(), t.events.end(), "actor Bat");
    ASSERT_NE(bat, t.events.end());
    EXPECT_EQ(*(bat + 1), "script");
    EXPECT_EQ(*(bat + 2), "control_repeat_until");
    // Condition expressions come before the loop body.
    EXPECT_EQ((bat + 3)->rfind("expr ", 0), 0U);
    const auto body = std::find(t.events.begin(), t.events.end(), "motion_goto");
    const auto after = std::find(t.events.begin(), t.events.end(), "looks_switchbackdropto");
    ASSERT_NE(body, t.events.end());
    ASSERT_NE(after, t.events.end());
    EXPECT_LT(body, after);
    EXPECT_EQ(t.max_depth, 2);
}

TEST(Visitor, ScriptsBeforeProcedures) {
    ProjectBuilder b;
    b.sprite("Cat").script({define("jump", {}, {move(num("1"))})});
    b.sprite("Cat").script({when_flag(), call("jump")});
    Trace t;
    qlc::visit(b.parse(), t);
    const auto script = std::find(t.events.begin(), t.events.end(), "script");
    const auto proc = std::find(t.events.begin(), t.events.end(), "procedure jump");
    ASSERT_NE(proc, t.events.end());
    EXPECT_LT(script, proc);
}

TEST(Visitor, AgreesWithForEachHelpers) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const qlc::Project p = random_project(seed).parse();
        Counter c;
        qlc::visit(p, c);
        EXPECT_EQ(c.enters, c.exits);
        std::size_t blocks = 0;
        std::size_t expressions = 0;
        for (const qlc::Actor* a : p.actors()) {
            auto count = [&](const std::vector<qlc::Block>& stack) {
                qlc::for_each_block(stack, [&](const qlc::Block& b) {
                    ++blocks;
                    for (const qlc::Input& in : b.inputs) {
                        qlc::for_each_expression(in.value, [&](const qlc::Expression&) { ++expressions; });
                    }
                });
            };
            for (const auto& s : a->scripts) count(s.body);
            for (const auto& d : a->procedures) count(d.body);
        }
        EXPECT_EQ(c.blocks, blocks) << "seed " << seed;
        EXPECT_EQ(c.expressions, expressions) << "seed " << seed;
    }
}

}  // namespace
