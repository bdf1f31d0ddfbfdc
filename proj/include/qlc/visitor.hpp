/// @file visitor.hpp
/// @brief Depth-first traversal over a parsed Project.
///
/// Order: project, stage, then sprites front-most last; within an actor the
/// scripts in declaration order, then procedure definitions. A script's hat
/// is reported through enter_script, not as a block. Each block reports its
/// input expressions, then its substacks, before the following sibling.

#pragma once

#include "qlc/ast.hpp"

namespace qlc {

class AstVisitor {
public:
    virtual ~AstVisitor() = default;

    virtual void enter_project(const Project&) {}
    virtual void exit_project(const Project&) {}
    virtual void enter_actor(const Actor&) {}
    virtual void exit_actor(const Actor&) {}
    virtual void enter_script(const Script&, const Actor&) {}
    virtual void exit_script(const Script&, const Actor&) {}
    virtual void enter_procedure(const ProcedureDefinition&, const Actor&) {}
    virtual void exit_procedure(const ProcedureDefinition&, const Actor&) {}
    virtual void enter_block(const Block&) {}
    virtual void exit_block(const Block&) {}
    virtual void enter_expression(const Expression&) {}
    virtual void exit_expression(const Expression&) {}
};

void visit(const Project& project, AstVisitor& visitor);
void visit(const std::vector<Block>& stack, AstVisitor& visitor);
void visit(const Expression& expression, AstVisitor& visitor);

/// Pre-order walk over every block of a stack including nested substacks.
template <typename Fn>
void for_each_block(const std::vector<Block>& stack, Fn&& fn) {
    for (const Block& block : stack) {
        fn(block);
        for (const auto& sub : block.substacks) {
            for_each_block(sub, fn);
        }
    }
}

/// Pre-order walk over an expression tree.
template <typename Fn>
void for_each_expression(const Expression& expression, Fn&& fn) {
    fn(expression);
    for (const Expression& child : expression.children()) {
        for_each_expression(child, fn);
    }
}

}  // namespace qlc
