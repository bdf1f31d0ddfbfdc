#include "qlc/visitor.hpp"

namespace qlc {

void visit(const Expression& expression, AstVisitor& visitor) {
    visitor.enter_expression(expression);
    for (const Expression& child : expression.children()) {
        visit(child, visitor);
    }
    visitor.exit_expression(expression);
}

void visit(const std::vector<Block>& stack, AstVisitor& visitor) {
    for (const Block& block : stack) {
        visitor.enter_block(block);
        for (const Input& in : block.inputs) {
            visit(in.value, visitor);
        }
        for (const auto& sub : block.substacks) {
            visit(sub, visitor);
        }
        visitor.exit_block(block);
    }
}

void visit(const Project& project, AstVisitor& visitor) {
    visitor.enter_project(project);
    for (const Actor* actor : project.actors()) {
        visitor.enter_actor(*actor);
        for (const Script& script : actor->scripts) {
            visitor.enter_script(script, *actor);
            if (script.event) {
                for (const Input& in : script.event->inputs) {
                    visit(in.value, visitor);
                }
            }
            visit(script.body, visitor);
            visitor.exit_script(script, *actor);
        }
        for (const ProcedureDefinition& proc : actor->procedures) {
            visitor.enter_procedure(proc, *actor);
            visit(proc.body, visitor);
            visitor.exit_procedure(proc, *actor);
        }
        visitor.exit_actor(*actor);
    }
    visitor.exit_project(project);
}

}  // namespace qlc
