/// @file render.hpp
/// @brief scratchblocks text rendering of AST fragments.
///
/// Nested substacks are indented by four spaces and closed with `end`.
/// Highlighted lines carry a trailing `// <<<` comment so the text stays
/// valid scratchblocks; question JSON also carries the highlighted ids.

#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlc/ast.hpp"
#include "qlc/question.hpp"

namespace qlc {

inline constexpr std::string_view kHighlightMarker = " // <<<";
inline constexpr std::string_view kUnsupportedBlock = "… // unsupported block";

/// A target referenced an actor, script, procedure or node id that does not
/// exist in the project.
class DanglingTarget : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using HighlightSet = std::set<std::string>;

std::string render_expression(const Expression& expression);
/// Hat line of a script.
std::string render_event(const Event& event);
/// One statement. With `shallow`, C-blocks are shown with empty bodies.
std::string render_statement(const Block& block, bool shallow = false);
std::string render_stack(const std::vector<Block>& stack, const HighlightSet& highlights = {});
std::string render_script(const Script& script, const HighlightSet& highlights = {});
std::string render_procedure(const ProcedureDefinition& procedure, const HighlightSet& highlights = {});
/// "define jump (steps)" header of a procedure definition.
std::string render_procedure_header(const ProcedureDefinition& procedure);

/// Code shown for a question target: the whole script or procedure with
/// highlights marked, or an empty snippet for actor and project targets.
/// Throws DanglingTarget when the target does not resolve.
RenderedSnippet render(const QuestionTarget& target, const Project& project);

RenderedSnippet snippet_of(const Expression& expression);
RenderedSnippet snippet_of(const Block& statement);
RenderedSnippet snippet_of(const Script& script, const Actor& owner);
RenderedSnippet snippet_of(const ProcedureDefinition& procedure, const Actor& owner);
RenderedSnippet snippet_of_stack(const std::vector<Block>& stack, std::string label);

/// Short plain-text description derived from scratchblocks text.
std::string plain_label(std::string_view scratchblocks);

/// Every block and expression id inside a stack (hats excluded).
std::set<std::string> collect_ids(const std::vector<Block>& stack);

}  // namespace qlc
