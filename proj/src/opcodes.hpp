// Opcode catalogue shared by the parser and the scratchblocks renderer.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlc/ast.hpp"

namespace qlc::detail {

enum class Shape { Hat, Stack, Cap, CBlock, CBlock2, Reporter, Boolean };

/// `pattern` is scratchblocks text with placeholders: `%NAME` renders input
/// NAME, `%[NAME]` renders field NAME as a dropdown.
struct OpcodeInfo {
    std::string_view opcode;
    Shape shape;
    std::string_view pattern;
};

struct PatternToken {
    enum class Kind { Text, Input, Field } kind;
    std::string text;  // literal text or slot name
};

const OpcodeInfo* find_opcode(std::string_view opcode);
std::vector<PatternToken> tokenize_pattern(std::string_view pattern);
/// Input slot names referenced by a pattern, in order.
std::vector<std::string> pattern_inputs(std::string_view pattern);

bool is_boolean_slot(std::string_view opcode, std::string_view slot);
bool is_hat_opcode(std::string_view opcode);
StmtKind classify_statement(std::string_view opcode);
EventKind classify_event(std::string_view opcode);
/// Field carrying the event payload for a hat opcode, if any.
std::optional<std::string_view> event_payload_field(std::string_view opcode);

/// Literal shadow opcodes and the field holding their value.
std::optional<std::string_view> number_literal_field(std::string_view opcode);
std::optional<std::string_view> string_literal_field(std::string_view opcode);

/// Human-readable form of special menu values ("_random_" -> "random position").
std::string display_menu_value(std::string_view value);

/// Argument types of a procedure signature, one per %s/%n/%b token.
std::vector<ParamType> signature_params(std::string_view proccode);

bool looks_numeric(std::string_view text);

}  // namespace qlc::detail
