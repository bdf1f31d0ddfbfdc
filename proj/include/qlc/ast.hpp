/// @file ast.hpp
/// @brief Typed syntax tree for Scratch 3 projects.
///
/// The tree is built once by parse_project() and never mutated afterwards, so
/// a Project can be shared freely between analysis threads.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace qlc {

struct Expression;

/// Named dropdown selection or reference stored on a block (variable name,
/// message name, key name, procedure signature, ...).
struct Field {
    std::string name;
    std::string value;
    /// Referenced object id (variable id, broadcast id) when the file has one.
    std::string ref;

    bool operator==(const Field&) const = default;
};

/// An input slot the learner left empty. `boolean` marks diamond slots.
struct EmptySlot {
    bool boolean = false;

    bool operator==(const EmptySlot&) const = default;
};

// Literal and variable ids are synthesized as "<parent id>:<input name>" since
// the file format stores them inline without an id of their own.

struct NumberLiteral {
    std::string id;
    std::string value;  // exactly as stored in the file

    bool operator==(const NumberLiteral&) const = default;
};

struct StringLiteral {
    std::string id;
    std::string value;

    bool operator==(const StringLiteral&) const = default;
};

/// A dropdown shadow (`(random position v)`, `[start v]`). An empty opcode
/// means the option was an inline broadcast primitive.
struct MenuOption {
    std::string id;
    std::string opcode;
    std::string field;
    std::string value;

    bool operator==(const MenuOption&) const = default;
};

struct VariableReporter {
    std::string id;
    std::string name;
    std::string owner;  // actor name, empty for globals
    bool list = false;

    bool operator==(const VariableReporter&) const = default;
};

/// Common payload of reporter blocks: opcode plus named operand slots.
struct ReporterCall {
    std::string id;
    std::string opcode;
    std::vector<std::string> slots;      // parallel to operands
    std::vector<Expression> operands;
    std::vector<Field> fields;

    bool operator==(const ReporterCall&) const = default;
};

/// Diamond-shaped block (`<(a) = (b)>`, `<touching edge?>`).
struct BooleanExpr : ReporterCall {
    bool operator==(const BooleanExpr&) const = default;
};

/// Oval reporter taking operands (`(a + b)`, `(join ...)`). Also used for
/// reporters whose opcode is not recognized.
struct NumericReporter : ReporterCall {
    bool operator==(const NumericReporter&) const = default;
};

/// Oval reporter without operands (`(x position)`, `(timer)`).
struct AttributeReporter : ReporterCall {
    bool operator==(const AttributeReporter&) const = default;
};

struct Expression {
    using Node = std::variant<EmptySlot, NumberLiteral, StringLiteral, MenuOption, VariableReporter,
                              BooleanExpr, NumericReporter, AttributeReporter>;
    Node node;

    bool operator==(const Expression&) const = default;

    template <typename T>
    [[nodiscard]] const T* as() const {
        return std::get_if<T>(&node);
    }
    [[nodiscard]] bool empty() const { return std::holds_alternative<EmptySlot>(node); }
    [[nodiscard]] bool is_boolean() const { return std::holds_alternative<BooleanExpr>(node); }
    [[nodiscard]] bool is_menu() const { return std::holds_alternative<MenuOption>(node); }
    /// Node id; empty for EmptySlot.
    [[nodiscard]] std::string id() const;
    /// Operand list of reporter calls, empty for leaves.
    [[nodiscard]] const std::vector<Expression>& children() const;
};

/// Statement classification used by the question finders.
enum class StmtKind : std::uint8_t {
    RepeatTimes,
    RepeatUntil,
    Forever,
    IfThen,
    IfElse,
    OtherControl,  // wait, wait until, stop, clones, ...
    SetVariable,
    ChangeVariable,
    Broadcast,
    BroadcastAndWait,
    SwitchBackdrop,
    SwitchBackdropAndWait,
    ProcedureCall,
    Other,   // recognized non-control statement
    Opaque,  // unknown or extension opcode
};

struct Input {
    std::string name;
    Expression value;

    bool operator==(const Input&) const = default;
};

struct Block {
    std::string id;
    std::string opcode;
    StmtKind kind = StmtKind::Opaque;
    std::vector<Input> inputs;
    std::vector<Field> fields;
    std::vector<std::vector<Block>> substacks;

    bool operator==(const Block&) const = default;

    [[nodiscard]] const Expression* input(std::string_view name) const;
    [[nodiscard]] const Field* field(std::string_view name) const;
    /// Loop condition or count, if-condition; nullptr for other kinds.
    [[nodiscard]] const Expression* condition() const;
    [[nodiscard]] bool is_loop() const;
    [[nodiscard]] bool is_if() const;
    [[nodiscard]] bool is_control() const;
    [[nodiscard]] bool is_trigger() const;
    /// Message or backdrop name of trigger statements when it is a constant.
    [[nodiscard]] std::optional<std::string> trigger_target() const;
    /// Variable name for set/change statements.
    [[nodiscard]] std::optional<std::string> variable_name() const;
};

enum class EventKind : std::uint8_t {
    GreenFlag,
    KeyPressed,
    ReceiveMessage,
    BackdropSwitchedTo,
    SpriteClicked,
    StageClicked,
    CloneStart,
    Other,
};

/// Hat block of a script.
struct Event {
    EventKind kind = EventKind::Other;
    std::string payload;  // message, backdrop or key name
    std::string id;
    std::string opcode;
    std::vector<Input> inputs;
    std::vector<Field> fields;

    bool operator==(const Event&) const = default;
};

/// A top-level stack, with or without a hat.
struct Script {
    std::string id;
    std::optional<Event> event;
    std::vector<Block> body;

    bool operator==(const Script&) const = default;
};

enum class ParamType : std::uint8_t { NumberOrText, Boolean };

struct Parameter {
    std::string name;
    ParamType type = ParamType::NumberOrText;
    std::string id;

    bool operator==(const Parameter&) const = default;
};

struct ProcedureDefinition {
    std::string id;            // define block
    std::string prototype_id;  // procedures_prototype shadow
    std::string signature;     // proccode, e.g. "jump %s"
    std::vector<Parameter> parameters;
    bool warp = false;
    std::vector<Block> body;

    bool operator==(const ProcedureDefinition&) const = default;
};

using Value = std::variant<std::string, double>;

struct Variable {
    std::string id;
    std::string name;
    std::string owner;  // empty = global
    Value initial_value;
    bool cloud = false;

    bool operator==(const Variable&) const = default;
};

enum class ActorKind : std::uint8_t { Stage, Sprite };

struct Actor {
    std::string name;
    ActorKind kind = ActorKind::Sprite;
    std::optional<int> layer_index;  // sprites only, higher = closer to front
    std::vector<Script> scripts;
    std::vector<Variable> local_variables;
    std::vector<Variable> local_lists;
    std::vector<ProcedureDefinition> procedures;
    std::vector<std::string> costumes;

    bool operator==(const Actor&) const = default;

    [[nodiscard]] bool is_stage() const { return kind == ActorKind::Stage; }
    [[nodiscard]] const ProcedureDefinition* procedure(std::string_view signature) const;
};

struct Project {
    std::string id;
    Actor stage;
    std::vector<Actor> sprites;  // ascending layer order, frontmost last
    std::vector<Variable> global_variables;
    std::vector<Variable> global_lists;
    std::set<std::string> broadcasts;
    std::vector<std::string> backdrops;

    bool operator==(const Project&) const = default;

    /// Stage followed by sprites in layer order.
    [[nodiscard]] std::vector<const Actor*> actors() const;
    [[nodiscard]] const Actor* actor(std::string_view name) const;
    [[nodiscard]] std::size_t script_count() const;
    /// Owner of the variable `name` as seen from `actor`: the actor's name when
    /// it has a local variable of that name, otherwise empty (global).
    [[nodiscard]] std::string variable_owner(const Actor& actor, std::string_view name,
                                             bool list = false) const;
};

}  // namespace qlc
