/// @file question.hpp
/// @brief Question taxonomy, Block Model classification and question values.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qlc {

/// The thirty question kinds, numbered as in the Block Model table.
enum class QuestionKind : std::uint8_t {
    BlockControllingLoop = 1,
    ElementInLoopCondition,
    IfBlockCondition,
    VariableInScript,
    SetVariable,
    PurposeOfIfCondition,
    PurposeOfLoopCondition,
    PurposeOfVariable,
    BlocksInIfStatement,
    ElementInLoopBody,
    IfElseExecution,
    IfThenExecution,
    RepeatTimesExecution,
    PurposeOfForeverLoop,
    PurposeOfMyBlock,
    PurposeOfRepeatTimesLoop,
    PurposeOfRepeatUntilLoop,
    PurposeOfScript,
    MyBlockDefinition,
    ScriptToSetVariable,
    StatementTriggersEvent,
    ScriptsTriggeredByEvent,
    ScriptsTriggeredByStatement,
    PurposeOfBroadcast,
    ScriptsForActor,
    ScriptsInProgram,
    VariableForActor,
    ScriptExecutionOrderDifferentActors,
    ScriptExecutionOrderSameActor,
    PurposeOfProgram,
};

inline constexpr std::size_t kQuestionKindCount = 30;

/// All kinds in ascending number order.
const std::array<QuestionKind, kQuestionKindCount>& all_question_kinds();

constexpr int kind_number(QuestionKind kind) noexcept { return static_cast<int>(kind); }
std::optional<QuestionKind> kind_from_number(int number);

/// Identifier form used in JSON and CSV ("BlockControllingLoop").
std::string_view kind_name(QuestionKind kind);
std::optional<QuestionKind> kind_from_name(std::string_view name);
/// Display title ("Block Controlling Loop").
std::string_view kind_title(QuestionKind kind);

enum class Scope : std::uint8_t { Atom, Block, Relation, Macro };
enum class Dimension : std::uint8_t { Text, Execution, Purpose };

struct BlockModelCell {
    Scope scope = Scope::Atom;
    Dimension dimension = Dimension::Text;

    auto operator<=>(const BlockModelCell&) const = default;
};

/// The twelve cells, row-major (Atom/Text first).
const std::array<BlockModelCell, 12>& all_cells();

std::string_view scope_name(Scope scope);
std::string_view dimension_name(Dimension dimension);
std::optional<Scope> scope_from_name(std::string_view name);
std::optional<Dimension> dimension_from_name(std::string_view name);

enum class AnswerKind : std::uint8_t { Number, Strings, YesNo, MultipleChoice, FreeText };

std::string_view answer_kind_name(AnswerKind kind);
std::optional<AnswerKind> answer_kind_from_name(std::string_view name);

struct Classification {
    BlockModelCell cell;
    AnswerKind answer = AnswerKind::FreeText;

    bool operator==(const Classification&) const = default;
};

Classification classify(QuestionKind kind);

/// Where the choices of a multiple-choice kind are drawn from.
enum class ChoiceScope : std::uint8_t { None, Script, Project, Actors };
ChoiceScope choice_scope(QuestionKind kind);

/// English prompt template. Placeholders in braces: {variable}, {statement},
/// {condition}, {truth}, {actor}, {actor1}, {actor2}, {event}, {myblock}.
std::string_view prompt_template(QuestionKind kind);
/// Substitute placeholders; unknown placeholders are left untouched.
std::string instantiate_prompt(std::string_view templ, const std::map<std::string, std::string>& values);

struct RenderedSnippet {
    std::string scratchblocks;
    std::string label;
    std::vector<std::string> source_block_ids;

    bool operator==(const RenderedSnippet&) const = default;
};

struct ScopeRef {
    enum class Kind : std::uint8_t { Project, Actor, Script, Procedure };
    Kind kind = Kind::Project;
    std::string actor;
    std::string id;  // script id or procedure signature

    bool operator==(const ScopeRef&) const = default;
};

struct QuestionTarget {
    ScopeRef scope;
    std::vector<std::string> highlights;

    bool operator==(const QuestionTarget&) const = default;
};

struct NumberAnswer {
    std::string value;  // canonical decimal text
    bool operator==(const NumberAnswer&) const = default;
};
struct StringsAnswer {
    std::vector<std::string> values;
    bool operator==(const StringsAnswer&) const = default;
};
struct YesNoAnswer {
    bool yes = false;
    bool operator==(const YesNoAnswer&) const = default;
};
struct ChoiceAnswer {
    std::vector<std::size_t> correct;
    bool operator==(const ChoiceAnswer&) const = default;
};

using AnswerKey = std::variant<NumberAnswer, StringsAnswer, YesNoAnswer, ChoiceAnswer>;

struct Question {
    std::string id;
    QuestionKind kind = QuestionKind::PurposeOfProgram;
    BlockModelCell cell;
    AnswerKind answer_kind = AnswerKind::FreeText;
    std::string prompt;
    QuestionTarget target;
    RenderedSnippet snippet;  // code shown with the question; empty for actor/project targets
    std::vector<RenderedSnippet> choices;
    std::optional<AnswerKey> key;
    std::uint64_t seed = 0;

    bool operator==(const Question&) const = default;
};

inline constexpr std::string_view kGeneratorVersion = "scratch-qlc/1.0";

struct QuestionSet {
    std::string project_id;
    std::string generator_version{kGeneratorVersion};
    std::uint64_t master_seed = 0;
    std::vector<Question> questions;

    bool operator==(const QuestionSet&) const = default;

    /// Identifier response sheets refer to: "<projectId>@<masterSeed>".
    [[nodiscard]] std::string id() const;
};

/// Canonical decimal rendering used for Number keys and responses. Numeric
/// text is normalized ("10.0" -> "10"); anything else is returned trimmed.
std::string canonical_number(std::string_view text);

}  // namespace qlc
