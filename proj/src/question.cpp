#include "qlc/question.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace qlc {

namespace {

struct KindInfo {
    QuestionKind kind;
    std::string_view name;
    std::string_view title;
    Scope scope;
    Dimension dimension;
    AnswerKind answer;
    ChoiceScope choices;
    std::string_view prompt;
};

using enum Scope;
using enum Dimension;
using A = AnswerKind;
using C = ChoiceScope;
using K = QuestionKind;

constexpr std::array<KindInfo, kQuestionKindCount> kKinds = {{
    {K::BlockControllingLoop, "BlockControllingLoop", "Block Controlling Loop", Atom, Text,
     A::MultipleChoice, C::Script, "Which of these blocks controls how many times this loop is executed?"},
    {K::ElementInLoopCondition, "ElementInLoopCondition", "Element in Loop Condition", Atom, Text,
     A::MultipleChoice, C::Script, "Which of these elements are part of a loop condition?"},
    {K::IfBlockCondition, "IfBlockCondition", "If Block Condition", Atom, Text, A::MultipleChoice,
     C::Script, "Which of these blocks is the condition of this if block?"},
    {K::VariableInScript, "VariableInScript", "Variable in Script", Atom, Text, A::Strings, C::None,
     "Give the name(s) of the variable(s) in this script."},
    {K::SetVariable, "SetVariable", "Set Variable", Atom, Execution, A::Strings, C::None,
     "What value will {variable} have after this statement is executed?"},
    {K::PurposeOfIfCondition, "PurposeOfIfCondition", "Purpose of If Condition", Atom, Purpose,
     A::FreeText, C::None, "What is the purpose of the condition in this if statement?"},
    {K::PurposeOfLoopCondition, "PurposeOfLoopCondition", "Purpose of Loop Condition", Atom, Purpose,
     A::FreeText, C::None, "What is the purpose of the condition in this loop?"},
    {K::PurposeOfVariable, "PurposeOfVariable", "Purpose of Variable", Atom, Purpose, A::FreeText,
     C::None, "What is the role of {variable} in this program?"},
    {K::BlocksInIfStatement, "BlocksInIfStatement", "Blocks in If Statement", Block, Text,
     A::MultipleChoice, C::Script, "Which of these blocks are found inside an if statement?"},
    {K::ElementInLoopBody, "ElementInLoopBody", "Element in Loop Body", Block, Text, A::MultipleChoice,
     C::Script, "Which of these elements are found inside the body of a loop?"},
    {K::IfElseExecution, "IfElseExecution", "If-Else Statement Execution", Block, Execution,
     A::MultipleChoice, C::Script, "Which set of statements will be executed if {condition} is {truth}?"},
    {K::IfThenExecution, "IfThenExecution", "If-Then Statement Execution", Block, Execution, A::YesNo,
     C::None, "In this if statement, will {statement} be executed if condition is {truth}?"},
    {K::RepeatTimesExecution, "RepeatTimesExecution", "Repeat Times Execution", Block, Execution,
     A::Number, C::None, "How many times is {statement} executed?"},
    {K::PurposeOfForeverLoop, "PurposeOfForeverLoop", "Purpose of Forever Loop", Block, Purpose,
     A::FreeText, C::None, "Explain the purpose of this loop."},
    {K::PurposeOfMyBlock, "PurposeOfMyBlock", "Purpose of My Block", Block, Purpose, A::FreeText,
     C::None, "Explain the function of this My Block."},
    {K::PurposeOfRepeatTimesLoop, "PurposeOfRepeatTimesLoop", "Purpose of Repeat Times Loop", Block,
     Purpose, A::FreeText, C::None, "Explain the purpose of this loop."},
    {K::PurposeOfRepeatUntilLoop, "PurposeOfRepeatUntilLoop", "Purpose of Repeat Until Loop", Block,
     Purpose, A::FreeText, C::None, "Explain the purpose of this loop."},
    {K::PurposeOfScript, "PurposeOfScript", "Purpose of Script", Block, Purpose, A::FreeText, C::None,
     "What is the purpose of this script?"},
    {K::MyBlockDefinition, "MyBlockDefinition", "My Block Definition", Relation, Text,
     A::MultipleChoice, C::Project, "Which of these shows the definition of this {myblock}?"},
    {K::ScriptToSetVariable, "ScriptToSetVariable", "Script to Set Variable", Relation, Text,
     A::MultipleChoice, C::Project, "Which script sets the value of {variable}?"},
    {K::StatementTriggersEvent, "StatementTriggersEvent", "Statement Triggers Event", Relation, Text,
     A::MultipleChoice, C::Project, "Which of these statements will cause this script to start?"},
    {K::ScriptsTriggeredByEvent, "ScriptsTriggeredByEvent", "Scripts Triggered by Event", Relation,
     Execution, A::Number, C::None, "How many scripts will run in the whole project when {event} happens?"},
    {K::ScriptsTriggeredByStatement, "ScriptsTriggeredByStatement", "Scripts Triggered by Statement",
     Relation, Execution, A::MultipleChoice, C::Project,
     "Which scripts will run after this {statement} is executed?"},
    {K::PurposeOfBroadcast, "PurposeOfBroadcast", "Purpose of Broadcast", Relation, Purpose,
     A::FreeText, C::None, "What happens when this broadcast message is sent?"},
    {K::ScriptsForActor, "ScriptsForActor", "Scripts for Actor", Macro, Text, A::Number, C::None,
     "How many scripts does {actor} have?"},
    {K::ScriptsInProgram, "ScriptsInProgram", "Scripts in Program", Macro, Text, A::Number, C::None,
     "How many scripts are in the whole program?"},
    {K::VariableForActor, "VariableForActor", "Variable for Actor", Macro, Text, A::MultipleChoice,
     C::Actors, "Which sprite does {variable} belong to?"},
    {K::ScriptExecutionOrderDifferentActors, "ScriptExecutionOrderDifferentActors",
     "Script Execution Order Different Actors", Macro, Execution, A::MultipleChoice, C::Project,
     "The first script belongs to {actor1} and the second script belongs to {actor2}. Suppose {actor2} "
     "is in front of {actor1}. When {event} happens, which script will run first?"},
    {K::ScriptExecutionOrderSameActor, "ScriptExecutionOrderSameActor",
     "Script Execution Order Same Actor", Macro, Execution, A::YesNo, C::None,
     "These scripts belong to the same sprite. When {event} happens, is it possible to tell which "
     "script will run first?"},
    {K::PurposeOfProgram, "PurposeOfProgram", "Purpose of Program", Macro, Purpose, A::FreeText,
     C::None, "Describe what this program does."},
}};

const KindInfo& info(QuestionKind kind) { return kKinds[static_cast<std::size_t>(kind) - 1]; }

}  // namespace

const std::array<QuestionKind, kQuestionKindCount>& all_question_kinds() {
    static const auto kinds = [] {
        std::array<QuestionKind, kQuestionKindCount> out{};
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = kKinds[i].kind;
        }
        return out;
    }();
    return kinds;
}

std::optional<QuestionKind> kind_from_number(int number) {
    if (number < 1 || number > static_cast<int>(kQuestionKindCount)) {
        return std::nullopt;
    }
    return static_cast<QuestionKind>(number);
}

std::string_view kind_name(QuestionKind kind) { return info(kind).name; }
std::string_view kind_title(QuestionKind kind) { return info(kind).title; }

std::optional<QuestionKind> kind_from_name(std::string_view name) {
    for (const KindInfo& k : kKinds) {
        if (k.name == name) return k.kind;
    }
    return std::nullopt;
}

const std::array<BlockModelCell, 12>& all_cells() {
    static const std::array<BlockModelCell, 12> cells = {{
        {Atom, Text}, {Atom, Execution}, {Atom, Purpose},
        {Block, Text}, {Block, Execution}, {Block, Purpose},
        {Relation, Text}, {Relation, Execution}, {Relation, Purpose},
        {Macro, Text}, {Macro, Execution}, {Macro, Purpose},
    }};
    return cells;
}

std::string_view scope_name(Scope scope) {
    switch (scope) {
        case Atom: return "Atom";
        case Block: return "Block";
        case Relation: return "Relation";
        case Macro: return "Macro";
    }
    return "Atom";
}

std::string_view dimension_name(Dimension dimension) {
    switch (dimension) {
        case Text: return "Text";
        case Execution: return "Execution";
        case Purpose: return "Purpose";
    }
    return "Text";
}

std::optional<Scope> scope_from_name(std::string_view name) {
    for (const Scope s : {Atom, Block, Relation, Macro}) {
        if (scope_name(s) == name) return s;
    }
    return std::nullopt;
}

std::optional<Dimension> dimension_from_name(std::string_view name) {
    for (const Dimension d : {Text, Execution, Purpose}) {
        if (dimension_name(d) == name) return d;
    }
    return std::nullopt;
}

std::string_view answer_kind_name(AnswerKind kind) {
    switch (kind) {
        case A::Number: return "Number";
        case A::Strings: return "Strings";
        case A::YesNo: return "YesNo";
        case A::MultipleChoice: return "MultipleChoice";
        case A::FreeText: return "FreeText";
    }
    return "FreeText";
}

std::optional<AnswerKind> answer_kind_from_name(std::string_view name) {
    for (const A a : {A::Number, A::Strings, A::YesNo, A::MultipleChoice, A::FreeText}) {
        if (answer_kind_name(a) == name) return a;
    }
    return std::nullopt;
}

Classification classify(QuestionKind kind) {
    const KindInfo& k = info(kind);
    return {{k.scope, k.dimension}, k.answer};
}

ChoiceScope choice_scope(QuestionKind kind) { return info(kind).choices; }

std::string_view prompt_template(QuestionKind kind) { return info(kind).prompt; }

std::string instantiate_prompt(std::string_view templ, const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(templ.size());
    std::size_t i = 0;
    while (i < templ.size()) {
        if (templ[i] == '{') {
            const auto close = templ.find('}', i);
            if (close != std::string_view::npos) {
                const auto it = values.find(std::string(templ.substr(i + 1, close - i - 1)));
                if (it != values.end()) {
                    out += it->second;
                    i = close + 1;
                    continue;
                }
            }
        }
        out.push_back(templ[i++]);
    }
    return out;
}

std::string QuestionSet::id() const { return project_id + "@" + std::to_string(master_seed); }

std::string canonical_number(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    text = text.substr(first, text.find_last_not_of(" \t\r\n") - first + 1);
    double value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value)) {
        return std::string(text);
    }
    if (value == 0) {
        value = 0;  // folds -0
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return {buf.data(), res.ptr};
}

}  // namespace qlc
