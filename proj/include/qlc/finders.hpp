/// @file finders.hpp
/// @brief Detection of question opportunities in a parsed project.
///
/// Finders are pure functions of (project, config): the same inputs always
/// produce the same questions, ids, choices and keys. All randomness comes
/// from per-question seeds derived from the master seed and the question id.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "qlc/ast.hpp"
#include "qlc/question.hpp"

namespace qlc {

inline constexpr std::size_t kDefaultMaxChoices = 5;
inline constexpr std::size_t kMinChoices = 2;
inline constexpr std::size_t kMaxChoicesLimit = 8;
/// Cap on sprite pairs per event for ScriptExecutionOrderDifferentActors.
inline constexpr std::size_t kMaxActorPairsPerEvent = 3;

struct FinderConfig {
    std::set<QuestionKind> enabled_kinds = all_kinds();
    std::uint64_t master_seed = 0;
    std::size_t max_choices = kDefaultMaxChoices;
    std::optional<std::size_t> max_instances_per_kind;

    static std::set<QuestionKind> all_kinds();
    /// Throws std::invalid_argument when max_choices is outside [2, 8] or the
    /// instance cap is zero.
    void validate() const;
    [[nodiscard]] bool enabled(QuestionKind kind) const { return enabled_kinds.contains(kind); }
};

/// Category of a distractor candidate.
enum class Eligibility : std::uint8_t {
    Statement,
    BooleanBlock,
    NumberLiteral,
    Element,
    TriggerStatement,
    Script,
    ProcedureDefinition,
    ActorName,
};

/// Candidate wrong answers, deduplicated by scratchblocks text.
struct DistractorPool {
    struct Candidate {
        RenderedSnippet snippet;
        Eligibility tag;
    };
    std::vector<Candidate> candidates;

    void add(RenderedSnippet snippet, Eligibility tag);
    [[nodiscard]] bool contains(std::string_view scratchblocks) const;
};

struct ChoiceSet {
    std::vector<RenderedSnippet> choices;
    std::vector<std::size_t> correct;  // ascending
};

/// Build at most `max_choices` choices: every distinct correct snippet (sampled
/// down to max_choices - 1 if needed) plus distractors, drawing `preferred`
/// categories first. Distractors equal to a correct answer are dropped.
/// Returns nullopt when there is no correct answer or no distractor.
std::optional<ChoiceSet> assemble_choices(std::vector<RenderedSnippet> correct, const DistractorPool& pool,
                                          const std::set<Eligibility>& preferred, std::uint64_t seed,
                                          std::size_t max_choices, bool shuffle = true);

/// Deterministic coin used for the truth value of if-statement questions.
bool coin_from_seed(std::uint64_t seed) noexcept;

/// Kinds 1-7 for one script or procedure body.
std::vector<Question> find_atom_questions(const Script& script, const Actor& owner, const Project& project,
                                          const FinderConfig& config);
std::vector<Question> find_atom_questions(const ProcedureDefinition& procedure, const Actor& owner,
                                          const Project& project, const FinderConfig& config);
/// Kinds 9-18 for one script or procedure body.
std::vector<Question> find_block_questions(const Script& script, const Actor& owner, const Project& project,
                                           const FinderConfig& config);
std::vector<Question> find_block_questions(const ProcedureDefinition& procedure, const Actor& owner,
                                           const Project& project, const FinderConfig& config);
/// Kind 8, one per distinct variable used anywhere in the project.
std::vector<Question> find_variable_questions(const Project& project, const FinderConfig& config);
/// Kinds 19-24.
std::vector<Question> find_relation_questions(const Project& project, const FinderConfig& config);
/// Kinds 25-30.
std::vector<Question> find_macro_questions(const Project& project, const FinderConfig& config);

/// All questions: per code unit in traversal order kinds 1-18, then kind 8,
/// then relation and macro kinds. Throws std::invalid_argument on a bad config.
QuestionSet generate_questions(const Project& project, const FinderConfig& config);

}  // namespace qlc
