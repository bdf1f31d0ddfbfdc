/// @file question_json.hpp
/// @brief JSON form of question sets.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qlc/question.hpp"

namespace qlc {

/// JSON input did not have the expected shape.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json scope_ref_to_json(const ScopeRef& scope);
ScopeRef scope_ref_from_json(const nlohmann::json& j);

nlohmann::json answer_key_to_json(const AnswerKey& key);
AnswerKey answer_key_from_json(const nlohmann::json& j);

nlohmann::json question_to_json(const Question& question, bool with_key = true);
Question question_from_json(const nlohmann::json& j);

/// With `with_keys` false every "key" member is omitted (learner view).
nlohmann::json question_set_to_json(const QuestionSet& set, bool with_keys = true);
QuestionSet question_set_from_json(const nlohmann::json& j);

/// Stable text form: two-space indent, trailing newline.
std::string dump_question_set(const QuestionSet& set, bool with_keys = true);
/// Throws FormatError on malformed text or shape.
QuestionSet parse_question_set(std::string_view text);

}  // namespace qlc
