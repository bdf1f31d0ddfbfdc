/// @file grading.hpp
/// @brief Scoring learner responses against question keys.
///
/// Multiple-choice answers earn partial credit: one decision per choice
/// (selected or not), score = correct decisions / number of choices.
/// Number, Strings and YesNo answers score 0 or 1. FreeText is never graded.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qlc/question.hpp"

namespace qlc {

class GradingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
/// Response shape does not fit the question's answer kind.
class KindMismatch : public GradingError {
public:
    using GradingError::GradingError;
};
/// The question cannot be scored automatically (FreeText or missing key).
class Ungradable : public GradingError {
public:
    using GradingError::GradingError;
};
class UnknownQuestionId : public GradingError {
public:
    using GradingError::GradingError;
};
/// Response sheet refers to a different question set.
class QuestionSetMismatch : public GradingError {
public:
    using GradingError::GradingError;
};
/// Malformed value, such as a choice index out of range or a duplicate response.
class InvalidResponse : public GradingError {
public:
    using GradingError::GradingError;
};

struct NumberResponse {
    std::string text;
    bool operator==(const NumberResponse&) const = default;
};
struct StringsResponse {
    std::vector<std::string> values;
    bool operator==(const StringsResponse&) const = default;
};
struct YesNoResponse {
    bool yes = false;
    bool operator==(const YesNoResponse&) const = default;
};
struct ChoiceResponse {
    std::vector<std::size_t> selected;
    bool operator==(const ChoiceResponse&) const = default;
};
struct FreeTextResponse {
    std::string text;
    bool operator==(const FreeTextResponse&) const = default;
};

using ResponseValue = std::variant<NumberResponse, StringsResponse, YesNoResponse, ChoiceResponse, FreeTextResponse>;

struct Response {
    std::string question_id;
    ResponseValue value;
    bool operator==(const Response&) const = default;
};

struct ResponseSheet {
    std::string question_set_id;
    std::vector<Response> responses;
    bool operator==(const ResponseSheet&) const = default;
};

struct QuestionGrade {
    std::string question_id;
    QuestionKind kind = QuestionKind::PurposeOfProgram;
    bool answered = false;
    std::optional<double> score;  // empty when ungraded
};

struct GradeReport {
    std::string question_set_id;
    std::vector<QuestionGrade> per_question;
    double total = 0;
    double normalized = 0;  // total / gradable questions, 0 when none
    std::size_t ungraded = 0;
};

/// Score in [0, 1]. `choice_count` is used for multiple-choice keys.
/// Throws KindMismatch or InvalidResponse.
double score_answer(const AnswerKey& key, const ResponseValue& response, std::size_t choice_count);

/// Throws QuestionSetMismatch, UnknownQuestionId, Ungradable (gradable
/// question without key), KindMismatch or InvalidResponse.
GradeReport grade(const QuestionSet& set, const ResponseSheet& sheet);

/// Decode a response sheet, reading each answer according to the kind of the
/// question it refers to. Throws GradingError subclasses on bad input.
ResponseSheet response_sheet_from_json(const nlohmann::json& j, const QuestionSet& set);
nlohmann::json response_sheet_to_json(const ResponseSheet& sheet);
nlohmann::json grade_report_to_json(const GradeReport& report);

}  // namespace qlc
