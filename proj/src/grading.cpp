#include "qlc/grading.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace qlc {

using nlohmann::json;

namespace {

std::string normalize_text(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    s = s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string_view response_kind_name(const ResponseValue& v) {
    constexpr std::string_view names[] = {"Number", "Strings", "YesNo", "MultipleChoice", "FreeText"};
    return names[v.index()];
}

ResponseValue decode_answer(const json& j, AnswerKind kind, const std::string& qid) {
    auto mismatch = [&]() -> KindMismatch {
        return KindMismatch("answer to " + qid + " does not fit a " + std::string(answer_kind_name(kind)) +
                            " question");
    };
    switch (kind) {
        case AnswerKind::Number:
            if (j.is_string()) return NumberResponse{j.get<std::string>()};
            if (j.is_number()) return NumberResponse{canonical_number(j.dump())};
            throw mismatch();
        case AnswerKind::Strings: {
            StringsResponse r;
            if (j.is_string()) {
                // "a, b" is accepted as a list typed into one box
                const auto text = j.get<std::string>();
                std::size_t start = 0;
                while (start <= text.size()) {
                    const auto comma = text.find(',', start);
                    r.values.push_back(text.substr(start, comma - start));
                    if (comma == std::string::npos) break;
                    start = comma + 1;
                }
                return r;
            }
            if (!j.is_array()) throw mismatch();
            for (const json& v : j) {
                if (!v.is_string()) throw mismatch();
                r.values.push_back(v.get<std::string>());
            }
            return r;
        }
        case AnswerKind::YesNo:
            if (j.is_boolean()) return YesNoResponse{j.get<bool>()};
            if (j.is_string()) {
                const auto v = normalize_text(j.get<std::string>());
                if (v == "yes") return YesNoResponse{true};
                if (v == "no") return YesNoResponse{false};
                throw InvalidResponse("answer to " + qid + " must be Yes or No");
            }
            throw mismatch();
        case AnswerKind::MultipleChoice: {
            if (!j.is_array()) throw mismatch();
            ChoiceResponse r;
            for (const json& v : j) {
                if (!v.is_number_integer() || v.get<long long>() < 0) throw mismatch();
                r.selected.push_back(v.get<std::size_t>());
            }
            return r;
        }
        case AnswerKind::FreeText:
            return FreeTextResponse{j.is_string() ? j.get<std::string>() : j.dump()};
    }
    throw mismatch();
}

json encode_answer(const ResponseValue& v) {
    return std::visit(
        [](const auto& r) -> json {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, NumberResponse>) return r.text;
            if constexpr (std::is_same_v<T, StringsResponse>) return r.values;
            if constexpr (std::is_same_v<T, YesNoResponse>) return r.yes ? "Yes" : "No";
            if constexpr (std::is_same_v<T, ChoiceResponse>) return r.selected;
            if constexpr (std::is_same_v<T, FreeTextResponse>) return r.text;
        },
        v);
}

}  // namespace

double score_answer(const AnswerKey& key, const ResponseValue& response, std::size_t choice_count) {
    if (const auto* k = std::get_if<ChoiceAnswer>(&key)) {
        const auto* r = std::get_if<ChoiceResponse>(&response);
        if (r == nullptr) throw KindMismatch("expected a multiple-choice response, got " +
                                             std::string(response_kind_name(response)));
        if (choice_count == 0) throw Ungradable("question has no choices");
        const std::set<std::size_t> selected(r->selected.begin(), r->selected.end());
        if (selected.size() != r->selected.size()) throw InvalidResponse("choice selected twice");
        if (!selected.empty() && *selected.rbegin() >= choice_count) {
            throw InvalidResponse("choice index " + std::to_string(*selected.rbegin()) + " out of range");
        }
        const std::set<std::size_t> correct(k->correct.begin(), k->correct.end());
        std::size_t right = 0;
        for (std::size_t i = 0; i < choice_count; ++i) {
            right += selected.contains(i) == correct.contains(i) ? 1 : 0;
        }
        return static_cast<double>(right) / static_cast<double>(choice_count);
    }
    if (const auto* k = std::get_if<NumberAnswer>(&key)) {
        const auto* r = std::get_if<NumberResponse>(&response);
        if (r == nullptr) throw KindMismatch("expected a number response");
        return canonical_number(r->text) == canonical_number(k->value) ? 1.0 : 0.0;
    }
    if (const auto* k = std::get_if<YesNoAnswer>(&key)) {
        const auto* r = std::get_if<YesNoResponse>(&response);
        if (r == nullptr) throw KindMismatch("expected a yes/no response");
        return r->yes == k->yes ? 1.0 : 0.0;
    }
    const auto& k = std::get<StringsAnswer>(key);
    const auto* r = std::get_if<StringsResponse>(&response);
    if (r == nullptr) throw KindMismatch("expected a list of names");
    std::set<std::string> want;
    std::set<std::string> got;
    for (const auto& v : k.values) want.insert(normalize_text(v));
    for (const auto& v : r->values) {
        if (auto n = normalize_text(v); !n.empty()) got.insert(std::move(n));
    }
    return want == got ? 1.0 : 0.0;
}

GradeReport grade(const QuestionSet& set, const ResponseSheet& sheet) {
    if (sheet.question_set_id != set.id()) {
        throw QuestionSetMismatch("responses are for '" + sheet.question_set_id + "', not '" + set.id() + "'");
    }
    std::map<std::string, const Question*> by_id;
    for (const Question& q : set.questions) by_id.emplace(q.id, &q);
    std::map<std::string, const ResponseValue*> answers;
    for (const Response& r : sheet.responses) {
        if (!by_id.contains(r.question_id)) throw UnknownQuestionId("unknown question id '" + r.question_id + "'");
        if (!answers.emplace(r.question_id, &r.value).second) {
            throw InvalidResponse("more than one response to '" + r.question_id + "'");
        }
    }

    GradeReport report;
    report.question_set_id = set.id();
    std::size_t gradable = 0;
    for (const Question& q : set.questions) {
        QuestionGrade g{q.id, q.kind, answers.contains(q.id), std::nullopt};
        if (q.answer_kind == AnswerKind::FreeText) {
            ++report.ungraded;
        } else {
            if (!q.key) throw Ungradable("question '" + q.id + "' has no answer key");
            ++gradable;
            g.score = g.answered ? score_answer(*q.key, *answers.at(q.id), q.choices.size()) : 0.0;
            report.total += *g.score;
        }
        report.per_question.push_back(std::move(g));
    }
    report.normalized = gradable == 0 ? 0.0 : report.total / static_cast<double>(gradable);
    return report;
}

ResponseSheet response_sheet_from_json(const json& j, const QuestionSet& set) {
    if (!j.is_object() || !j.contains("questionSetId") || !j.at("questionSetId").is_string()) {
        throw InvalidResponse("response sheet needs a string 'questionSetId'");
    }
    if (!j.contains("responses") || !j.at("responses").is_array()) {
        throw InvalidResponse("response sheet needs a 'responses' array");
    }
    ResponseSheet sheet;
    sheet.question_set_id = j.at("questionSetId").get<std::string>();
    for (const json& r : j.at("responses")) {
        if (!r.is_object() || !r.contains("questionId") || !r.at("questionId").is_string() ||
            !r.contains("answer")) {
            throw InvalidResponse("each response needs 'questionId' and 'answer'");
        }
        const auto qid = r.at("questionId").get<std::string>();
        const auto q = std::find_if(set.questions.begin(), set.questions.end(),
                                    [&](const Question& x) { return x.id == qid; });
        if (q == set.questions.end()) throw UnknownQuestionId("unknown question id '" + qid + "'");
        sheet.responses.push_back({qid, decode_answer(r.at("answer"), q->answer_kind, qid)});
    }
    return sheet;
}

json response_sheet_to_json(const ResponseSheet& sheet) {
    json responses = json::array();
    for (const Response& r : sheet.responses) {
        responses.push_back({{"questionId", r.question_id}, {"answer", encode_answer(r.value)}});
    }
    return {{"questionSetId", sheet.question_set_id}, {"responses", std::move(responses)}};
}

json grade_report_to_json(const GradeReport& report) {
    json per = json::array();
    for (const QuestionGrade& g : report.per_question) {
        per.push_back({{"questionId", g.question_id},
                       {"kind", kind_name(g.kind)},
                       {"answered", g.answered},
                       {"score", g.score ? json(*g.score) : json(nullptr)}});
    }
    return {{"questionSetId", report.question_set_id},
            {"perQuestion", std::move(per)},
            {"total", report.total},
            {"normalized", report.normalized},
            {"ungraded", report.ungraded}};
}

}  // namespace qlc
