#include "qlc/question_json.hpp"

namespace qlc {

using nlohmann::json;

namespace {

std::string_view scope_kind_name(ScopeRef::Kind kind) {
    switch (kind) {
        case ScopeRef::Kind::Project: return "project";
        case ScopeRef::Kind::Actor: return "actor";
        case ScopeRef::Kind::Script: return "script";
        case ScopeRef::Kind::Procedure: return "procedure";
    }
    return "project";
}

template <typename T>
T member(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) {
        throw FormatError(std::string("missing member '") + name + "'");
    }
    try {
        return j.at(name).get<T>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("member '") + name + "': " + e.what());
    }
}

json snippet_to_json(const RenderedSnippet& s) {
    return {{"scratchblocks", s.scratchblocks}, {"label", s.label}, {"blockIds", s.source_block_ids}};
}

RenderedSnippet snippet_from_json(const json& j) {
    RenderedSnippet s;
    s.scratchblocks = member<std::string>(j, "scratchblocks");
    s.label = member<std::string>(j, "label");
    if (j.contains("blockIds")) {
        s.source_block_ids = member<std::vector<std::string>>(j, "blockIds");
    }
    return s;
}

}  // namespace

json scope_ref_to_json(const ScopeRef& scope) {
    json j = {{"kind", scope_kind_name(scope.kind)}};
    if (scope.kind != ScopeRef::Kind::Project) j["actor"] = scope.actor;
    if (scope.kind == ScopeRef::Kind::Script || scope.kind == ScopeRef::Kind::Procedure) j["id"] = scope.id;
    return j;
}

ScopeRef scope_ref_from_json(const json& j) {
    ScopeRef s;
    const auto kind = member<std::string>(j, "kind");
    if (kind == "project") {
        s.kind = ScopeRef::Kind::Project;
    } else if (kind == "actor") {
        s.kind = ScopeRef::Kind::Actor;
    } else if (kind == "script") {
        s.kind = ScopeRef::Kind::Script;
    } else if (kind == "procedure") {
        s.kind = ScopeRef::Kind::Procedure;
    } else {
        throw FormatError("unknown scope kind '" + kind + "'");
    }
    if (s.kind != ScopeRef::Kind::Project) s.actor = member<std::string>(j, "actor");
    if (s.kind == ScopeRef::Kind::Script || s.kind == ScopeRef::Kind::Procedure) {
        s.id = member<std::string>(j, "id");
    }
    return s;
}

json answer_key_to_json(const AnswerKey& key) {
    return std::visit(
        [](const auto& k) -> json {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, NumberAnswer>) {
                return {{"kind", "Number"}, {"value", k.value}};
            } else if constexpr (std::is_same_v<T, StringsAnswer>) {
                return {{"kind", "Strings"}, {"value", k.values}};
            } else if constexpr (std::is_same_v<T, YesNoAnswer>) {
                return {{"kind", "YesNo"}, {"value", k.yes ? "Yes" : "No"}};
            } else {
                return {{"kind", "MultipleChoice"}, {"value", k.correct}};
            }
        },
        key);
}

AnswerKey answer_key_from_json(const json& j) {
    const auto kind = member<std::string>(j, "kind");
    if (kind == "Number") return NumberAnswer{member<std::string>(j, "value")};
    if (kind == "Strings") return StringsAnswer{member<std::vector<std::string>>(j, "value")};
    if (kind == "MultipleChoice") return ChoiceAnswer{member<std::vector<std::size_t>>(j, "value")};
    if (kind == "YesNo") {
        const auto v = member<std::string>(j, "value");
        if (v != "Yes" && v != "No") throw FormatError("YesNo key must be \"Yes\" or \"No\"");
        return YesNoAnswer{v == "Yes"};
    }
    throw FormatError("unknown answer kind '" + kind + "'");
}

json question_to_json(const Question& q, bool with_key) {
    json j = {
        {"id", q.id},
        {"kind", kind_name(q.kind)},
        {"kindNumber", kind_number(q.kind)},
        {"cell", {{"scope", scope_name(q.cell.scope)}, {"dimension", dimension_name(q.cell.dimension)}}},
        {"answerKind", answer_kind_name(q.answer_kind)},
        {"prompt", q.prompt},
        {"target", {{"scopeRef", scope_ref_to_json(q.target.scope)}, {"highlights", q.target.highlights}}},
        {"snippet", snippet_to_json(q.snippet)},
        {"choices", json::array()},
        {"seed", q.seed},
    };
    for (const RenderedSnippet& c : q.choices) j["choices"].push_back(snippet_to_json(c));
    if (with_key && q.key) j["key"] = answer_key_to_json(*q.key);
    return j;
}

Question question_from_json(const json& j) {
    Question q;
    q.id = member<std::string>(j, "id");
    const auto name = member<std::string>(j, "kind");
    const auto kind = kind_from_name(name);
    if (!kind) throw FormatError("unknown question kind '" + name + "'");
    q.kind = *kind;
    const json cell = member<json>(j, "cell");
    const auto scope = scope_from_name(member<std::string>(cell, "scope"));
    const auto dimension = dimension_from_name(member<std::string>(cell, "dimension"));
    if (!scope || !dimension) throw FormatError("bad cell in question " + q.id);
    q.cell = {*scope, *dimension};
    const auto answer = answer_kind_from_name(member<std::string>(j, "answerKind"));
    if (!answer) throw FormatError("bad answerKind in question " + q.id);
    q.answer_kind = *answer;
    q.prompt = member<std::string>(j, "prompt");
    const json target = member<json>(j, "target");
    q.target.scope = scope_ref_from_json(member<json>(target, "scopeRef"));
    q.target.highlights = member<std::vector<std::string>>(target, "highlights");
    if (j.contains("snippet")) q.snippet = snippet_from_json(j.at("snippet"));
    for (const json& c : member<json>(j, "choices")) q.choices.push_back(snippet_from_json(c));
    if (j.contains("key") && !j.at("key").is_null()) q.key = answer_key_from_json(j.at("key"));
    q.seed = member<std::uint64_t>(j, "seed");
    return q;
}

json question_set_to_json(const QuestionSet& set, bool with_keys) {
    json j = {
        {"id", set.id()},
        {"projectId", set.project_id},
        {"generatorVersion", set.generator_version},
        {"masterSeed", set.master_seed},
        {"questions", json::array()},
    };
    for (const Question& q : set.questions) j["questions"].push_back(question_to_json(q, with_keys));
    return j;
}

QuestionSet question_set_from_json(const json& j) {
    QuestionSet set;
    set.project_id = member<std::string>(j, "projectId");
    set.generator_version = member<std::string>(j, "generatorVersion");
    set.master_seed = member<std::uint64_t>(j, "masterSeed");
    const json questions = member<json>(j, "questions");
    if (!questions.is_array()) throw FormatError("'questions' must be an array");
    for (const json& q : questions) set.questions.push_back(question_from_json(q));
    return set;
}

std::string dump_question_set(const QuestionSet& set, bool with_keys) {
    return question_set_to_json(set, with_keys).dump(2) + "\n";
}

QuestionSet parse_question_set(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    return question_set_from_json(j);
}

}  // namespace qlc
