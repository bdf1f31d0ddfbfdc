#include "qlc/finders.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

#include "qlc/hash.hpp"
#include "qlc/render.hpp"
#include "qlc/visitor.hpp"

namespace qlc {

namespace {

using K = QuestionKind;

// std::shuffle and the std distributions are implementation-defined, so
// sampling is spelled out to keep output identical across toolchains.
template <typename T>
void shuffle_in_place(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[rng() % i]);
    }
}

template <typename T>
void sample_in_place(std::vector<T>& v, std::size_t k, std::mt19937_64& rng) {
    if (v.size() <= k) return;
    for (std::size_t i = 0; i < k; ++i) {
        std::swap(v[i], v[i + rng() % (v.size() - i)]);
    }
    v.resize(k);
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

// ---------------------------------------------------------------- code units

struct Unit {
    const Actor* actor = nullptr;
    const Script* script = nullptr;
    const ProcedureDefinition* procedure = nullptr;

    [[nodiscard]] const std::vector<Block>& body() const {
        return script != nullptr ? script->body : procedure->body;
    }
    [[nodiscard]] ScopeRef scope() const {
        if (script != nullptr) return {ScopeRef::Kind::Script, actor->name, script->id};
        return {ScopeRef::Kind::Procedure, actor->name, procedure->signature};
    }
    [[nodiscard]] RenderedSnippet as_choice() const {
        return script != nullptr ? snippet_of(*script, *actor) : snippet_of(*procedure, *actor);
    }
    [[nodiscard]] Eligibility tag() const {
        return script != nullptr ? Eligibility::Script : Eligibility::ProcedureDefinition;
    }
    [[nodiscard]] const std::string& id() const { return script != nullptr ? script->id : procedure->id; }
};

std::vector<Unit> units_of(const Project& project) {
    std::vector<Unit> units;
    for (const Actor* actor : project.actors()) {
        for (const Script& s : actor->scripts) units.push_back({actor, &s, nullptr});
        for (const ProcedureDefinition& p : actor->procedures) units.push_back({actor, nullptr, &p});
    }
    return units;
}

struct StmtInfo {
    const Block* block;
    bool in_if;
    bool in_loop_body;
    int loop_depth;
};

struct ExprInfo {
    const Expression* expr;
    const Block* owner;
    bool in_loop_condition;
    bool in_loop_body;
};

struct UnitFacts {
    std::vector<StmtInfo> statements;
    std::vector<ExprInfo> expressions;
};

void analyze_stack(const std::vector<Block>& stack, bool in_if, bool in_loop, int depth, UnitFacts& out) {
    for (const Block& b : stack) {
        out.statements.push_back({&b, in_if, in_loop, depth});
        const bool counted_loop = b.kind == StmtKind::RepeatTimes || b.kind == StmtKind::RepeatUntil;
        for (const Input& in : b.inputs) {
            const bool loop_condition = counted_loop && (in.name == "TIMES" || in.name == "CONDITION");
            for_each_expression(in.value, [&](const Expression& e) {
                out.expressions.push_back({&e, &b, loop_condition, in_loop});
            });
        }
        for (const auto& sub : b.substacks) {
            analyze_stack(sub, in_if || b.is_if(), in_loop || b.is_loop(), depth + (b.is_loop() ? 1 : 0), out);
        }
    }
}

UnitFacts analyze(const std::vector<Block>& body) {
    UnitFacts facts;
    analyze_stack(body, false, false, 0, facts);
    return facts;
}

bool usable_statement(const Block& b) { return b.kind != StmtKind::Opaque; }

/// Non-boolean leaf elements: literals, variables and attribute reporters.
bool is_element(const Expression& e) {
    if (const auto* n = e.as<NumberLiteral>()) return !n->value.empty();
    if (const auto* s = e.as<StringLiteral>()) return !s->value.empty();
    return e.as<VariableReporter>() != nullptr || e.as<AttributeReporter>() != nullptr;
}

bool is_number_literal(const Expression& e) {
    const auto* n = e.as<NumberLiteral>();
    return n != nullptr && !n->value.empty();
}

std::set<std::string> subtree_ids(const Expression& e) {
    std::set<std::string> ids;
    for_each_expression(e, [&](const Expression& x) { ids.insert(x.id()); });
    return ids;
}

std::string header_line(const Block& b) {
    const std::string text = render_statement(b, true);
    return text.substr(0, text.find('\n'));
}

std::string bracketed(const Block& b) { return "[" + header_line(b) + "]"; }

/// Set-type questions: a text shown on both sides cannot be judged.
void drop_ambiguous(std::vector<RenderedSnippet>& correct, DistractorPool& pool) {
    std::set<std::string> wrong;
    for (const auto& c : pool.candidates) wrong.insert(c.snippet.scratchblocks);
    std::set<std::string> both;
    for (const auto& c : correct) {
        if (wrong.contains(c.scratchblocks)) both.insert(c.scratchblocks);
    }
    std::erase_if(correct, [&](const RenderedSnippet& s) { return both.contains(s.scratchblocks); });
    std::erase_if(pool.candidates, [&](const DistractorPool::Candidate& c) {
        return both.contains(c.snippet.scratchblocks);
    });
}

// -------------------------------------------------------------------- events

struct EventKey {
    EventKind kind;
    std::string payload;  // normalized for matching
    auto operator<=>(const EventKey&) const = default;
};

std::optional<EventKey> event_key(const Script& script, const Actor& owner) {
    if (!script.event) return std::nullopt;
    const Event& e = *script.event;
    switch (e.kind) {
        case EventKind::GreenFlag:
        case EventKind::StageClicked:
            return EventKey{e.kind, ""};
        case EventKind::KeyPressed:
            return EventKey{e.kind, e.payload};
        case EventKind::ReceiveMessage:
        case EventKind::BackdropSwitchedTo:
            // Scratch matches message and backdrop names case-insensitively.
            return EventKey{e.kind, lower(e.payload)};
        case EventKind::SpriteClicked:
            return EventKey{e.kind, owner.name};
        default:
            return std::nullopt;
    }
}

std::string event_label(EventKind kind, std::string_view shown) {
    std::string s(shown);
    switch (kind) {
        case EventKind::GreenFlag: return "[green flag clicked]";
        case EventKind::KeyPressed: return "[key " + s + " pressed]";
        case EventKind::ReceiveMessage: return "[I receive " + s + "]";
        case EventKind::BackdropSwitchedTo: return "[backdrop switches to " + s + "]";
        case EventKind::SpriteClicked: return "[" + s + " clicked]";
        case EventKind::StageClicked: return "[stage clicked]";
        default: return "[" + s + "]";
    }
}

struct EventInfo {
    EventKey key;
    std::string label;
};

/// Events with at least one script, in order of first occurrence.
std::vector<EventInfo> event_universe(const Project& project) {
    std::vector<EventInfo> events;
    std::set<EventKey> seen;
    for (const Actor* actor : project.actors()) {
        for (const Script& s : actor->scripts) {
            const auto key = event_key(s, *actor);
            if (!key || !seen.insert(*key).second) continue;
            const std::string shown = key->kind == EventKind::SpriteClicked ? actor->name : s.event->payload;
            events.push_back({*key, event_label(key->kind, shown)});
        }
    }
    return events;
}

bool triggered_by(const EventKey& event, const Script& script, const Actor& owner) {
    const auto key = event_key(script, owner);
    if (!key) return false;
    if (*key == event) return true;
    // "when any key pressed" also runs for a specific key.
    return event.kind == EventKind::KeyPressed && key->kind == EventKind::KeyPressed && key->payload == "any";
}

bool triggers(const Block& statement, const Script& script) {
    if (!statement.is_trigger() || !script.event) return false;
    const auto target = statement.trigger_target();
    if (!target) return false;
    const bool broadcast = statement.kind == StmtKind::Broadcast || statement.kind == StmtKind::BroadcastAndWait;
    const EventKind wanted = broadcast ? EventKind::ReceiveMessage : EventKind::BackdropSwitchedTo;
    return script.event->kind == wanted && lower(script.event->payload) == lower(*target);
}

// ------------------------------------------------------------------- emitter

class Emitter {
public:
    Emitter(const Project& project, const FinderConfig& config) : project_(project), config_(config) {
        config_.validate();
    }

    [[nodiscard]] const Project& project() const { return project_; }
    /// Seed for choices made outside a single question.
    [[nodiscard]] std::uint64_t seed_for(std::string_view what) const {
        return mix_seed(config_.master_seed ^ stable_hash(project_.id + "|" + std::string(what)));
    }

    [[nodiscard]] bool wants(K kind) const {
        if (!config_.enabled(kind)) return false;
        if (!config_.max_instances_per_kind) return true;
        const auto it = counts_.find(kind);
        return it == counts_.end() || it->second < *config_.max_instances_per_kind;
    }

    /// New question with id, seed, classification and default snippet set.
    Question start(K kind, QuestionTarget target, std::string_view discriminator) {
        std::string basis = project_.id + "|" + std::to_string(kind_number(kind)) + "|" +
                            scope_key(target.scope) + "|";
        for (const std::string& h : target.highlights) basis += h + ",";
        basis += "|";
        basis += discriminator;
        const std::size_t ordinal = ordinals_[basis]++;
        basis += "#" + std::to_string(ordinal);
        const std::uint64_t h = stable_hash(basis);

        Question q;
        std::array<char, 20> hex{};
        std::snprintf(hex.data(), hex.size(), "%016llx", static_cast<unsigned long long>(h));
        q.id = std::string("q") + hex.data();
        q.kind = kind;
        const Classification c = classify(kind);
        q.cell = c.cell;
        q.answer_kind = c.answer;
        q.seed = mix_seed(config_.master_seed ^ h);
        q.target = std::move(target);
        q.snippet = render(q.target, project_);
        q.prompt = std::string(prompt_template(kind));
        return q;
    }

    void emit(Question q, const std::map<std::string, std::string>& vars = {}) {
        if (!wants(q.kind)) return;
        q.prompt = instantiate_prompt(q.prompt, vars);
        ++counts_[q.kind];
        out_.push_back(std::move(q));
    }

    /// Attach choices; returns false when there are not enough.
    bool attach(Question& q, std::vector<RenderedSnippet> correct, const DistractorPool& pool,
                const std::set<Eligibility>& preferred = {}, bool shuffle = true) const {
        auto set = assemble_choices(std::move(correct), pool, preferred, q.seed, config_.max_choices, shuffle);
        if (!set) return false;
        q.choices = std::move(set->choices);
        q.key = ChoiceAnswer{std::move(set->correct)};
        return true;
    }

    std::vector<Question> take() { return std::move(out_); }

private:
    static std::string scope_key(const ScopeRef& s) {
        switch (s.kind) {
            case ScopeRef::Kind::Project: return "project";
            case ScopeRef::Kind::Actor: return "actor:" + s.actor;
            case ScopeRef::Kind::Script: return "script:" + s.actor + ":" + s.id;
            case ScopeRef::Kind::Procedure: return "procedure:" + s.actor + ":" + s.id;
        }
        return {};
    }

    const Project& project_;
    FinderConfig config_;
    std::map<std::string, std::size_t> ordinals_;
    std::map<K, std::size_t> counts_;
    std::vector<Question> out_;
};

QuestionTarget unit_target(const Unit& u, std::vector<std::string> highlights = {}) {
    return {u.scope(), std::move(highlights)};
}

const QuestionTarget kProjectTarget{};

// ---------------------------------------------------------------- atom kinds

DistractorPool code_pool(const UnitFacts& f, const std::set<std::string>& excluded, bool with_numbers) {
    DistractorPool pool;
    for (const StmtInfo& s : f.statements) {
        if (!s.block->is_control() && usable_statement(*s.block)) {
            pool.add(snippet_of(*s.block), Eligibility::Statement);
        }
    }
    for (const ExprInfo& e : f.expressions) {
        if (excluded.contains(e.expr->id())) continue;
        if (e.expr->is_boolean()) {
            pool.add(snippet_of(*e.expr), Eligibility::BooleanBlock);
        } else if (with_numbers && is_number_literal(*e.expr)) {
            pool.add(snippet_of(*e.expr), Eligibility::NumberLiteral);
        }
    }
    return pool;
}

void block_controlling_loop(Emitter& em, const Unit& u, const UnitFacts& f) {
    for (const StmtInfo& s : f.statements) {
        const Block& loop = *s.block;
        if (loop.kind != StmtKind::RepeatTimes && loop.kind != StmtKind::RepeatUntil) continue;
        const Expression* key = loop.condition();
        if (key == nullptr || key->empty() || !em.wants(K::BlockControllingLoop)) continue;
        const DistractorPool pool = code_pool(f, subtree_ids(*key), true);
        const std::set<Eligibility> preferred = {key->is_boolean() ? Eligibility::BooleanBlock
                                                                   : Eligibility::NumberLiteral};
        Question q = em.start(K::BlockControllingLoop, unit_target(u, {loop.id}), "");
        if (em.attach(q, {snippet_of(*key)}, pool, preferred)) em.emit(std::move(q));
    }
}

void element_in_loop_condition(Emitter& em, const Unit& u, const UnitFacts& f) {
    if (!em.wants(K::ElementInLoopCondition)) return;
    std::vector<RenderedSnippet> correct;
    DistractorPool pool;
    for (const ExprInfo& e : f.expressions) {
        if (!is_element(*e.expr)) continue;
        if (e.in_loop_condition) {
            correct.push_back(snippet_of(*e.expr));
        } else {
            pool.add(snippet_of(*e.expr), Eligibility::Element);
        }
    }
    drop_ambiguous(correct, pool);
    Question q = em.start(K::ElementInLoopCondition, unit_target(u), "");
    if (em.attach(q, std::move(correct), pool)) em.emit(std::move(q));
}

void if_block_condition(Emitter& em, const Unit& u, const UnitFacts& f) {
    for (const StmtInfo& s : f.statements) {
        const Block& b = *s.block;
        if (!b.is_if()) continue;
        const Expression* key = b.condition();
        if (key == nullptr || key->empty() || !em.wants(K::IfBlockCondition)) continue;
        const DistractorPool pool = code_pool(f, subtree_ids(*key), false);
        Question q = em.start(K::IfBlockCondition, unit_target(u, {b.id}), "");
        if (em.attach(q, {snippet_of(*key)}, pool, {Eligibility::BooleanBlock})) em.emit(std::move(q));
    }
}

void variable_in_script(Emitter& em, const Unit& u, const UnitFacts& f) {
    if (!em.wants(K::VariableInScript)) return;
    std::vector<std::string> names;
    auto add = [&](const std::string& n) {
        if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    };
    for (const StmtInfo& s : f.statements) {
        if (auto n = s.block->variable_name()) add(*n);
    }
    for (const ExprInfo& e : f.expressions) {
        if (const auto* v = e.expr->as<VariableReporter>(); v != nullptr && !v->list) add(v->name);
    }
    if (names.empty()) return;
    std::sort(names.begin(), names.end());
    Question q = em.start(K::VariableInScript, unit_target(u), "");
    q.key = StringsAnswer{std::move(names)};
    em.emit(std::move(q));
}

void set_variable(Emitter& em, const Unit& u, const UnitFacts& f) {
    for (const StmtInfo& s : f.statements) {
        const Block& b = *s.block;
        if (b.kind != StmtKind::SetVariable || !em.wants(K::SetVariable)) continue;
        const auto name = b.variable_name();
        const Expression* value = b.input("VALUE");
        if (!name || value == nullptr) continue;
        std::optional<std::string> literal;
        if (const auto* n = value->as<NumberLiteral>()) literal = n->value;
        if (const auto* t = value->as<StringLiteral>()) literal = t->value;
        if (!literal) continue;
        Question q = em.start(K::SetVariable, unit_target(u, {b.id}), "");
        q.key = StringsAnswer{{*literal}};
        em.emit(std::move(q), {{"variable", "(" + *name + ")"}});
    }
}

void purpose_of_conditions(Emitter& em, const Unit& u, const UnitFacts& f) {
    for (const K kind : {K::PurposeOfIfCondition, K::PurposeOfLoopCondition}) {
        for (const StmtInfo& s : f.statements) {
            const Block& b = *s.block;
            const bool match = kind == K::PurposeOfIfCondition ? b.is_if() : b.kind == StmtKind::RepeatUntil;
            const Expression* c = b.condition();
            if (!match || c == nullptr || c->empty() || !em.wants(kind)) continue;
            em.emit(em.start(kind, unit_target(u, {b.id}), ""));
        }
    }
}

void atom_questions(Emitter& em, const Unit& u) {
    const UnitFacts f = analyze(u.body());
    block_controlling_loop(em, u, f);
    element_in_loop_condition(em, u, f);
    if_block_condition(em, u, f);
    variable_in_script(em, u, f);
    set_variable(em, u, f);
    purpose_of_conditions(em, u, f);
}

// --------------------------------------------------------------- block kinds

void blocks_in_if(Emitter& em, const Unit& u, const UnitFacts& f) {
    if (!em.wants(K::BlocksInIfStatement)) return;
    const bool has_if = std::any_of(f.statements.begin(), f.statements.end(),
                                    [](const StmtInfo& s) { return s.block->is_if(); });
    if (!has_if) return;
    std::vector<RenderedSnippet> correct;
    DistractorPool pool;
    for (const StmtInfo& s : f.statements) {
        if (!usable_statement(*s.block)) continue;
        if (s.in_if) {
            correct.push_back(snippet_of(*s.block));
        } else if (!s.block->is_if()) {
            pool.add(snippet_of(*s.block), Eligibility::Statement);
        }
    }
    drop_ambiguous(correct, pool);
    Question q = em.start(K::BlocksInIfStatement, unit_target(u), "");
    if (em.attach(q, std::move(correct), pool)) em.emit(std::move(q));
}

void element_in_loop_body(Emitter& em, const Unit& u, const UnitFacts& f) {
    if (!em.wants(K::ElementInLoopBody)) return;
    std::vector<RenderedSnippet> correct;
    DistractorPool pool;
    for (const ExprInfo& e : f.expressions) {
        if (!is_element(*e.expr)) continue;
        if (e.in_loop_body) {
            correct.push_back(snippet_of(*e.expr));
        } else {
            pool.add(snippet_of(*e.expr), Eligibility::Element);
        }
    }
    drop_ambiguous(correct, pool);
    Question q = em.start(K::ElementInLoopBody, unit_target(u), "");
    if (em.attach(q, std::move(correct), pool)) em.emit(std::move(q));
}

void if_else_execution(Emitter& em, const Unit& u, const UnitFacts& f) {
    for (const StmtInfo& s : f.statements) {
        const Block& b = *s.block;
        if (b.kind != StmtKind::IfElse || b.substacks.size() < 2 || !em.wants(K::IfElseExecution)) continue;
        const Expression* c = b.condition();
        if (c == nullptr || c->empty() || b.substacks[0].empty() || b.substacks[1].empty()) continue;
        RenderedSnippet then_branch = snippet_of_stack(b.substacks[0], "then branch");
        RenderedSnippet else_branch = snippet_of_stack(b.substacks[1], "else branch");
        if (then_branch.scratchblocks == else_branch.scratchblocks) continue;
        Question q = em.start(K::IfElseExecution, unit_target(u, {b.id}), "");
        const bool truth = coin_from_seed(q.seed);
        q.choices = {std::move(then_branch), std::move(else_branch)};
        q.key = ChoiceAnswer{{truth ? 0U : 1U}};
        em.emit(std::move(q), {{"condition", render_expression(*c)}, {"truth", truth ? "true" : "false"}});
    }
}

void if_then_execution(Emitter& em, const Unit& u, const UnitFacts& f) {
    for (const StmtInfo& s : f.statements) {
        const Block& b = *s.block;
        if (b.kind != StmtKind::IfThen || b.substacks.empty() || !em.wants(K::IfThenExecution)) continue;
        const Expression* c = b.condition();
        if (c == nullptr || c->empty() || b.substacks[0].empty()) continue;
        Question q = em.start(K::IfThenExecution, unit_target(u, {b.id}), "");
        std::mt19937_64 rng(q.seed);
        const bool truth = coin_from_seed(q.seed);
        const Block& chosen = b.substacks[0][rng() % b.substacks[0].size()];
        q.target.highlights.push_back(chosen.id);
        q.snippet = render(q.target, em.project());
        q.key = YesNoAnswer{truth};
        em.emit(std::move(q), {{"statement", bracketed(chosen)}, {"truth", truth ? "true" : "false"}});
    }
}

/// Non-negative integer count, canonical text.
std::optional<std::string> repeat_count(const Expression& e) {
    const auto* n = e.as<NumberLiteral>();
    if (n == nullptr) return std::nullopt;
    const std::string canonical = canonical_number(n->value);
    long long value = 0;
    const auto [end, ec] = std::from_chars(canonical.data(), canonical.data() + canonical.size(), value);
    if (ec != std::errc{} || end != canonical.data() + canonical.size() || value < 0) return std::nullopt;
    return canonical;
}

void repeat_times_execution(Emitter& em, const Unit& u, const UnitFacts& f) {
    for (const StmtInfo& s : f.statements) {
        const Block& b = *s.block;
        if (b.kind != StmtKind::RepeatTimes || s.loop_depth != 0 || b.substacks.empty() ||
            b.substacks[0].empty() || !em.wants(K::RepeatTimesExecution)) {
            continue;
        }
        const Expression* times = b.condition();
        const auto count = times != nullptr ? repeat_count(*times) : std::nullopt;
        if (!count) continue;
        const Block& first = b.substacks[0].front();
        Question q = em.start(K::RepeatTimesExecution, unit_target(u, {b.id, first.id}), "");
        q.key = NumberAnswer{*count};
        em.emit(std::move(q), {{"statement", bracketed(first)}});
    }
}

void loop_purpose(Emitter& em, const Unit& u, const UnitFacts& f, K kind, StmtKind loop) {
    for (const StmtInfo& s : f.statements) {
        if (s.block->kind == loop && em.wants(kind)) {
            em.emit(em.start(kind, unit_target(u, {s.block->id}), ""));
        }
    }
}

void unit_purposes(Emitter& em, const Unit& u, const UnitFacts& f) {
    loop_purpose(em, u, f, K::PurposeOfForeverLoop, StmtKind::Forever);
    if (u.procedure != nullptr && em.wants(K::PurposeOfMyBlock)) {
        em.emit(em.start(K::PurposeOfMyBlock, unit_target(u), ""));
    }
    loop_purpose(em, u, f, K::PurposeOfRepeatTimesLoop, StmtKind::RepeatTimes);
    loop_purpose(em, u, f, K::PurposeOfRepeatUntilLoop, StmtKind::RepeatUntil);
    if (u.script != nullptr && em.wants(K::PurposeOfScript)) {
        em.emit(em.start(K::PurposeOfScript, unit_target(u), ""));
    }
}

void block_questions(Emitter& em, const Unit& u) {
    const UnitFacts f = analyze(u.body());
    blocks_in_if(em, u, f);
    element_in_loop_body(em, u, f);
    if_else_execution(em, u, f);
    if_then_execution(em, u, f);
    repeat_times_execution(em, u, f);
    unit_purposes(em, u, f);
}

// ------------------------------------------------------------- project kinds

void variable_purposes(Emitter& em) {
    if (!em.wants(K::PurposeOfVariable)) return;
    const Project& p = em.project();
    std::vector<std::pair<std::string, std::string>> seen;  // (owner, name)
    auto note = [&](std::string owner, std::string name) {
        std::pair<std::string, std::string> key{std::move(owner), std::move(name)};
        if (std::find(seen.begin(), seen.end(), key) == seen.end()) seen.push_back(std::move(key));
    };
    for (const Unit& u : units_of(p)) {
        for_each_block(u.body(), [&](const Block& b) {
            if (auto n = b.variable_name()) note(p.variable_owner(*u.actor, *n), *n);
            for (const Input& in : b.inputs) {
                for_each_expression(in.value, [&](const Expression& e) {
                    if (const auto* v = e.as<VariableReporter>(); v != nullptr && !v->list) note(v->owner, v->name);
                });
            }
        });
    }
    for (const auto& [owner, name] : seen) {
        em.emit(em.start(K::PurposeOfVariable, kProjectTarget, owner + "/" + name), {{"variable", "(" + name + ")"}});
    }
}

struct Located {
    const Block* block;
    Unit unit;
};

std::vector<Located> statements_of(const std::vector<Unit>& units) {
    std::vector<Located> out;
    for (const Unit& u : units) {
        for_each_block(u.body(), [&](const Block& b) { out.push_back({&b, u}); });
    }
    return out;
}

void my_block_definition(Emitter& em, const std::vector<Unit>& units, const std::vector<Located>& stmts) {
    for (const Unit& def : units) {
        if (def.procedure == nullptr || !em.wants(K::MyBlockDefinition)) continue;
        const auto call = std::find_if(stmts.begin(), stmts.end(), [&](const Located& l) {
            const Field* code = l.block->field("PROCCODE");
            return l.unit.actor == def.actor && l.block->kind == StmtKind::ProcedureCall && code != nullptr &&
                   code->value == def.procedure->signature;
        });
        if (call == stmts.end()) continue;
        DistractorPool pool;
        for (const Unit& other : units) {
            if (other.procedure != def.procedure) pool.add(other.as_choice(), other.tag());
        }
        Question q = em.start(K::MyBlockDefinition, unit_target(call->unit, {call->block->id}),
                              def.actor->name + "/" + def.procedure->signature);
        if (em.attach(q, {def.as_choice()}, pool, {Eligibility::ProcedureDefinition})) {
            em.emit(std::move(q), {{"myblock", bracketed(*call->block)}});
        }
    }
}

void script_to_set_variable(Emitter& em, const std::vector<Unit>& units) {
    const Project& p = em.project();
    std::vector<std::pair<std::string, std::string>> vars;  // (owner, name) in first-set order
    std::map<std::pair<std::string, std::string>, std::set<std::size_t>> setters;
    for (std::size_t i = 0; i < units.size(); ++i) {
        for_each_block(units[i].body(), [&](const Block& b) {
            if (b.kind != StmtKind::SetVariable) return;
            const auto name = b.variable_name();
            if (!name) return;
            std::pair<std::string, std::string> key{p.variable_owner(*units[i].actor, *name), *name};
            if (!setters.contains(key)) vars.push_back(key);
            setters[key].insert(i);
        });
    }
    for (const auto& var : vars) {
        if (!em.wants(K::ScriptToSetVariable)) return;
        std::vector<RenderedSnippet> correct;
        DistractorPool pool;
        const auto& mine = setters[var];
        for (std::size_t i = 0; i < units.size(); ++i) {
            if (mine.contains(i)) {
                correct.push_back(units[i].as_choice());
            }
        }
        for (std::size_t i = 0; i < units.size(); ++i) {
            if (!mine.contains(i)) pool.add(units[i].as_choice(), units[i].tag());
        }
        drop_ambiguous(correct, pool);
        Question q = em.start(K::ScriptToSetVariable, kProjectTarget, var.first + "/" + var.second);
        if (em.attach(q, std::move(correct), pool)) em.emit(std::move(q), {{"variable", "(" + var.second + ")"}});
    }
}

void statement_triggers_event(Emitter& em, const std::vector<Unit>& units, const std::vector<Located>& stmts) {
    for (const Unit& u : units) {
        if (u.script == nullptr || !u.script->event || !em.wants(K::StatementTriggersEvent)) continue;
        const EventKind kind = u.script->event->kind;
        if (kind != EventKind::ReceiveMessage && kind != EventKind::BackdropSwitchedTo) continue;
        std::vector<RenderedSnippet> correct;
        DistractorPool pool;
        DistractorPool fallback;
        for (const Located& l : stmts) {
            if (triggers(*l.block, *u.script)) {
                correct.push_back(snippet_of(*l.block));
            } else if (l.block->is_trigger()) {
                pool.add(snippet_of(*l.block), Eligibility::TriggerStatement);
            } else if (!l.block->is_control() && usable_statement(*l.block)) {
                fallback.add(snippet_of(*l.block), Eligibility::Statement);
            }
        }
        if (correct.empty()) continue;
        for (auto& c : fallback.candidates) pool.add(std::move(c.snippet), c.tag);
        // Identical statements in different places are one choice.
        std::vector<RenderedSnippet> merged;
        for (RenderedSnippet& c : correct) {
            const auto same = std::find_if(merged.begin(), merged.end(), [&](const RenderedSnippet& m) {
                return m.scratchblocks == c.scratchblocks;
            });
            if (same == merged.end()) {
                merged.push_back(std::move(c));
            } else {
                same->source_block_ids.insert(same->source_block_ids.end(), c.source_block_ids.begin(),
                                              c.source_block_ids.end());
            }
        }
        Question q = em.start(K::StatementTriggersEvent, unit_target(u, {u.script->event->id}), "");
        if (em.attach(q, std::move(merged), pool, {Eligibility::TriggerStatement})) em.emit(std::move(q));
    }
}

void scripts_triggered_by_event(Emitter& em) {
    const Project& p = em.project();
    for (const EventInfo& ev : event_universe(p)) {
        if (!em.wants(K::ScriptsTriggeredByEvent)) return;
        std::size_t count = 0;
        for (const Actor* a : p.actors()) {
            for (const Script& s : a->scripts) count += triggered_by(ev.key, s, *a) ? 1 : 0;
        }
        Question q = em.start(K::ScriptsTriggeredByEvent, kProjectTarget, ev.label);
        q.key = NumberAnswer{std::to_string(count)};
        em.emit(std::move(q), {{"event", ev.label}});
    }
}

void scripts_triggered_by_statement(Emitter& em, const std::vector<Unit>& units,
                                    const std::vector<Located>& stmts) {
    for (const Located& l : stmts) {
        if (!l.block->is_trigger() || !em.wants(K::ScriptsTriggeredByStatement)) continue;
        std::vector<RenderedSnippet> correct;
        DistractorPool pool;
        for (const Unit& u : units) {
            if (u.script != nullptr && triggers(*l.block, *u.script)) {
                correct.push_back(u.as_choice());
            }
        }
        if (correct.empty()) continue;
        for (const Unit& u : units) {
            if (u.script == nullptr || !triggers(*l.block, *u.script)) pool.add(u.as_choice(), u.tag());
        }
        drop_ambiguous(correct, pool);
        Question q = em.start(K::ScriptsTriggeredByStatement, unit_target(l.unit, {l.block->id}), "");
        if (em.attach(q, std::move(correct), pool, {Eligibility::Script})) {
            em.emit(std::move(q), {{"statement", bracketed(*l.block)}});
        }
    }
}

void purpose_of_broadcast(Emitter& em, const std::vector<Located>& stmts) {
    std::set<std::string> seen;
    for (const Located& l : stmts) {
        if (l.block->kind != StmtKind::Broadcast && l.block->kind != StmtKind::BroadcastAndWait) continue;
        const auto message = l.block->trigger_target();
        if (!message || !seen.insert(lower(*message)).second || !em.wants(K::PurposeOfBroadcast)) continue;
        em.emit(em.start(K::PurposeOfBroadcast, unit_target(l.unit, {l.block->id}), lower(*message)));
    }
}

// ------------------------------------------------------------- macro kinds

void scripts_counts(Emitter& em) {
    const Project& p = em.project();
    if (p.script_count() == 0) return;
    for (const Actor* a : p.actors()) {
        if (!em.wants(K::ScriptsForActor)) break;
        Question q = em.start(K::ScriptsForActor, {{ScopeRef::Kind::Actor, a->name, ""}, {}}, "");
        q.key = NumberAnswer{std::to_string(a->scripts.size())};
        em.emit(std::move(q), {{"actor", a->name}});
    }
    if (em.wants(K::ScriptsInProgram)) {
        Question q = em.start(K::ScriptsInProgram, kProjectTarget, "");
        q.key = NumberAnswer{std::to_string(p.script_count())};
        em.emit(std::move(q));
    }
}

void variable_for_actor(Emitter& em) {
    const Project& p = em.project();
    for (const Actor& sprite : p.sprites) {
        for (const Variable& v : sprite.local_variables) {
            if (!em.wants(K::VariableForActor)) return;
            DistractorPool pool;
            for (const Actor* a : p.actors()) {
                if (a != &sprite) pool.add({a->name, a->name, {}}, Eligibility::ActorName);
            }
            Question q = em.start(K::VariableForActor, kProjectTarget, sprite.name + "/" + v.name);
            if (em.attach(q, {{sprite.name, sprite.name, {}}}, pool)) {
                em.emit(std::move(q), {{"variable", "(" + v.name + ")"}});
            }
        }
    }
}

void execution_order_different_actors(Emitter& em, const std::vector<EventInfo>& events) {
    const Project& p = em.project();
    for (const EventInfo& ev : events) {
        if (!em.wants(K::ScriptExecutionOrderDifferentActors)) return;
        std::vector<std::pair<const Actor*, const Script*>> firsts;  // layer order
        for (const Actor& sprite : p.sprites) {
            const auto s = std::find_if(sprite.scripts.begin(), sprite.scripts.end(),
                                        [&](const Script& x) { return triggered_by(ev.key, x, sprite); });
            if (s != sprite.scripts.end()) firsts.emplace_back(&sprite, &*s);
        }
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < firsts.size(); ++i) {
            for (std::size_t j = i + 1; j < firsts.size(); ++j) {
                // Identical code would give indistinguishable choices.
                if (render_script(*firsts[i].second) != render_script(*firsts[j].second)) pairs.emplace_back(i, j);
            }
        }
        if (pairs.empty()) continue;
        std::mt19937_64 rng(em.seed_for("pairs|" + ev.label));
        sample_in_place(pairs, kMaxActorPairsPerEvent, rng);
        std::sort(pairs.begin(), pairs.end());
        for (const auto& [i, j] : pairs) {
            const auto& [back, back_script] = firsts[i];
            const auto& [front, front_script] = firsts[j];
            Question q = em.start(K::ScriptExecutionOrderDifferentActors, kProjectTarget,
                                  ev.label + "/" + back->name + "/" + front->name);
            RenderedSnippet first = snippet_of(*back_script, *back);
            RenderedSnippet second = snippet_of(*front_script, *front);
            first.label = "first script (" + back->name + ")";
            second.label = "second script (" + front->name + ")";
            q.choices = {std::move(first), std::move(second)};
            // The front-most sprite's script runs first.
            q.key = ChoiceAnswer{{1}};
            em.emit(std::move(q), {{"actor1", back->name}, {"actor2", front->name}, {"event", ev.label}});
        }
    }
}

void execution_order_same_actor(Emitter& em, const std::vector<EventInfo>& events) {
    const Project& p = em.project();
    for (const EventInfo& ev : events) {
        for (const Actor* a : p.actors()) {
            if (!em.wants(K::ScriptExecutionOrderSameActor)) return;
            std::vector<const Script*> matching;
            for (const Script& s : a->scripts) {
                if (triggered_by(ev.key, s, *a)) matching.push_back(&s);
            }
            if (matching.size() < 2) continue;
            Question q =
                em.start(K::ScriptExecutionOrderSameActor, {{ScopeRef::Kind::Actor, a->name, ""}, {}}, ev.label);
            for (const Script* s : matching) {
                if (!q.snippet.scratchblocks.empty()) q.snippet.scratchblocks += "\n\n";
                q.snippet.scratchblocks += render_script(*s);
                q.snippet.source_block_ids.push_back(s->id);
            }
            q.snippet.label = "scripts of " + a->name;
            q.key = YesNoAnswer{false};
            em.emit(std::move(q), {{"event", ev.label}});
        }
    }
}

void purpose_of_program(Emitter& em) {
    if (em.project().script_count() > 0 && em.wants(K::PurposeOfProgram)) {
        em.emit(em.start(K::PurposeOfProgram, kProjectTarget, ""));
    }
}

void relation_questions(Emitter& em) {
    const std::vector<Unit> units = units_of(em.project());
    const std::vector<Located> stmts = statements_of(units);
    my_block_definition(em, units, stmts);
    script_to_set_variable(em, units);
    statement_triggers_event(em, units, stmts);
    scripts_triggered_by_event(em);
    scripts_triggered_by_statement(em, units, stmts);
    purpose_of_broadcast(em, stmts);
}

void macro_questions(Emitter& em) {
    const std::vector<EventInfo> events = event_universe(em.project());
    scripts_counts(em);
    variable_for_actor(em);
    execution_order_different_actors(em, events);
    execution_order_same_actor(em, events);
    purpose_of_program(em);
}

}  // namespace

// ------------------------------------------------------------------ public

std::set<QuestionKind> FinderConfig::all_kinds() {
    const auto& kinds = all_question_kinds();
    return {kinds.begin(), kinds.end()};
}

void FinderConfig::validate() const {
    if (max_choices < kMinChoices || max_choices > kMaxChoicesLimit) {
        throw std::invalid_argument("max_choices must be between " + std::to_string(kMinChoices) + " and " +
                                    std::to_string(kMaxChoicesLimit) + ", got " + std::to_string(max_choices));
    }
    if (max_instances_per_kind && *max_instances_per_kind == 0) {
        throw std::invalid_argument("max_instances_per_kind must be positive");
    }
}

void DistractorPool::add(RenderedSnippet snippet, Eligibility tag) {
    if (!contains(snippet.scratchblocks)) candidates.push_back({std::move(snippet), tag});
}

bool DistractorPool::contains(std::string_view scratchblocks) const {
    return std::any_of(candidates.begin(), candidates.end(),
                       [&](const Candidate& c) { return c.snippet.scratchblocks == scratchblocks; });
}

std::optional<ChoiceSet> assemble_choices(std::vector<RenderedSnippet> correct, const DistractorPool& pool,
                                          const std::set<Eligibility>& preferred, std::uint64_t seed,
                                          std::size_t max_choices, bool shuffle) {
    std::vector<RenderedSnippet> distinct;
    for (RenderedSnippet& c : correct) {
        const bool dup = std::any_of(distinct.begin(), distinct.end(), [&](const RenderedSnippet& d) {
            return d.scratchblocks == c.scratchblocks;
        });
        if (!dup) distinct.push_back(std::move(c));
    }
    std::vector<const RenderedSnippet*> first;
    std::vector<const RenderedSnippet*> rest;
    for (const auto& cand : pool.candidates) {
        const bool clash = std::any_of(distinct.begin(), distinct.end(), [&](const RenderedSnippet& d) {
            return d.scratchblocks == cand.snippet.scratchblocks;
        });
        if (clash) continue;
        (preferred.contains(cand.tag) ? first : rest).push_back(&cand.snippet);
    }
    if (distinct.empty() || first.size() + rest.size() == 0 || max_choices < kMinChoices) {
        return std::nullopt;
    }
    std::mt19937_64 rng(seed);
    sample_in_place(distinct, max_choices - 1, rng);
    const std::size_t slots = max_choices - distinct.size();
    sample_in_place(first, slots, rng);
    sample_in_place(rest, slots - first.size(), rng);

    std::vector<std::pair<RenderedSnippet, bool>> all;
    for (RenderedSnippet& c : distinct) all.emplace_back(std::move(c), true);
    for (const auto* d : first) all.emplace_back(*d, false);
    for (const auto* d : rest) all.emplace_back(*d, false);
    if (shuffle) shuffle_in_place(all, rng);

    ChoiceSet set;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i].second) set.correct.push_back(i);
        set.choices.push_back(std::move(all[i].first));
    }
    return set;
}

bool coin_from_seed(std::uint64_t seed) noexcept { return (mix_seed(seed) & 1U) != 0; }

std::vector<Question> find_atom_questions(const Script& script, const Actor& owner, const Project& project,
                                          const FinderConfig& config) {
    Emitter em(project, config);
    atom_questions(em, {&owner, &script, nullptr});
    return em.take();
}

std::vector<Question> find_atom_questions(const ProcedureDefinition& procedure, const Actor& owner,
                                          const Project& project, const FinderConfig& config) {
    Emitter em(project, config);
    atom_questions(em, {&owner, nullptr, &procedure});
    return em.take();
}

std::vector<Question> find_block_questions(const Script& script, const Actor& owner, const Project& project,
                                           const FinderConfig& config) {
    Emitter em(project, config);
    block_questions(em, {&owner, &script, nullptr});
    return em.take();
}

std::vector<Question> find_block_questions(const ProcedureDefinition& procedure, const Actor& owner,
                                           const Project& project, const FinderConfig& config) {
    Emitter em(project, config);
    block_questions(em, {&owner, nullptr, &procedure});
    return em.take();
}

std::vector<Question> find_variable_questions(const Project& project, const FinderConfig& config) {
    Emitter em(project, config);
    variable_purposes(em);
    return em.take();
}

std::vector<Question> find_relation_questions(const Project& project, const FinderConfig& config) {
    Emitter em(project, config);
    relation_questions(em);
    return em.take();
}

std::vector<Question> find_macro_questions(const Project& project, const FinderConfig& config) {
    Emitter em(project, config);
    macro_questions(em);
    return em.take();
}

QuestionSet generate_questions(const Project& project, const FinderConfig& config) {
    Emitter em(project, config);
    for (const Unit& u : units_of(project)) {
        atom_questions(em, u);
        block_questions(em, u);
    }
    variable_purposes(em);
    relation_questions(em);
    macro_questions(em);
    QuestionSet set;
    set.project_id = project.id;
    set.master_seed = config.master_seed;
    set.questions = em.take();
    return set;
}

}  // namespace qlc
