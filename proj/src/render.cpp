#include "qlc/render.hpp"

#include <algorithm>
#include <sstream>

#include "opcodes.hpp"
#include "qlc/visitor.hpp"

namespace qlc {

namespace {

constexpr std::string_view kIndent = "    ";

std::string escape_text(std::string_view text, char close) {
    std::string out;
    for (const char c : text) {
        if (c == close || c == '\\') {
            out.push_back('\\');
        }
        out.push_back(c == '\n' ? ' ' : c);
    }
    return out;
}

std::string dropdown(std::string_view value) {
    return "[" + escape_text(detail::display_menu_value(value), ']') + " v]";
}

const Expression* operand(const ReporterCall& call, std::string_view slot) {
    for (std::size_t i = 0; i < call.slots.size(); ++i) {
        if (call.slots[i] == slot) return &call.operands[i];
    }
    return nullptr;
}

const Field* find_field(const std::vector<Field>& fields, std::string_view name) {
    const auto it = std::find_if(fields.begin(), fields.end(), [&](const Field& f) { return f.name == name; });
    return it == fields.end() ? nullptr : &*it;
}

std::string empty_slot(bool boolean) { return boolean ? "<>" : "()"; }

/// Fill a pattern; `input` renders an input slot by name.
template <typename InputFn>
std::string fill(std::string_view pattern, const std::vector<Field>& fields, std::string_view opcode,
                 InputFn&& input) {
    std::string out;
    for (const auto& token : detail::tokenize_pattern(pattern)) {
        switch (token.kind) {
            case detail::PatternToken::Kind::Text:
                out += token.text;
                break;
            case detail::PatternToken::Kind::Input: {
                const Expression* e = input(token.text);
                out += e != nullptr ? render_expression(*e)
                                    : empty_slot(detail::is_boolean_slot(opcode, token.text));
                break;
            }
            case detail::PatternToken::Kind::Field: {
                const Field* f = find_field(fields, token.text);
                out += dropdown(f != nullptr ? f->value : std::string{});
                break;
            }
        }
    }
    return out;
}

std::string render_call(const ReporterCall& call, bool boolean) {
    const char open = boolean ? '<' : '(';
    const char close = boolean ? '>' : ')';
    if (call.opcode == "argument_reporter_string_number" || call.opcode == "argument_reporter_boolean") {
        const Field* f = find_field(call.fields, "VALUE");
        return std::string(1, open) + (f != nullptr ? f->value : std::string{}) + " :: custom-arg" + close;
    }
    const detail::OpcodeInfo* info = detail::find_opcode(call.opcode);
    if (info == nullptr) {
        std::string out(1, open);
        out += call.opcode;
        for (const Expression& e : call.operands) {
            out += " " + render_expression(e);
        }
        return out + " :: extension" + close;
    }
    return std::string(1, open) +
           fill(info->pattern, call.fields, call.opcode,
                [&](std::string_view slot) { return operand(call, slot); }) +
           close;
}

/// "jump %s %b" with inputs -> "jump (10) <touching edge?>"; a null block
/// renders parameter placeholders instead.
std::string render_signature(std::string_view proccode, const std::vector<Input>* args,
                             const std::vector<Parameter>* params) {
    std::string out;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < proccode.size(); ++i) {
        const char c = proccode[i];
        if (c == '%' && i + 1 < proccode.size() &&
            (proccode[i + 1] == 's' || proccode[i + 1] == 'n' || proccode[i + 1] == 'b')) {
            const bool boolean = proccode[i + 1] == 'b';
            if (args != nullptr) {
                out += arg < args->size() ? render_expression((*args)[arg].value) : empty_slot(boolean);
            } else if (params != nullptr && arg < params->size()) {
                const std::string& name = (*params)[arg].name;
                out += boolean ? "<" + name + ">" : "(" + name + ")";
            } else {
                out += empty_slot(boolean);
            }
            ++arg;
            ++i;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

std::string statement_header(const Block& block) {
    if (block.kind == StmtKind::ProcedureCall) {
        const Field* code = block.field("PROCCODE");
        return render_signature(code != nullptr ? code->value : std::string{}, &block.inputs, nullptr);
    }
    const detail::OpcodeInfo* info = detail::find_opcode(block.opcode);
    if (info == nullptr || block.kind == StmtKind::Opaque) {
        return std::string(kUnsupportedBlock);
    }
    return fill(info->pattern, block.fields, block.opcode,
                [&](std::string_view slot) { return block.input(slot); });
}

bool highlighted(const Block& block, const HighlightSet& highlights) {
    if (highlights.empty()) return false;
    if (highlights.contains(block.id)) return true;
    bool hit = false;
    for (const Input& in : block.inputs) {
        for_each_expression(in.value, [&](const Expression& e) {
            if (!hit && highlights.contains(e.id())) hit = true;
        });
    }
    return hit;
}

class LineWriter {
public:
    void line(int depth, const std::string& text, bool mark) {
        if (!out_.empty()) out_.push_back('\n');
        for (int i = 0; i < depth; ++i) out_ += kIndent;
        out_ += text;
        if (mark) out_ += kHighlightMarker;
    }

    void stack(const std::vector<Block>& blocks, int depth, const HighlightSet& highlights, bool shallow) {
        for (const Block& b : blocks) {
            statement(b, depth, highlights, shallow);
        }
    }

    void statement(const Block& b, int depth, const HighlightSet& highlights, bool shallow) {
        const bool mark = highlighted(b, highlights);
        line(depth, statement_header(b), mark);
        if (b.substacks.empty()) {
            return;
        }
        // A highlighted C-block also marks its closing lines.
        const bool whole = highlights.contains(b.id);
        if (!shallow) stack(b.substacks[0], depth + 1, highlights, false);
        if (b.substacks.size() > 1) {
            line(depth, "else", whole);
            if (!shallow) stack(b.substacks[1], depth + 1, highlights, false);
        }
        line(depth, "end", whole);
    }

    std::string take() { return std::move(out_); }

private:
    std::string out_;
};

std::string first_line(std::string_view text) { return std::string(text.substr(0, text.find('\n'))); }

}  // namespace

std::string render_expression(const Expression& expression) {
    return std::visit(
        [](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, EmptySlot>) {
                return empty_slot(n.boolean);
            } else if constexpr (std::is_same_v<T, NumberLiteral>) {
                return "(" + escape_text(n.value, ')') + ")";
            } else if constexpr (std::is_same_v<T, StringLiteral>) {
                return "[" + escape_text(n.value, ']') + "]";
            } else if constexpr (std::is_same_v<T, MenuOption>) {
                return "(" + escape_text(detail::display_menu_value(n.value), ')') + " v)";
            } else if constexpr (std::is_same_v<T, VariableReporter>) {
                return "(" + escape_text(n.name, ')') + (n.list ? " :: list)" : ")");
            } else if constexpr (std::is_same_v<T, BooleanExpr>) {
                return render_call(n, true);
            } else {
                return render_call(n, false);
            }
        },
        expression.node);
}

std::string render_event(const Event& event) {
    const detail::OpcodeInfo* info = detail::find_opcode(event.opcode);
    if (info == nullptr || info->pattern.empty()) {
        return "when " + event.opcode + " :: hat";
    }
    return fill(info->pattern, event.fields, event.opcode, [&](std::string_view slot) -> const Expression* {
        for (const Input& in : event.inputs) {
            if (in.name == slot) return &in.value;
        }
        return nullptr;
    });
}

std::string render_statement(const Block& block, bool shallow) {
    LineWriter w;
    w.statement(block, 0, {}, shallow);
    return w.take();
}

std::string render_stack(const std::vector<Block>& stack, const HighlightSet& highlights) {
    LineWriter w;
    w.stack(stack, 0, highlights, false);
    return w.take();
}

std::string render_script(const Script& script, const HighlightSet& highlights) {
    LineWriter w;
    if (script.event) {
        bool mark = highlights.contains(script.event->id);
        for (const Input& in : script.event->inputs) {
            for_each_expression(in.value, [&](const Expression& e) {
                if (highlights.contains(e.id())) mark = true;
            });
        }
        w.line(0, render_event(*script.event), mark);
    }
    w.stack(script.body, 0, highlights, false);
    return w.take();
}

std::string render_procedure_header(const ProcedureDefinition& procedure) {
    return "define " + render_signature(procedure.signature, nullptr, &procedure.parameters);
}

std::string render_procedure(const ProcedureDefinition& procedure, const HighlightSet& highlights) {
    LineWriter w;
    w.line(0, render_procedure_header(procedure), highlights.contains(procedure.id));
    w.stack(procedure.body, 0, highlights, false);
    return w.take();
}

std::set<std::string> collect_ids(const std::vector<Block>& stack) {
    std::set<std::string> ids;
    for_each_block(stack, [&](const Block& b) {
        ids.insert(b.id);
        for (const Input& in : b.inputs) {
            for_each_expression(in.value, [&](const Expression& e) {
                if (auto id = e.id(); !id.empty()) ids.insert(std::move(id));
            });
        }
    });
    return ids;
}

RenderedSnippet render(const QuestionTarget& target, const Project& project) {
    if (target.scope.kind == ScopeRef::Kind::Project || target.scope.kind == ScopeRef::Kind::Actor) {
        if (target.scope.kind == ScopeRef::Kind::Actor && project.actor(target.scope.actor) == nullptr) {
            throw DanglingTarget("unknown actor '" + target.scope.actor + "'");
        }
        return {};
    }
    const Actor* actor = project.actor(target.scope.actor);
    if (actor == nullptr) {
        throw DanglingTarget("unknown actor '" + target.scope.actor + "'");
    }
    const HighlightSet highlights(target.highlights.begin(), target.highlights.end());
    auto check = [&](std::set<std::string> known) {
        for (const std::string& id : highlights) {
            if (!known.contains(id)) {
                throw DanglingTarget("highlighted id '" + id + "' is not part of " + target.scope.id);
            }
        }
    };
    if (target.scope.kind == ScopeRef::Kind::Script) {
        const auto it = std::find_if(actor->scripts.begin(), actor->scripts.end(),
                                     [&](const Script& s) { return s.id == target.scope.id; });
        if (it == actor->scripts.end()) {
            throw DanglingTarget("unknown script '" + target.scope.id + "'");
        }
        auto known = collect_ids(it->body);
        if (it->event) {
            known.insert(it->event->id);
            for (const Input& in : it->event->inputs) {
                for_each_expression(in.value, [&](const Expression& e) { known.insert(e.id()); });
            }
        }
        check(std::move(known));
        RenderedSnippet snippet = snippet_of(*it, *actor);
        snippet.scratchblocks = render_script(*it, highlights);
        snippet.source_block_ids = target.highlights;
        return snippet;
    }
    const ProcedureDefinition* proc = actor->procedure(target.scope.id);
    if (proc == nullptr) {
        throw DanglingTarget("unknown procedure '" + target.scope.id + "'");
    }
    auto known = collect_ids(proc->body);
    known.insert(proc->id);
    check(std::move(known));
    RenderedSnippet snippet = snippet_of(*proc, *actor);
    snippet.scratchblocks = render_procedure(*proc, highlights);
    snippet.source_block_ids = target.highlights;
    return snippet;
}

RenderedSnippet snippet_of(const Expression& expression) {
    RenderedSnippet s;
    s.scratchblocks = render_expression(expression);
    s.label = plain_label(s.scratchblocks);
    if (auto id = expression.id(); !id.empty()) s.source_block_ids.push_back(std::move(id));
    return s;
}

RenderedSnippet snippet_of(const Block& statement) {
    RenderedSnippet s;
    s.scratchblocks = render_statement(statement, true);
    s.label = plain_label(s.scratchblocks);
    s.source_block_ids.push_back(statement.id);
    return s;
}

RenderedSnippet snippet_of(const Script& script, const Actor& owner) {
    RenderedSnippet s;
    s.scratchblocks = render_script(script);
    s.label = "script of " + owner.name + ": " + plain_label(s.scratchblocks);
    s.source_block_ids.push_back(script.id);
    return s;
}

RenderedSnippet snippet_of(const ProcedureDefinition& procedure, const Actor& owner) {
    RenderedSnippet s;
    s.scratchblocks = render_procedure(procedure);
    s.label = "definition in " + owner.name + ": " + plain_label(s.scratchblocks);
    s.source_block_ids.push_back(procedure.id);
    return s;
}

RenderedSnippet snippet_of_stack(const std::vector<Block>& stack, std::string label) {
    RenderedSnippet s;
    s.scratchblocks = render_stack(stack);
    s.label = std::move(label);
    for (const Block& b : stack) s.source_block_ids.push_back(b.id);
    return s;
}

std::string plain_label(std::string_view scratchblocks) {
    const std::string line = first_line(scratchblocks);
    std::string out;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == ' ' && i + 2 < line.size() + 1 && line.compare(i, 2, " v") == 0 &&
            (i + 2 == line.size() || line[i + 2] == ']' || line[i + 2] == ')')) {
            ++i;  // drop dropdown arrow
            continue;
        }
        if (c == '(' || c == ')' || c == '[' || c == ']' || c == '<' || c == '>') {
            // keep comparison operators that stand alone
            if ((c == '<' || c == '>') && i > 0 && i + 1 < line.size() && line[i - 1] == ' ' &&
                line[i + 1] == ' ') {
                out.push_back(c);
            }
            continue;
        }
        out.push_back(c);
    }
    std::string collapsed;
    for (const char c : out) {
        if (c == ' ' && (collapsed.empty() || collapsed.back() == ' ')) continue;
        collapsed.push_back(c);
    }
    while (!collapsed.empty() && collapsed.back() == ' ') collapsed.pop_back();
    constexpr std::size_t kMax = 60;
    if (collapsed.size() > kMax) {
        collapsed.resize(kMax - 3);
        collapsed += "...";
    }
    return collapsed.empty() ? std::string(first_line(scratchblocks)) : collapsed;
}

}  // namespace qlc
