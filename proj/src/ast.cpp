#include "qlc/ast.hpp"

#include <algorithm>

namespace qlc {

std::string Expression::id() const {
    return std::visit(
        [](const auto& n) -> std::string {
            if constexpr (std::is_same_v<std::decay_t<decltype(n)>, EmptySlot>) {
                return {};
            } else {
                return n.id;
            }
        },
        node);
}

const std::vector<Expression>& Expression::children() const {
    static const std::vector<Expression> kNone;
    if (const auto* call = std::get_if<BooleanExpr>(&node)) return call->operands;
    if (const auto* call = std::get_if<NumericReporter>(&node)) return call->operands;
    if (const auto* call = std::get_if<AttributeReporter>(&node)) return call->operands;
    return kNone;
}

const Expression* Block::input(std::string_view name) const {
    const auto it = std::find_if(inputs.begin(), inputs.end(),
                                 [&](const Input& in) { return in.name == name; });
    return it == inputs.end() ? nullptr : &it->value;
}

const Field* Block::field(std::string_view name) const {
    const auto it = std::find_if(fields.begin(), fields.end(),
                                 [&](const Field& f) { return f.name == name; });
    return it == fields.end() ? nullptr : &*it;
}

const Expression* Block::condition() const {
    switch (kind) {
        case StmtKind::RepeatTimes:
            return input("TIMES");
        case StmtKind::RepeatUntil:
        case StmtKind::IfThen:
        case StmtKind::IfElse:
            return input("CONDITION");
        default:
            return nullptr;
    }
}

bool Block::is_loop() const {
    return kind == StmtKind::RepeatTimes || kind == StmtKind::RepeatUntil || kind == StmtKind::Forever;
}

bool Block::is_if() const { return kind == StmtKind::IfThen || kind == StmtKind::IfElse; }

bool Block::is_control() const { return opcode.starts_with("control_"); }

bool Block::is_trigger() const {
    return kind == StmtKind::Broadcast || kind == StmtKind::BroadcastAndWait ||
           kind == StmtKind::SwitchBackdrop || kind == StmtKind::SwitchBackdropAndWait;
}

std::optional<std::string> Block::trigger_target() const {
    const Expression* slot = nullptr;
    if (kind == StmtKind::Broadcast || kind == StmtKind::BroadcastAndWait) {
        slot = input("BROADCAST_INPUT");
    } else if (kind == StmtKind::SwitchBackdrop || kind == StmtKind::SwitchBackdropAndWait) {
        slot = input("BACKDROP");
    }
    if (slot != nullptr) {
        if (const auto* menu = slot->as<MenuOption>()) {
            return menu->value;
        }
    }
    return std::nullopt;
}

std::optional<std::string> Block::variable_name() const {
    if (kind != StmtKind::SetVariable && kind != StmtKind::ChangeVariable) {
        return std::nullopt;
    }
    const Field* f = field("VARIABLE");
    return f == nullptr ? std::nullopt : std::optional<std::string>(f->value);
}

const ProcedureDefinition* Actor::procedure(std::string_view signature) const {
    const auto it = std::find_if(procedures.begin(), procedures.end(),
                                 [&](const ProcedureDefinition& p) { return p.signature == signature; });
    return it == procedures.end() ? nullptr : &*it;
}

std::vector<const Actor*> Project::actors() const {
    std::vector<const Actor*> all;
    all.reserve(sprites.size() + 1);
    all.push_back(&stage);
    for (const Actor& sprite : sprites) {
        all.push_back(&sprite);
    }
    return all;
}

const Actor* Project::actor(std::string_view name) const {
    for (const Actor* a : actors()) {
        if (a->name == name) {
            return a;
        }
    }
    return nullptr;
}

std::size_t Project::script_count() const {
    std::size_t n = stage.scripts.size();
    for (const Actor& sprite : sprites) {
        n += sprite.scripts.size();
    }
    return n;
}

std::string Project::variable_owner(const Actor& actor, std::string_view name, bool list) const {
    if (actor.is_stage()) {
        return {};
    }
    const auto& locals = list ? actor.local_lists : actor.local_variables;
    const bool local = std::any_of(locals.begin(), locals.end(),
                                   [&](const Variable& v) { return v.name == name; });
    return local ? actor.name : std::string{};
}

}  // namespace qlc
