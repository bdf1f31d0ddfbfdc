#include "fixtures.hpp"

#include <set>

#include "json.hpp"
#include "qlc/parse.hpp"
#include "zip_writer.hpp"

namespace fx {

using Json = nlohmann::ordered_json;

namespace {

B block(std::string opcode) {
    B b;
    b.opcode = std::move(opcode);
    return b;
}

B with(B b, std::string name, In value) {
    b.inputs.emplace_back(std::move(name), std::move(value));
    return b;
}

B field(B b, std::string name, std::string value) {
    b.fields.emplace_back(std::move(name), std::move(value));
    return b;
}

B c_block(std::string opcode, std::vector<Stack> subs) {
    B b = block(std::move(opcode));
    b.substacks = std::move(subs);
    return b;
}

std::string arg_id(const std::string& proccode, std::size_t i) { return "arg:" + proccode + ":" + std::to_string(i); }

bool boolean_opcode(const std::string& opcode) {
    static const std::set<std::string> kBoolean = {
        "operator_equals",         "operator_gt",         "operator_lt",        "operator_and",
        "operator_or",             "operator_not",        "sensing_touchingobject", "sensing_keypressed",
        "sensing_mousedown",       "argument_reporter_boolean", "operator_contains"};
    return kBoolean.contains(opcode);
}

class Encoder {
public:
    Encoder(const TargetBuilder& target, const TargetBuilder& stage, std::string prefix,
            const std::vector<std::pair<std::string, std::string>>& target_vars,
            const std::vector<std::string>& target_lists, std::set<std::string>& messages)
        : target_(target), stage_(stage), prefix_(std::move(prefix)), vars_(target_vars), lists_(target_lists),
          messages_(messages) {}

    Json take() { return std::move(blocks_); }

    void top_level(const Stack& stack) { encode_stack(stack, Json(), true); }

    static std::string var_id(const std::string& owner, const std::string& name, bool list) {
        return (list ? "list:" : "var:") + owner + ":" + name;
    }

private:
    std::string new_id() { return prefix_ + "b" + std::to_string(++counter_); }

    std::string resolve_var(const std::string& name, bool list) const {
        if (list) {
            for (const auto& l : lists_) {
                if (l == name) return var_id(target_.name(), name, true);
            }
        } else {
            for (const auto& [n, v] : vars_) {
                if (n == name) return var_id(target_.name(), name, false);
            }
        }
        return var_id(stage_.name(), name, list);
    }

    Json field_ref(const std::string& name, const std::string& value) {
        if (name == "VARIABLE") return resolve_var(value, false);
        if (name == "LIST") return resolve_var(value, true);
        if (name == "BROADCAST_OPTION") {
            messages_.insert(value);
            return "broadcast:" + value;
        }
        return nullptr;
    }

    Json encode_input(const In& in, const std::string& parent) {
        switch (in.kind) {
            case In::Kind::Empty:
                return nullptr;
            case In::Kind::Number:
                return Json::array({1, Json::array({4, in.value})});
            case In::Kind::Text:
                return Json::array({1, Json::array({10, in.value})});
            case In::Kind::Variable:
                return Json::array({3, Json::array({12, in.value, resolve_var(in.value, false)}),
                                    Json::array({10, ""})});
            case In::Kind::List:
                return Json::array({3, Json::array({13, in.value, resolve_var(in.value, true)}),
                                    Json::array({10, ""})});
            case In::Kind::Broadcast:
                messages_.insert(in.value);
                return Json::array({1, Json::array({11, in.value, "broadcast:" + in.value})});
            case In::Kind::Menu: {
                const std::string id = new_id();
                Json shadow = base(in.menu_opcode, Json(parent), false);
                shadow["shadow"] = true;
                shadow["fields"][in.menu_field] = Json::array({in.value, nullptr});
                blocks_[id] = std::move(shadow);
                return Json::array({1, id});
            }
            case In::Kind::Block: {
                const std::string id = encode_block(*in.block, Json(parent), false);
                if (boolean_opcode(in.block->opcode)) return Json::array({2, id});
                return Json::array({3, id, Json::array({10, ""})});
            }
        }
        return nullptr;
    }

    static Json base(const std::string& opcode, const Json& parent, bool top) {
        Json b = Json::object();
        b["opcode"] = opcode;
        b["next"] = nullptr;
        b["parent"] = parent;
        b["inputs"] = Json::object();
        b["fields"] = Json::object();
        b["shadow"] = false;
        b["topLevel"] = top;
        if (top) {
            b["x"] = 0;
            b["y"] = 0;
        }
        return b;
    }

    std::string encode_block(const B& spec, const Json& parent, bool top) {
        const std::string id = new_id();
        blocks_[id] = base(spec.opcode, parent, top);
        Json inputs = Json::object();
        for (const auto& [name, value] : spec.inputs) {
            Json encoded = encode_input(value, id);
            if (!encoded.is_null()) inputs[name] = std::move(encoded);
        }
        Json fields = Json::object();
        for (const auto& [name, value] : spec.fields) {
            fields[name] = Json::array({value, field_ref(name, value)});
        }
        Json mutation;
        if (spec.opcode == "procedures_definition") {
            const std::string proto = new_id();
            Json p = base("procedures_prototype", Json(id), false);
            p["shadow"] = true;
            Json ids = Json::array();
            Json names = Json::array();
            Json defaults = Json::array();
            for (std::size_t i = 0; i < spec.arg_names.size(); ++i) {
                const std::string aid = arg_id(spec.proccode, i);
                const std::string reporter = new_id();
                Json r = base("argument_reporter_string_number", Json(proto), false);
                r["shadow"] = true;
                r["fields"]["VALUE"] = Json::array({spec.arg_names[i], nullptr});
                blocks_[reporter] = std::move(r);
                p["inputs"][aid] = Json::array({1, reporter});
                ids.push_back(aid);
                names.push_back(spec.arg_names[i]);
                defaults.push_back("");
            }
            p["mutation"] = {{"tagName", "mutation"},         {"children", Json::array()},
                             {"proccode", spec.proccode},     {"argumentids", ids.dump()},
                             {"argumentnames", names.dump()}, {"argumentdefaults", defaults.dump()},
                             {"warp", spec.warp ? "true" : "false"}};
            blocks_[proto] = std::move(p);
            inputs["custom_block"] = Json::array({1, proto});
        }
        if (spec.opcode == "procedures_call") {
            Json ids = Json::array();
            for (std::size_t i = 0; i < spec.inputs.size(); ++i) ids.push_back(arg_id(spec.proccode, i));
            Json renamed = Json::object();
            for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
                if (inputs.contains(spec.inputs[i].first)) {
                    renamed[arg_id(spec.proccode, i)] = inputs[spec.inputs[i].first];
                }
            }
            inputs = std::move(renamed);
            mutation = {{"tagName", "mutation"},
                        {"children", Json::array()},
                        {"proccode", spec.proccode},
                        {"argumentids", ids.dump()},
                        {"warp", spec.warp ? "true" : "false"}};
        }
        for (std::size_t s = 0; s < spec.substacks.size(); ++s) {
            if (spec.substacks[s].empty()) continue;
            const Json first = encode_stack(spec.substacks[s], Json(id), false);
            inputs[s == 0 ? "SUBSTACK" : "SUBSTACK2"] = Json::array({2, first});
        }
        blocks_[id]["inputs"] = std::move(inputs);
        blocks_[id]["fields"] = std::move(fields);
        if (!mutation.is_null()) blocks_[id]["mutation"] = std::move(mutation);
        return id;
    }

    Json encode_stack(const Stack& stack, const Json& parent, bool top) {
        Json prev = parent;
        Json first;
        for (std::size_t i = 0; i < stack.size(); ++i) {
            const std::string id = encode_block(stack[i], prev, top && i == 0);
            if (i == 0) {
                first = id;
            } else {
                blocks_[prev.get<std::string>()]["next"] = id;
            }
            prev = id;
        }
        return first;
    }

    const TargetBuilder& target_;
    const TargetBuilder& stage_;
    std::string prefix_;
    const std::vector<std::pair<std::string, std::string>>& vars_;
    const std::vector<std::string>& lists_;
    std::set<std::string>& messages_;
    Json blocks_ = Json::object();
    int counter_ = 0;
};

}  // namespace

// ---------------------------------------------------------------- inputs

In empty() { return {}; }
In num(const std::string& v) { return {In::Kind::Number, v, {}, {}, nullptr}; }
In num(double v) {
    std::string text = std::to_string(v);
    text.erase(text.find_last_not_of('0') + 1);
    if (!text.empty() && text.back() == '.') text.pop_back();
    return num(text);
}
In text(const std::string& v) { return {In::Kind::Text, v, {}, {}, nullptr}; }
In var(const std::string& name) { return {In::Kind::Variable, name, {}, {}, nullptr}; }
In list(const std::string& name) { return {In::Kind::List, name, {}, {}, nullptr}; }
In menu(const std::string& opcode, const std::string& f, const std::string& value) {
    return {In::Kind::Menu, value, opcode, f, nullptr};
}
In rep(B b) { return {In::Kind::Block, {}, {}, {}, std::make_shared<B>(std::move(b))}; }

// ---------------------------------------------------------------- hats

B when_flag() { return block("event_whenflagclicked"); }
B when_key(const std::string& key) { return field(block("event_whenkeypressed"), "KEY_OPTION", key); }
B when_receive(const std::string& m) { return field(block("event_whenbroadcastreceived"), "BROADCAST_OPTION", m); }
B when_backdrop(const std::string& b) { return field(block("event_whenbackdropswitchesto"), "BACKDROP", b); }
B when_clicked() { return block("event_whenthisspriteclicked"); }
B when_stage_clicked() { return block("event_whenstageclicked"); }
B when_clone() { return block("control_start_as_clone"); }

// ---------------------------------------------------------------- control

B repeat(In times, Stack body) { return with(c_block("control_repeat", {std::move(body)}), "TIMES", std::move(times)); }
B repeat_until(In condition, Stack body) {
    return with(c_block("control_repeat_until", {std::move(body)}), "CONDITION", std::move(condition));
}
B forever(Stack body) { return c_block("control_forever", {std::move(body)}); }
B if_then(In condition, Stack body) {
    return with(c_block("control_if", {std::move(body)}), "CONDITION", std::move(condition));
}
B if_else(In condition, Stack then_body, Stack else_body) {
    return with(c_block("control_if_else", {std::move(then_body), std::move(else_body)}), "CONDITION",
                std::move(condition));
}
B wait(In seconds) { return with(block("control_wait"), "DURATION", std::move(seconds)); }
B wait_until(In condition) { return with(block("control_wait_until"), "CONDITION", std::move(condition)); }
B stop_all() { return field(block("control_stop"), "STOP_OPTION", "all"); }

// ---------------------------------------------------------------- statements

B move(In steps) { return with(block("motion_movesteps"), "STEPS", std::move(steps)); }
B turn(In degrees) { return with(block("motion_turnright"), "DEGREES", std::move(degrees)); }
B go_to_random() { return with(block("motion_goto"), "TO", menu("motion_goto_menu", "TO", "_random_")); }
B go_to_xy(In x, In y) { return with(with(block("motion_gotoxy"), "X", std::move(x)), "Y", std::move(y)); }
B change_x(In dx) { return with(block("motion_changexby"), "DX", std::move(dx)); }
B say(In message) { return with(block("looks_say"), "MESSAGE", std::move(message)); }
B think(In message) { return with(block("looks_think"), "MESSAGE", std::move(message)); }
B show() { return block("looks_show"); }
B hide() { return block("looks_hide"); }
B next_costume() { return block("looks_nextcostume"); }
B play_sound(const std::string& sound) {
    return with(block("sound_playuntildone"), "SOUND_MENU", menu("sound_sounds_menu", "SOUND_MENU", sound));
}
B set_var(const std::string& name, In value) {
    return with(field(block("data_setvariableto"), "VARIABLE", name), "VALUE", std::move(value));
}
B change_var(const std::string& name, In by) {
    return with(field(block("data_changevariableby"), "VARIABLE", name), "VALUE", std::move(by));
}
B add_to_list(const std::string& name, In item) {
    return with(field(block("data_addtolist"), "LIST", name), "ITEM", std::move(item));
}
B broadcast(const std::string& message) {
    return with(block("event_broadcast"), "BROADCAST_INPUT", {In::Kind::Broadcast, message, {}, {}, nullptr});
}
B broadcast_wait(const std::string& message) {
    return with(block("event_broadcastandwait"), "BROADCAST_INPUT", {In::Kind::Broadcast, message, {}, {}, nullptr});
}
B switch_backdrop(const std::string& backdrop) {
    return with(block("looks_switchbackdropto"), "BACKDROP", menu("looks_backdrops", "BACKDROP", backdrop));
}
B switch_backdrop_wait(const std::string& backdrop) {
    return with(block("looks_switchbackdroptoandwait"), "BACKDROP", menu("looks_backdrops", "BACKDROP", backdrop));
}
B call(const std::string& proccode, std::vector<In> args) {
    B b = block("procedures_call");
    b.proccode = proccode;
    for (std::size_t i = 0; i < args.size(); ++i) b.inputs.emplace_back("ARG" + std::to_string(i), std::move(args[i]));
    return b;
}
B define(const std::string& proccode, std::vector<std::string> arg_names, Stack body) {
    B b = block("procedures_definition");
    b.proccode = proccode;
    b.arg_names = std::move(arg_names);
    b.substacks = {std::move(body)};  // emitted as the stack below the hat
    return b;
}
B raw(const std::string& opcode) { return block(opcode); }

// ---------------------------------------------------------------- reporters

B equals(In a, In b) { return with(with(block("operator_equals"), "OPERAND1", std::move(a)), "OPERAND2", std::move(b)); }
B gt(In a, In b) { return with(with(block("operator_gt"), "OPERAND1", std::move(a)), "OPERAND2", std::move(b)); }
B lt(In a, In b) { return with(with(block("operator_lt"), "OPERAND1", std::move(a)), "OPERAND2", std::move(b)); }
B and_(In a, In b) { return with(with(block("operator_and"), "OPERAND1", std::move(a)), "OPERAND2", std::move(b)); }
B or_(In a, In b) { return with(with(block("operator_or"), "OPERAND1", std::move(a)), "OPERAND2", std::move(b)); }
B not_(In a) { return with(block("operator_not"), "OPERAND", std::move(a)); }
B add(In a, In b) { return with(with(block("operator_add"), "NUM1", std::move(a)), "NUM2", std::move(b)); }
B touching_mouse() {
    return with(block("sensing_touchingobject"), "TOUCHINGOBJECTMENU",
                menu("sensing_touchingobjectmenu", "TOUCHINGOBJECTMENU", "_mouse_"));
}
B touching_edge() {
    return with(block("sensing_touchingobject"), "TOUCHINGOBJECTMENU",
                menu("sensing_touchingobjectmenu", "TOUCHINGOBJECTMENU", "_edge_"));
}
B key_pressed(const std::string& key) {
    return with(block("sensing_keypressed"), "KEY_OPTION", menu("sensing_keyoptions", "KEY_OPTION", key));
}
B mouse_down() { return block("sensing_mousedown"); }
B x_position() { return block("motion_xposition"); }
B timer() { return block("sensing_timer"); }
B pick_random(In from, In to) {
    return with(with(block("operator_random"), "FROM", std::move(from)), "TO", std::move(to));
}
B arg(const std::string& name) { return field(block("argument_reporter_string_number"), "VALUE", name); }
B arg_bool(const std::string& name) { return field(block("argument_reporter_boolean"), "VALUE", name); }

// ---------------------------------------------------------------- targets

TargetBuilder& TargetBuilder::variable(const std::string& name, const std::string& value) {
    variables_.emplace_back(name, value);
    return *this;
}
TargetBuilder& TargetBuilder::list(const std::string& name) {
    lists_.push_back(name);
    return *this;
}
TargetBuilder& TargetBuilder::broadcast_decl(const std::string& name) {
    broadcasts_.push_back(name);
    return *this;
}
TargetBuilder& TargetBuilder::backdrop(const std::string& name) {
    backdrops_.push_back(name);
    return *this;
}
TargetBuilder& TargetBuilder::layer(int order) {
    layer_ = order;
    return *this;
}
TargetBuilder& TargetBuilder::script(Stack blocks) {
    scripts_.push_back(std::move(blocks));
    return *this;
}
TargetBuilder& TargetBuilder::loose(B b) {
    scripts_.push_back({std::move(b)});
    return *this;
}

ProjectBuilder::ProjectBuilder() { targets_.push_back(std::make_unique<TargetBuilder>("Stage", true)); }

TargetBuilder& ProjectBuilder::sprite(const std::string& name) {
    for (auto& t : targets_) {
        if (!t->stage_ && t->name_ == name) return *t;
    }
    targets_.push_back(std::make_unique<TargetBuilder>(name, false));
    return *targets_.back();
}

std::string ProjectBuilder::json() const {
    std::set<std::string> messages;
    Json targets = Json::array();
    const TargetBuilder& stage = *targets_.front();
    for (std::size_t i = 0; i < targets_.size(); ++i) {
        const TargetBuilder& t = *targets_[i];
        Encoder enc(t, stage, "t" + std::to_string(i) + "_", t.variables_, t.lists_, messages);
        for (const Stack& s : t.scripts_) {
            if (!s.empty() && s.front().opcode == "procedures_definition") {
                // definition hat followed by its body
                const B& def = s.front();
                B hat = def;
                hat.substacks.clear();
                Stack chain{hat};
                for (const B& b : def.substacks.front()) chain.push_back(b);
                enc.top_level(chain);
            } else {
                enc.top_level(s);
            }
        }
        Json target = Json::object();
        target["isStage"] = t.stage_;
        target["name"] = t.name_;
        Json vars = Json::object();
        for (const auto& [name, value] : t.variables_) {
            vars[Encoder::var_id(t.name_, name, false)] = Json::array({name, value});
        }
        target["variables"] = std::move(vars);
        Json lists = Json::object();
        for (const auto& name : t.lists_) lists[Encoder::var_id(t.name_, name, true)] = Json::array({name, Json::array()});
        target["lists"] = std::move(lists);
        target["broadcasts"] = Json::object();
        target["blocks"] = enc.take();
        target["comments"] = Json::object();
        target["currentCostume"] = 0;
        Json costumes = Json::array();
        if (t.stage_) {
            costumes.push_back({{"name", "backdrop1"}});
            for (const auto& b : t.backdrops_) costumes.push_back({{"name", b}});
        } else {
            costumes.push_back({{"name", "costume1"}});
        }
        target["costumes"] = std::move(costumes);
        target["sounds"] = Json::array();
        target["layerOrder"] = t.stage_ ? 0 : (t.layer_ >= 0 ? t.layer_ : static_cast<int>(i));
        targets.push_back(std::move(target));
    }
    for (const auto& name : stage.broadcasts_) messages.insert(name);
    Json broadcasts = Json::object();
    for (const auto& m : messages) broadcasts["broadcast:" + m] = m;
    targets[0]["broadcasts"] = std::move(broadcasts);
    Json project = {{"targets", std::move(targets)},
                    {"monitors", Json::array()},
                    {"extensions", Json::array()},
                    {"meta", {{"semver", "3.0.0"}, {"vm", "0.2.0"}, {"agent", "qlc-fixtures"}}}};
    return project.dump();
}

qlc::Project ProjectBuilder::parse(const std::string& id) const { return qlc::parse_project_json(json(), id); }

std::string ProjectBuilder::sb3(bool deflate) const { return zip_archive({{"project.json", json()}}, deflate); }

ProjectBuilder catch_game() {
    ProjectBuilder p;
    p.stage().variable("catches").backdrop("win");
    p.sprite("Bat").script({
        when_flag(),
        repeat_until(rep(equals(var("catches"), num("5"))),
                     {
                         go_to_random(),
                         wait_until(rep(touching_mouse())),
                         play_sound("pop"),
                         change_var("catches", num("1")),
                     }),
        switch_backdrop("win"),
    });
    return p;
}

}  // namespace fx
