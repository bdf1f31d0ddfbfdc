#include "qlc/parse.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "opcodes.hpp"
#include "zip.hpp"

namespace qlc {

namespace {

using Json = nlohmann::ordered_json;
using detail::Shape;

[[noreturn]] void schema_error(const std::string& where, const std::string& message) {
    throw SchemaError(message, where);
}

std::string json_scalar_text(const Json& value) {
    if (value.is_string()) {
        return value.get<std::string>();
    }
    if (value.is_null()) {
        return {};
    }
    return value.dump();
}

Value json_value(const Json& value) {
    if (value.is_number()) {
        return value.get<double>();
    }
    return json_scalar_text(value);
}

std::vector<std::string> string_array(const Json& value, const std::string& where) {
    // Mutation arrays are stored as JSON-encoded strings in project files.
    Json decoded = value;
    if (value.is_string()) {
        try {
            decoded = Json::parse(value.get<std::string>());
        } catch (const Json::parse_error&) {
            schema_error(where, "mutation array is not valid JSON");
        }
    }
    std::vector<std::string> out;
    if (!decoded.is_array()) {
        return out;
    }
    for (const Json& item : decoded) {
        out.push_back(json_scalar_text(item));
    }
    return out;
}

std::vector<Field> parse_fields(const Json& block) {
    std::vector<Field> fields;
    const auto it = block.find("fields");
    if (it == block.end() || !it->is_object()) {
        return fields;
    }
    for (const auto& [name, value] : it->items()) {
        Field field{name, {}, {}};
        if (value.is_array()) {
            if (!value.empty()) field.value = json_scalar_text(value[0]);
            if (value.size() > 1) field.ref = json_scalar_text(value[1]);
        } else {
            field.value = json_scalar_text(value);
        }
        fields.push_back(std::move(field));
    }
    return fields;
}

/// Decodes the block graph of one target into scripts and procedures.
class TargetDecoder {
public:
    TargetDecoder(const Json& blocks, std::string where, std::string actor_name,
                  std::set<std::string> local_vars, std::set<std::string> local_lists)
        : blocks_(blocks),
          where_(std::move(where)),
          actor_name_(std::move(actor_name)),
          local_vars_(std::move(local_vars)),
          local_lists_(std::move(local_lists)) {}

    void decode(Actor& actor, std::set<std::string>& messages) {
        validate_graph();
        for (const auto& [id, block] : blocks_.items()) {
            if (!block.is_object() || !is_top_level(block)) {
                continue;
            }
            const std::string opcode = block["opcode"].get<std::string>();
            if (opcode == "procedures_definition") {
                actor.procedures.push_back(decode_procedure(id, block));
            } else if (detail::is_hat_opcode(opcode)) {
                Script script;
                script.id = id;
                script.event = decode_event(id, block);
                mark(id);
                script.body = decode_stack(block.value("next", Json()));
                actor.scripts.push_back(std::move(script));
            } else if (is_statement_top(opcode, block)) {
                Script script;
                script.id = id;
                script.body = decode_stack(Json(id));
                actor.scripts.push_back(std::move(script));
            }
        }
        messages.insert(messages_.begin(), messages_.end());
    }

private:
    static bool is_top_level(const Json& block) {
        if (block.value("shadow", false)) {
            return false;
        }
        const auto top = block.find("topLevel");
        if (top != block.end() && top->is_boolean()) {
            return top->get<bool>();
        }
        return block.value("parent", Json()).is_null();
    }

    static bool is_statement_top(const std::string& opcode, const Json& block) {
        if (detail::number_literal_field(opcode) || detail::string_literal_field(opcode) ||
            opcode == "data_variable" || opcode == "data_listcontents" ||
            opcode == "procedures_prototype") {
            return false;
        }
        const detail::OpcodeInfo* info = detail::find_opcode(opcode);
        if (info != nullptr && (info->shape == Shape::Reporter || info->shape == Shape::Boolean)) {
            return false;
        }
        // Unknown reporters dropped loose on the canvas look like lone blocks
        // that have neither a successor nor a statement shape we know.
        return !block.value("shadow", false);
    }

    std::string at(const std::string& id) const { return where_ + ".blocks." + id; }

    void validate_graph() const {
        for (const auto& [id, block] : blocks_.items()) {
            if (block.is_array()) {
                continue;  // loose variable/list reporter stored as a primitive
            }
            if (!block.is_object()) {
                schema_error(at(id), "block is neither an object nor a primitive");
            }
            const auto op = block.find("opcode");
            if (op == block.end() || !op->is_string()) {
                schema_error(at(id), "missing required key 'opcode'");
            }
            for (const char* link : {"parent", "next"}) {
                const auto ref = block.find(link);
                if (ref == block.end() || ref->is_null()) {
                    continue;
                }
                if (!ref->is_string() || !blocks_.contains(ref->get<std::string>())) {
                    schema_error(at(id), std::string("dangling ") + link + " reference");
                }
            }
        }
        // Parent chains must terminate.
        const std::size_t limit = blocks_.size();
        for (const auto& [id, block] : blocks_.items()) {
            std::string current = id;
            std::size_t steps = 0;
            while (true) {
                const Json& b = *blocks_.find(current);
                if (!b.is_object()) break;
                const Json parent = b.value("parent", Json());
                if (!parent.is_string()) break;
                current = parent.get<std::string>();
                if (++steps > limit) {
                    schema_error(at(id), "block graph has a cycle through parent references");
                }
            }
        }
    }

    const Json& block_at(const std::string& id, const std::string& from) const {
        const auto it = blocks_.find(id);
        if (it == blocks_.end()) {
            schema_error(at(from), "reference to missing block '" + id + "'");
        }
        return *it;
    }

    void mark(const std::string& id) {
        if (!visited_.insert(id).second) {
            schema_error(at(id), "block graph has a cycle or a block is used twice");
        }
    }

    std::vector<Block> decode_stack(const Json& first) {
        std::vector<Block> stack;
        Json next = first;
        std::string prev = where_;
        while (next.is_string()) {
            const std::string id = next.get<std::string>();
            const Json& block = block_at(id, prev);
            if (!block.is_object()) {
                schema_error(at(id), "statement slot references a primitive");
            }
            stack.push_back(decode_statement(id, block));
            next = block.value("next", Json());
            prev = id;
        }
        return stack;
    }

    Block decode_statement(const std::string& id, const Json& block) {
        mark(id);
        Block out;
        out.id = id;
        out.opcode = block["opcode"].get<std::string>();
        out.kind = detail::classify_statement(out.opcode);
        const Json inputs = block.value("inputs", Json::object());
        const detail::OpcodeInfo* info = detail::find_opcode(out.opcode);

        if (out.kind == StmtKind::ProcedureCall) {
            const Json mutation = block.value("mutation", Json::object());
            const std::string proccode = json_scalar_text(mutation.value("proccode", Json("")));
            const auto arg_ids = string_array(mutation.value("argumentids", Json("[]")), at(id));
            const auto types = detail::signature_params(proccode);
            out.fields.push_back({"PROCCODE", proccode, {}});
            for (std::size_t i = 0; i < arg_ids.size(); ++i) {
                const bool boolean = i < types.size() && types[i] == ParamType::Boolean;
                out.inputs.push_back({arg_ids[i], decode_input(inputs, arg_ids[i], id, boolean)});
            }
        } else {
            std::vector<std::string> order;
            if (info != nullptr) {
                order = detail::pattern_inputs(info->pattern);
            }
            for (const auto& [name, value] : inputs.items()) {
                if (name != "SUBSTACK" && name != "SUBSTACK2" &&
                    std::find(order.begin(), order.end(), name) == order.end()) {
                    order.push_back(name);
                }
            }
            for (const std::string& name : order) {
                out.inputs.push_back(
                    {name, decode_input(inputs, name, id, detail::is_boolean_slot(out.opcode, name))});
            }
        }
        for (Field& f : parse_fields(block)) {
            out.fields.push_back(std::move(f));
        }

        const int substacks = info == nullptr                     ? 0
                              : info->shape == Shape::CBlock  ? 1
                              : info->shape == Shape::CBlock2 ? 2
                                                              : 0;
        for (int s = 0; s < substacks; ++s) {
            const std::string name = s == 0 ? "SUBSTACK" : "SUBSTACK2";
            Json first;
            if (const auto it = inputs.find(name); it != inputs.end() && it->is_array() && it->size() > 1) {
                first = (*it)[1];
            }
            out.substacks.push_back(decode_stack(first));
        }

        if (out.is_trigger()) {
            if (auto target = out.trigger_target();
                target && (out.kind == StmtKind::Broadcast || out.kind == StmtKind::BroadcastAndWait)) {
                messages_.insert(*target);
            }
        }
        return out;
    }

    std::optional<Event> decode_event(const std::string& id, const Json& block) {
        Event event;
        event.id = id;
        event.opcode = block["opcode"].get<std::string>();
        event.kind = detail::classify_event(event.opcode);
        event.fields = parse_fields(block);
        const Json inputs = block.value("inputs", Json::object());
        std::vector<std::string> order;
        if (const auto* info = detail::find_opcode(event.opcode)) {
            order = detail::pattern_inputs(info->pattern);
        }
        for (const auto& [name, value] : inputs.items()) {
            if (std::find(order.begin(), order.end(), name) == order.end()) {
                order.push_back(name);
            }
        }
        for (const std::string& name : order) {
            event.inputs.push_back({name, decode_input(inputs, name, id, false)});
        }
        if (const auto field = detail::event_payload_field(event.opcode)) {
            const auto it = std::find_if(event.fields.begin(), event.fields.end(),
                                         [&](const Field& f) { return f.name == *field; });
            if (it == event.fields.end()) {
                schema_error(at(id), "hat block is missing field " + std::string(*field));
            }
            event.payload = it->value;
            if (event.kind == EventKind::ReceiveMessage) {
                messages_.insert(event.payload);
            }
        }
        return event;
    }

    ProcedureDefinition decode_procedure(const std::string& id, const Json& block) {
        mark(id);
        ProcedureDefinition proc;
        proc.id = id;
        const Json inputs = block.value("inputs", Json::object());
        const auto slot = inputs.find("custom_block");
        if (slot == inputs.end() || !slot->is_array() || slot->size() < 2 || !(*slot)[1].is_string()) {
            schema_error(at(id), "procedure definition without prototype");
        }
        proc.prototype_id = (*slot)[1].get<std::string>();
        const Json& proto = block_at(proc.prototype_id, id);
        mark(proc.prototype_id);
        const Json mutation = proto.value("mutation", Json::object());
        proc.signature = json_scalar_text(mutation.value("proccode", Json("")));
        const auto ids = string_array(mutation.value("argumentids", Json("[]")), at(proc.prototype_id));
        const auto names =
            string_array(mutation.value("argumentnames", Json("[]")), at(proc.prototype_id));
        const auto types = detail::signature_params(proc.signature);
        for (std::size_t i = 0; i < names.size(); ++i) {
            proc.parameters.push_back({names[i],
                                       i < types.size() ? types[i] : ParamType::NumberOrText,
                                       i < ids.size() ? ids[i] : std::string{}});
        }
        const Json warp = mutation.value("warp", Json(false));
        proc.warp = warp.is_boolean() ? warp.get<bool>() : json_scalar_text(warp) == "true";
        proc.body = decode_stack(block.value("next", Json()));
        return proc;
    }

    Expression decode_input(const Json& inputs, const std::string& name, const std::string& parent,
                            bool boolean_slot) {
        const auto it = inputs.find(name);
        if (it == inputs.end() || !it->is_array() || it->size() < 2) {
            return {EmptySlot{boolean_slot}};
        }
        const Json& value = (*it)[1];
        const std::string synthetic = parent + ":" + name;
        if (value.is_null()) {
            return {EmptySlot{boolean_slot}};
        }
        if (value.is_array()) {
            return decode_primitive(value, synthetic, parent);
        }
        if (!value.is_string()) {
            schema_error(at(parent), "input " + name + " has an invalid value");
        }
        const std::string ref = value.get<std::string>();
        const Json& block = block_at(ref, parent);
        if (block.is_array()) {
            return decode_primitive(block, synthetic, parent);
        }
        return decode_reporter(ref, block, synthetic);
    }

    Expression decode_primitive(const Json& prim, const std::string& id, const std::string& parent) {
        if (prim.empty() || !prim[0].is_number_integer()) {
            schema_error(at(parent), "malformed primitive input");
        }
        const int type = prim[0].get<int>();
        const std::string text = prim.size() > 1 ? json_scalar_text(prim[1]) : std::string{};
        switch (type) {
            case 4: case 5: case 6: case 7: case 8:
                return {NumberLiteral{id, text}};
            case 9:
                return {StringLiteral{id, text}};
            case 10:
                if (detail::looks_numeric(text)) {
                    return {NumberLiteral{id, text}};
                }
                return {StringLiteral{id, text}};
            case 11:
                return {MenuOption{id, {}, "BROADCAST_OPTION", text}};
            case 12:
                return {VariableReporter{id, text, owner_of(text, false), false}};
            case 13:
                return {VariableReporter{id, text, owner_of(text, true), true}};
            default:
                schema_error(at(parent), "unknown primitive type " + std::to_string(type));
        }
    }

    Expression decode_reporter(const std::string& id, const Json& block, const std::string& synthetic) {
        mark(id);
        const std::string opcode = block["opcode"].get<std::string>();
        auto fields = parse_fields(block);
        const auto field_value = [&](std::string_view name) {
            const auto f = std::find_if(fields.begin(), fields.end(),
                                        [&](const Field& x) { return x.name == name; });
            return f == fields.end() ? std::string{} : f->value;
        };

        if (const auto field = detail::number_literal_field(opcode)) {
            return {NumberLiteral{synthetic, field_value(*field)}};
        }
        if (const auto field = detail::string_literal_field(opcode)) {
            const std::string text = field_value(*field);
            if (opcode == "text" && detail::looks_numeric(text)) {
                return {NumberLiteral{synthetic, text}};
            }
            return {StringLiteral{synthetic, text}};
        }
        if (opcode == "data_variable" || opcode == "data_listcontents") {
            const bool list = opcode == "data_listcontents";
            const std::string name = field_value(list ? "LIST" : "VARIABLE");
            return {VariableReporter{synthetic, name, owner_of(name, list), list}};
        }
        const Json inputs = block.value("inputs", Json::object());
        if (block.value("shadow", false) && fields.size() == 1 && inputs.empty()) {
            return {MenuOption{id, opcode, fields[0].name, fields[0].value}};
        }

        ReporterCall call;
        call.id = id;
        call.opcode = opcode;
        call.fields = std::move(fields);
        std::vector<std::string> order;
        const detail::OpcodeInfo* info = detail::find_opcode(opcode);
        if (info != nullptr) {
            order = detail::pattern_inputs(info->pattern);
        }
        for (const auto& [name, value] : inputs.items()) {
            if (std::find(order.begin(), order.end(), name) == order.end()) {
                order.push_back(name);
            }
        }
        for (const std::string& name : order) {
            call.slots.push_back(name);
            call.operands.push_back(decode_input(inputs, name, id, detail::is_boolean_slot(opcode, name)));
        }
        if (info != nullptr && info->shape == Shape::Boolean) {
            return {BooleanExpr{std::move(call)}};
        }
        if (info != nullptr && call.operands.empty()) {
            return {AttributeReporter{std::move(call)}};
        }
        return {NumericReporter{std::move(call)}};
    }

    std::string owner_of(const std::string& name, bool list) const {
        const auto& locals = list ? local_lists_ : local_vars_;
        return locals.contains(name) ? actor_name_ : std::string{};
    }

    const Json& blocks_;
    std::string where_;
    std::string actor_name_;
    std::set<std::string> local_vars_;
    std::set<std::string> local_lists_;
    std::unordered_set<std::string> visited_;
    std::set<std::string> messages_;
};

std::vector<Variable> parse_variables(const Json& target, const char* key, const std::string& owner,
                                      const std::string& where) {
    std::vector<Variable> vars;
    const auto it = target.find(key);
    if (it == target.end() || it->is_null()) {
        return vars;
    }
    if (!it->is_object()) {
        schema_error(where + "." + key, "expected an object");
    }
    for (const auto& [id, entry] : it->items()) {
        if (!entry.is_array() || entry.empty()) {
            schema_error(where + "." + key + "." + id, "malformed variable entry");
        }
        Variable v;
        v.id = id;
        v.name = json_scalar_text(entry[0]);
        v.owner = owner;
        if (std::string_view(key) == "lists") {
            v.initial_value = std::string{};
        } else {
            v.initial_value = entry.size() > 1 ? json_value(entry[1]) : Value{std::string{}};
            v.cloud = entry.size() > 2 && entry[2].is_boolean() && entry[2].get<bool>();
        }
        vars.push_back(std::move(v));
    }
    return vars;
}

std::set<std::string> names_of(const std::vector<Variable>& vars) {
    std::set<std::string> names;
    for (const Variable& v : vars) {
        names.insert(v.name);
    }
    return names;
}

struct RawActor {
    Actor actor;
    long layer_order = 0;
    std::size_t position = 0;
};

Actor decode_target(const Json& target, const std::string& where, std::set<std::string>& messages,
                    bool is_stage) {
    const auto name = target.find("name");
    if (name == target.end() || !name->is_string()) {
        schema_error(where, "missing required key 'name'");
    }
    const auto blocks = target.find("blocks");
    if (blocks == target.end() || !blocks->is_object()) {
        schema_error(where, "missing required key 'blocks'");
    }
    Actor actor;
    actor.name = name->get<std::string>();
    actor.kind = is_stage ? ActorKind::Stage : ActorKind::Sprite;
    const std::string owner = is_stage ? std::string{} : actor.name;
    actor.local_variables = parse_variables(target, "variables", owner, where);
    actor.local_lists = parse_variables(target, "lists", owner, where);
    if (const auto costumes = target.find("costumes"); costumes != target.end() && costumes->is_array()) {
        for (const Json& c : *costumes) {
            if (c.is_object()) {
                actor.costumes.push_back(json_scalar_text(c.value("name", Json(""))));
            }
        }
    }
    std::set<std::string> local_vars;
    std::set<std::string> local_lists;
    if (!is_stage) {
        local_vars = names_of(actor.local_variables);
        local_lists = names_of(actor.local_lists);
    }
    TargetDecoder decoder(*blocks, where, owner, std::move(local_vars), std::move(local_lists));
    decoder.decode(actor, messages);
    return actor;
}

}  // namespace

InputFormat detect_format(std::span<const std::byte> raw) noexcept {
    if (raw.size() >= 4 && raw[0] == std::byte{'P'} && raw[1] == std::byte{'K'} &&
        raw[2] == std::byte{3} && raw[3] == std::byte{4}) {
        return InputFormat::Sb3Zip;
    }
    return InputFormat::ProjectJson;
}

std::span<const std::byte> as_bytes(std::string_view text) noexcept {
    return {reinterpret_cast<const std::byte*>(text.data()), text.size()};
}

Project parse_project(std::span<const std::byte> raw, InputFormat format, std::string project_id) {
    if (format == InputFormat::Sb3Zip) {
        auto member = detail::read_zip_member(raw, "project.json");
        if (!member) {
            throw MalformedArchive("archive has no project.json member", {});
        }
        return parse_project_json(*member, std::move(project_id));
    }
    return parse_project_json(
        std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()), std::move(project_id));
}

Project parse_project_json(std::string_view json_text, std::string project_id) {
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what(), "byte " + std::to_string(e.byte));
    }
    if (!doc.is_object()) {
        schema_error({}, "project document is not an object");
    }
    const auto targets = doc.find("targets");
    if (targets == doc.end() || !targets->is_array()) {
        schema_error({}, "missing required key 'targets'");
    }

    Project project;
    project.id = std::move(project_id);
    std::set<std::string> messages;
    std::vector<RawActor> sprites;
    int stages = 0;
    for (std::size_t i = 0; i < targets->size(); ++i) {
        const Json& target = (*targets)[i];
        const std::string where = "targets[" + std::to_string(i) + "]";
        if (!target.is_object()) {
            schema_error(where, "target is not an object");
        }
        const auto stage_flag = target.find("isStage");
        if (stage_flag == target.end() || !stage_flag->is_boolean()) {
            schema_error(where, "missing required key 'isStage'");
        }
        if (stage_flag->get<bool>()) {
            if (++stages > 1) {
                schema_error(where, "project has more than one stage");
            }
            project.stage = decode_target(target, where, messages, true);
            if (const auto b = target.find("broadcasts"); b != target.end() && b->is_object()) {
                for (const auto& [id, message] : b->items()) {
                    messages.insert(json_scalar_text(message));
                }
            }
        } else {
            RawActor raw;
            raw.actor = decode_target(target, where, messages, false);
            const Json layer = target.value("layerOrder", Json(static_cast<long>(i)));
            raw.layer_order = layer.is_number() ? layer.get<long>() : static_cast<long>(i);
            raw.position = i;
            sprites.push_back(std::move(raw));
        }
    }
    if (stages == 0) {
        schema_error({}, "project has no stage target");
    }
    std::stable_sort(sprites.begin(), sprites.end(), [](const RawActor& a, const RawActor& b) {
        return a.layer_order < b.layer_order;
    });
    std::set<std::string> sprite_names;
    for (std::size_t i = 0; i < sprites.size(); ++i) {
        Actor& actor = sprites[i].actor;
        if (!sprite_names.insert(actor.name).second) {
            schema_error("targets[" + std::to_string(sprites[i].position) + "]",
                         "duplicate sprite name '" + actor.name + "'");
        }
        actor.layer_index = static_cast<int>(i);
        project.sprites.push_back(std::move(actor));
    }
    project.global_variables = project.stage.local_variables;
    project.global_lists = project.stage.local_lists;
    project.backdrops = project.stage.costumes;
    project.broadcasts = std::move(messages);
    return project;
}

Project load_project(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MalformedArchive("cannot open file", path);
    }
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto raw = as_bytes(bytes);
    try {
        return parse_project(raw, detect_format(raw), std::filesystem::path(path).stem().string());
    } catch (const MalformedArchive& e) {
        throw MalformedArchive(e.what(), path);
    } catch (const SchemaError& e) {
        throw SchemaError(e.what(), path);
    }
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

class Serializer {
public:
    explicit Serializer(const Project& project) : project_(project) {
        for (const std::string& message : project.broadcasts) {
            broadcast_ids_[message] = "broadcast:" + message;
        }
    }

    Json run() {
        Json doc = Json::object();
        Json targets = Json::array();
        targets.push_back(target(project_.stage, 0));
        for (const Actor& sprite : project_.sprites) {
            targets.push_back(target(sprite, sprite.layer_index.value_or(0) + 1));
        }
        doc["targets"] = std::move(targets);
        doc["monitors"] = Json::array();
        doc["extensions"] = Json::array();
        doc["meta"] = {{"semver", "3.0.0"}, {"vm", "0.2.0"}, {"agent", "scratch-qlc"}};
        return doc;
    }

private:
    Json target(const Actor& actor, int layer) {
        actor_ = &actor;
        blocks_ = Json::object();
        Json t = Json::object();
        t["isStage"] = actor.is_stage();
        t["name"] = actor.name;
        t["variables"] = variables(actor.local_variables, false);
        t["lists"] = variables(actor.local_lists, true);
        Json broadcasts = Json::object();
        if (actor.is_stage()) {
            for (const auto& [message, id] : broadcast_ids_) {
                broadcasts[id] = message;
            }
        }
        t["broadcasts"] = std::move(broadcasts);
        for (const Script& script : actor.scripts) {
            emit_script(script);
        }
        for (const ProcedureDefinition& proc : actor.procedures) {
            emit_procedure(proc);
        }
        t["blocks"] = std::move(blocks_);
        t["comments"] = Json::object();
        t["currentCostume"] = 0;
        Json costumes = Json::array();
        for (const std::string& name : actor.costumes) {
            costumes.push_back({{"name", name}});
        }
        t["costumes"] = std::move(costumes);
        t["sounds"] = Json::array();
        t["layerOrder"] = layer;
        return t;
    }

    static Json variables(const std::vector<Variable>& vars, bool lists) {
        Json out = Json::object();
        for (const Variable& v : vars) {
            Json entry = Json::array();
            entry.push_back(v.name);
            if (lists) {
                entry.push_back(Json::array());
            } else {
                std::visit([&](const auto& value) { entry.push_back(value); }, v.initial_value);
                if (v.cloud) entry.push_back(true);
            }
            out[v.id] = std::move(entry);
        }
        return out;
    }

    static Json fields_json(const std::vector<Field>& fields) {
        Json out = Json::object();
        for (const Field& f : fields) {
            if (f.name == "PROCCODE") continue;
            out[f.name] = Json::array({f.value, f.ref.empty() ? Json() : Json(f.ref)});
        }
        return out;
    }

    void emit_script(const Script& script) {
        if (script.event) {
            const Event& e = *script.event;
            Json block = base_block(e.opcode, Json(), true);
            block["inputs"] = inputs_json(e.inputs, e.id);
            block["fields"] = fields_json(e.fields);
            block["next"] = emit_stack(script.body, e.id);
            blocks_[e.id] = std::move(block);
        } else {
            emit_stack(script.body, Json(), true);
        }
    }

    void emit_procedure(const ProcedureDefinition& proc) {
        Json def = base_block("procedures_definition", Json(), true);
        def["inputs"] = {{"custom_block", Json::array({1, proc.prototype_id})}};
        def["next"] = emit_stack(proc.body, proc.id);
        blocks_[proc.id] = std::move(def);

        Json proto = base_block("procedures_prototype", Json(proc.id), false);
        proto["shadow"] = true;
        Json ids = Json::array();
        Json names = Json::array();
        Json defaults = Json::array();
        for (const Parameter& p : proc.parameters) {
            ids.push_back(p.id);
            names.push_back(p.name);
            defaults.push_back(p.type == ParamType::Boolean ? Json("false") : Json(""));
        }
        proto["mutation"] = {{"tagName", "mutation"},    {"children", Json::array()},
                             {"proccode", proc.signature}, {"argumentids", ids.dump()},
                             {"argumentnames", names.dump()}, {"argumentdefaults", defaults.dump()},
                             {"warp", proc.warp ? "true" : "false"}};
        blocks_[proc.prototype_id] = std::move(proto);
    }

    static Json base_block(const std::string& opcode, const Json& parent, bool top) {
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

    /// Emits a statement chain and returns the id of its first block.
    Json emit_stack(const std::vector<Block>& stack, const Json& parent, bool top = false) {
        Json prev = parent;
        for (std::size_t i = 0; i < stack.size(); ++i) {
            const Block& b = stack[i];
            Json block = base_block(b.opcode, prev, top && i == 0);
            block["inputs"] = inputs_json(b.inputs, b.id);
            block["fields"] = fields_json(b.fields);
            if (b.kind == StmtKind::ProcedureCall) {
                Json ids = Json::array();
                for (const Input& in : b.inputs) ids.push_back(in.name);
                const Field* code = b.field("PROCCODE");
                block["mutation"] = {{"tagName", "mutation"},
                                     {"children", Json::array()},
                                     {"proccode", code ? code->value : std::string{}},
                                     {"argumentids", ids.dump()},
                                     {"warp", "false"}};
            }
            for (std::size_t s = 0; s < b.substacks.size(); ++s) {
                const Json first = emit_stack(b.substacks[s], Json(b.id));
                block["inputs"][s == 0 ? "SUBSTACK" : "SUBSTACK2"] = Json::array({2, first});
            }
            block["next"] = i + 1 < stack.size() ? Json(stack[i + 1].id) : Json();
            blocks_[b.id] = std::move(block);
            prev = Json(b.id);
        }
        return stack.empty() ? Json() : Json(stack.front().id);
    }

    Json inputs_json(const std::vector<Input>& inputs, const std::string& parent) {
        Json out = Json::object();
        for (const Input& in : inputs) {
            out[in.name] = input_json(in.value, parent);
        }
        return out;
    }

    std::string variable_id(const VariableReporter& v) const {
        const auto& pool = v.owner.empty() ? (v.list ? project_.global_lists : project_.global_variables)
                                           : (v.list ? actor_->local_lists : actor_->local_variables);
        for (const Variable& var : pool) {
            if (var.name == v.name) return var.id;
        }
        return v.name;
    }

    Json input_json(const Expression& e, const std::string& parent) {
        return std::visit(
            [&](const auto& n) -> Json {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, EmptySlot>) {
                    return Json::array({1, nullptr});
                } else if constexpr (std::is_same_v<T, NumberLiteral>) {
                    return Json::array({1, Json::array({4, n.value})});
                } else if constexpr (std::is_same_v<T, StringLiteral>) {
                    return Json::array({1, Json::array({10, n.value})});
                } else if constexpr (std::is_same_v<T, MenuOption>) {
                    if (n.opcode.empty()) {
                        const auto it = broadcast_ids_.find(n.value);
                        const std::string id = it == broadcast_ids_.end() ? n.value : it->second;
                        return Json::array({1, Json::array({11, n.value, id})});
                    }
                    Json shadow = base_block(n.opcode, Json(parent), false);
                    shadow["shadow"] = true;
                    shadow["fields"] = {{n.field, Json::array({n.value, nullptr})}};
                    blocks_[n.id] = std::move(shadow);
                    return Json::array({1, n.id});
                } else if constexpr (std::is_same_v<T, VariableReporter>) {
                    return Json::array(
                        {3, Json::array({n.list ? 13 : 12, n.name, variable_id(n)}), Json::array({10, ""})});
                } else {
                    Json block = base_block(n.opcode, Json(parent), false);
                    for (std::size_t i = 0; i < n.operands.size(); ++i) {
                        block["inputs"][n.slots[i]] = input_json(n.operands[i], n.id);
                    }
                    block["fields"] = fields_json(n.fields);
                    blocks_[n.id] = std::move(block);
                    return Json::array({2, n.id});
                }
            },
            e.node);
    }

    const Project& project_;
    const Actor* actor_ = nullptr;
    Json blocks_;
    std::map<std::string, std::string> broadcast_ids_;
};

}  // namespace

std::string serialize_project(const Project& project) { return Serializer(project).run().dump(); }

}  // namespace qlc
