#include "opcodes.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace qlc::detail {

namespace {

constexpr std::array kOpcodes = {
    // motion
    OpcodeInfo{"motion_movesteps", Shape::Stack, "move %STEPS steps"},
    OpcodeInfo{"motion_turnright", Shape::Stack, "turn right %DEGREES degrees"},
    OpcodeInfo{"motion_turnleft", Shape::Stack, "turn left %DEGREES degrees"},
    OpcodeInfo{"motion_goto", Shape::Stack, "go to %TO"},
    OpcodeInfo{"motion_gotoxy", Shape::Stack, "go to x: %X y: %Y"},
    OpcodeInfo{"motion_glideto", Shape::Stack, "glide %SECS secs to %TO"},
    OpcodeInfo{"motion_glidesecstoxy", Shape::Stack, "glide %SECS secs to x: %X y: %Y"},
    OpcodeInfo{"motion_pointindirection", Shape::Stack, "point in direction %DIRECTION"},
    OpcodeInfo{"motion_pointtowards", Shape::Stack, "point towards %TOWARDS"},
    OpcodeInfo{"motion_changexby", Shape::Stack, "change x by %DX"},
    OpcodeInfo{"motion_setx", Shape::Stack, "set x to %X"},
    OpcodeInfo{"motion_changeyby", Shape::Stack, "change y by %DY"},
    OpcodeInfo{"motion_sety", Shape::Stack, "set y to %Y"},
    OpcodeInfo{"motion_ifonedgebounce", Shape::Stack, "if on edge, bounce"},
    OpcodeInfo{"motion_setrotationstyle", Shape::Stack, "set rotation style %[STYLE]"},
    OpcodeInfo{"motion_xposition", Shape::Reporter, "x position"},
    OpcodeInfo{"motion_yposition", Shape::Reporter, "y position"},
    OpcodeInfo{"motion_direction", Shape::Reporter, "direction"},
    // looks
    OpcodeInfo{"looks_sayforsecs", Shape::Stack, "say %MESSAGE for %SECS seconds"},
    OpcodeInfo{"looks_say", Shape::Stack, "say %MESSAGE"},
    OpcodeInfo{"looks_thinkforsecs", Shape::Stack, "think %MESSAGE for %SECS seconds"},
    OpcodeInfo{"looks_think", Shape::Stack, "think %MESSAGE"},
    OpcodeInfo{"looks_switchcostumeto", Shape::Stack, "switch costume to %COSTUME"},
    OpcodeInfo{"looks_nextcostume", Shape::Stack, "next costume"},
    OpcodeInfo{"looks_switchbackdropto", Shape::Stack, "switch backdrop to %BACKDROP"},
    OpcodeInfo{"looks_switchbackdroptoandwait", Shape::Stack,
               "switch backdrop to %BACKDROP and wait"},
    OpcodeInfo{"looks_nextbackdrop", Shape::Stack, "next backdrop"},
    OpcodeInfo{"looks_changesizeby", Shape::Stack, "change size by %CHANGE"},
    OpcodeInfo{"looks_setsizeto", Shape::Stack, "set size to %SIZE %"},
    OpcodeInfo{"looks_changeeffectby", Shape::Stack, "change %[EFFECT] effect by %CHANGE"},
    OpcodeInfo{"looks_seteffectto", Shape::Stack, "set %[EFFECT] effect to %VALUE"},
    OpcodeInfo{"looks_cleargraphiceffects", Shape::Stack, "clear graphic effects"},
    OpcodeInfo{"looks_show", Shape::Stack, "show"},
    OpcodeInfo{"looks_hide", Shape::Stack, "hide"},
    OpcodeInfo{"looks_gotofrontback", Shape::Stack, "go to %[FRONT_BACK] layer"},
    OpcodeInfo{"looks_goforwardbackwardlayers", Shape::Stack,
               "go %[FORWARD_BACKWARD] %NUM layers"},
    OpcodeInfo{"looks_costumenumbername", Shape::Reporter, "costume %[NUMBER_NAME]"},
    OpcodeInfo{"looks_backdropnumbername", Shape::Reporter, "backdrop %[NUMBER_NAME]"},
    OpcodeInfo{"looks_size", Shape::Reporter, "size"},
    // sound
    OpcodeInfo{"sound_playuntildone", Shape::Stack, "play sound %SOUND_MENU until done"},
    OpcodeInfo{"sound_play", Shape::Stack, "start sound %SOUND_MENU"},
    OpcodeInfo{"sound_stopallsounds", Shape::Stack, "stop all sounds"},
    OpcodeInfo{"sound_changeeffectby", Shape::Stack, "change %[EFFECT] effect by %VALUE"},
    OpcodeInfo{"sound_seteffectto", Shape::Stack, "set %[EFFECT] effect to %VALUE"},
    OpcodeInfo{"sound_cleareffects", Shape::Stack, "clear sound effects"},
    OpcodeInfo{"sound_changevolumeby", Shape::Stack, "change volume by %VOLUME"},
    OpcodeInfo{"sound_setvolumeto", Shape::Stack, "set volume to %VOLUME %"},
    OpcodeInfo{"sound_volume", Shape::Reporter, "volume"},
    // events
    OpcodeInfo{"event_whenflagclicked", Shape::Hat, "when green flag clicked"},
    OpcodeInfo{"event_whenkeypressed", Shape::Hat, "when %[KEY_OPTION] key pressed"},
    OpcodeInfo{"event_whenthisspriteclicked", Shape::Hat, "when this sprite clicked"},
    OpcodeInfo{"event_whenstageclicked", Shape::Hat, "when stage clicked"},
    OpcodeInfo{"event_whenbackdropswitchesto", Shape::Hat, "when backdrop switches to %[BACKDROP]"},
    OpcodeInfo{"event_whengreaterthan", Shape::Hat, "when %[WHENGREATERTHANMENU] > %VALUE"},
    OpcodeInfo{"event_whenbroadcastreceived", Shape::Hat, "when I receive %[BROADCAST_OPTION]"},
    OpcodeInfo{"event_whentouchingobject", Shape::Hat, "when this sprite touches %TOUCHINGOBJECTMENU"},
    OpcodeInfo{"event_broadcast", Shape::Stack, "broadcast %BROADCAST_INPUT"},
    OpcodeInfo{"event_broadcastandwait", Shape::Stack, "broadcast %BROADCAST_INPUT and wait"},
    // control
    OpcodeInfo{"control_wait", Shape::Stack, "wait %DURATION seconds"},
    OpcodeInfo{"control_repeat", Shape::CBlock, "repeat %TIMES"},
    OpcodeInfo{"control_forever", Shape::CBlock, "forever"},
    OpcodeInfo{"control_if", Shape::CBlock, "if %CONDITION then"},
    OpcodeInfo{"control_if_else", Shape::CBlock2, "if %CONDITION then"},
    OpcodeInfo{"control_wait_until", Shape::Stack, "wait until %CONDITION"},
    OpcodeInfo{"control_repeat_until", Shape::CBlock, "repeat until %CONDITION"},
    OpcodeInfo{"control_stop", Shape::Cap, "stop %[STOP_OPTION]"},
    OpcodeInfo{"control_start_as_clone", Shape::Hat, "when I start as a clone"},
    OpcodeInfo{"control_create_clone_of", Shape::Stack, "create clone of %CLONE_OPTION"},
    OpcodeInfo{"control_delete_this_clone", Shape::Cap, "delete this clone"},
    // sensing
    OpcodeInfo{"sensing_touchingobject", Shape::Boolean, "touching %TOUCHINGOBJECTMENU ?"},
    OpcodeInfo{"sensing_touchingcolor", Shape::Boolean, "touching color %COLOR ?"},
    OpcodeInfo{"sensing_coloristouchingcolor", Shape::Boolean, "color %COLOR is touching %COLOR2 ?"},
    OpcodeInfo{"sensing_distanceto", Shape::Reporter, "distance to %DISTANCETOMENU"},
    OpcodeInfo{"sensing_askandwait", Shape::Stack, "ask %QUESTION and wait"},
    OpcodeInfo{"sensing_answer", Shape::Reporter, "answer"},
    OpcodeInfo{"sensing_keypressed", Shape::Boolean, "key %KEY_OPTION pressed?"},
    OpcodeInfo{"sensing_mousedown", Shape::Boolean, "mouse down?"},
    OpcodeInfo{"sensing_mousex", Shape::Reporter, "mouse x"},
    OpcodeInfo{"sensing_mousey", Shape::Reporter, "mouse y"},
    OpcodeInfo{"sensing_setdragmode", Shape::Stack, "set drag mode %[DRAG_MODE]"},
    OpcodeInfo{"sensing_loudness", Shape::Reporter, "loudness"},
    OpcodeInfo{"sensing_timer", Shape::Reporter, "timer"},
    OpcodeInfo{"sensing_resettimer", Shape::Stack, "reset timer"},
    OpcodeInfo{"sensing_of", Shape::Reporter, "%[PROPERTY] of %OBJECT"},
    OpcodeInfo{"sensing_current", Shape::Reporter, "current %[CURRENTMENU]"},
    OpcodeInfo{"sensing_dayssince2000", Shape::Reporter, "days since 2000"},
    OpcodeInfo{"sensing_username", Shape::Reporter, "username"},
    // operators
    OpcodeInfo{"operator_add", Shape::Reporter, "%NUM1 + %NUM2"},
    OpcodeInfo{"operator_subtract", Shape::Reporter, "%NUM1 - %NUM2"},
    OpcodeInfo{"operator_multiply", Shape::Reporter, "%NUM1 * %NUM2"},
    OpcodeInfo{"operator_divide", Shape::Reporter, "%NUM1 / %NUM2"},
    OpcodeInfo{"operator_random", Shape::Reporter, "pick random %FROM to %TO"},
    OpcodeInfo{"operator_gt", Shape::Boolean, "%OPERAND1 > %OPERAND2"},
    OpcodeInfo{"operator_lt", Shape::Boolean, "%OPERAND1 < %OPERAND2"},
    OpcodeInfo{"operator_equals", Shape::Boolean, "%OPERAND1 = %OPERAND2"},
    OpcodeInfo{"operator_and", Shape::Boolean, "%OPERAND1 and %OPERAND2"},
    OpcodeInfo{"operator_or", Shape::Boolean, "%OPERAND1 or %OPERAND2"},
    OpcodeInfo{"operator_not", Shape::Boolean, "not %OPERAND"},
    OpcodeInfo{"operator_join", Shape::Reporter, "join %STRING1 %STRING2"},
    OpcodeInfo{"operator_letter_of", Shape::Reporter, "letter %LETTER of %STRING"},
    OpcodeInfo{"operator_length", Shape::Reporter, "length of %STRING"},
    OpcodeInfo{"operator_contains", Shape::Boolean, "%STRING1 contains %STRING2 ?"},
    OpcodeInfo{"operator_mod", Shape::Reporter, "%NUM1 mod %NUM2"},
    OpcodeInfo{"operator_round", Shape::Reporter, "round %NUM"},
    OpcodeInfo{"operator_mathop", Shape::Reporter, "%[OPERATOR] of %NUM"},
    // data
    OpcodeInfo{"data_setvariableto", Shape::Stack, "set %[VARIABLE] to %VALUE"},
    OpcodeInfo{"data_changevariableby", Shape::Stack, "change %[VARIABLE] by %VALUE"},
    OpcodeInfo{"data_showvariable", Shape::Stack, "show variable %[VARIABLE]"},
    OpcodeInfo{"data_hidevariable", Shape::Stack, "hide variable %[VARIABLE]"},
    OpcodeInfo{"data_addtolist", Shape::Stack, "add %ITEM to %[LIST]"},
    OpcodeInfo{"data_deleteoflist", Shape::Stack, "delete %INDEX of %[LIST]"},
    OpcodeInfo{"data_deletealloflist", Shape::Stack, "delete all of %[LIST]"},
    OpcodeInfo{"data_insertatlist", Shape::Stack, "insert %ITEM at %INDEX of %[LIST]"},
    OpcodeInfo{"data_replaceitemoflist", Shape::Stack, "replace item %INDEX of %[LIST] with %ITEM"},
    OpcodeInfo{"data_showlist", Shape::Stack, "show list %[LIST]"},
    OpcodeInfo{"data_hidelist", Shape::Stack, "hide list %[LIST]"},
    OpcodeInfo{"data_itemoflist", Shape::Reporter, "item %INDEX of %[LIST]"},
    OpcodeInfo{"data_itemnumoflist", Shape::Reporter, "item # of %ITEM in %[LIST]"},
    OpcodeInfo{"data_lengthoflist", Shape::Reporter, "length of %[LIST]"},
    OpcodeInfo{"data_listcontainsitem", Shape::Boolean, "%[LIST] contains %ITEM ?"},
    // procedures; calls and definitions are rendered from their signature
    OpcodeInfo{"procedures_call", Shape::Stack, ""},
    OpcodeInfo{"procedures_definition", Shape::Hat, ""},
    OpcodeInfo{"argument_reporter_string_number", Shape::Reporter, ""},
    OpcodeInfo{"argument_reporter_boolean", Shape::Boolean, ""},
};

bool is_slot_char(char c) {
    return std::isupper(static_cast<unsigned char>(c)) != 0 ||
           std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

const OpcodeInfo* find_opcode(std::string_view opcode) {
    const auto it = std::find_if(kOpcodes.begin(), kOpcodes.end(),
                                 [&](const OpcodeInfo& info) { return info.opcode == opcode; });
    return it == kOpcodes.end() ? nullptr : &*it;
}

std::vector<PatternToken> tokenize_pattern(std::string_view pattern) {
    std::vector<PatternToken> tokens;
    std::string text;
    auto flush = [&] {
        if (!text.empty()) {
            tokens.push_back({PatternToken::Kind::Text, std::move(text)});
            text.clear();
        }
    };
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const char c = pattern[i];
        if (c == '%' && i + 1 < pattern.size() && pattern[i + 1] == '[') {
            const auto close = pattern.find(']', i + 2);
            flush();
            tokens.push_back({PatternToken::Kind::Field,
                              std::string(pattern.substr(i + 2, close - i - 2))});
            i = close;
        } else if (c == '%' && i + 1 < pattern.size() && is_slot_char(pattern[i + 1])) {
            std::size_t end = i + 1;
            while (end < pattern.size() && is_slot_char(pattern[end])) {
                ++end;
            }
            flush();
            tokens.push_back({PatternToken::Kind::Input, std::string(pattern.substr(i + 1, end - i - 1))});
            i = end - 1;
        } else {
            text.push_back(c);
        }
    }
    flush();
    return tokens;
}

std::vector<std::string> pattern_inputs(std::string_view pattern) {
    std::vector<std::string> names;
    for (auto& token : tokenize_pattern(pattern)) {
        if (token.kind == PatternToken::Kind::Input) {
            names.push_back(std::move(token.text));
        }
    }
    return names;
}

bool is_boolean_slot(std::string_view opcode, std::string_view slot) {
    if (slot == "CONDITION") {
        return true;
    }
    if (opcode == "operator_and" || opcode == "operator_or") {
        return slot == "OPERAND1" || slot == "OPERAND2";
    }
    return opcode == "operator_not" && slot == "OPERAND";
}

bool is_hat_opcode(std::string_view opcode) {
    const OpcodeInfo* info = find_opcode(opcode);
    return info != nullptr && info->shape == Shape::Hat;
}

StmtKind classify_statement(std::string_view opcode) {
    if (opcode == "control_repeat") return StmtKind::RepeatTimes;
    if (opcode == "control_repeat_until") return StmtKind::RepeatUntil;
    if (opcode == "control_forever") return StmtKind::Forever;
    if (opcode == "control_if") return StmtKind::IfThen;
    if (opcode == "control_if_else") return StmtKind::IfElse;
    if (opcode == "data_setvariableto") return StmtKind::SetVariable;
    if (opcode == "data_changevariableby") return StmtKind::ChangeVariable;
    if (opcode == "event_broadcast") return StmtKind::Broadcast;
    if (opcode == "event_broadcastandwait") return StmtKind::BroadcastAndWait;
    if (opcode == "looks_switchbackdropto") return StmtKind::SwitchBackdrop;
    if (opcode == "looks_switchbackdroptoandwait") return StmtKind::SwitchBackdropAndWait;
    if (opcode == "procedures_call") return StmtKind::ProcedureCall;
    const OpcodeInfo* info = find_opcode(opcode);
    if (info == nullptr || info->shape == Shape::Reporter || info->shape == Shape::Boolean ||
        info->shape == Shape::Hat) {
        return StmtKind::Opaque;
    }
    if (opcode.starts_with("control_")) {
        return StmtKind::OtherControl;
    }
    return StmtKind::Other;
}

EventKind classify_event(std::string_view opcode) {
    if (opcode == "event_whenflagclicked") return EventKind::GreenFlag;
    if (opcode == "event_whenkeypressed") return EventKind::KeyPressed;
    if (opcode == "event_whenbroadcastreceived") return EventKind::ReceiveMessage;
    if (opcode == "event_whenbackdropswitchesto") return EventKind::BackdropSwitchedTo;
    if (opcode == "event_whenthisspriteclicked") return EventKind::SpriteClicked;
    if (opcode == "event_whenstageclicked") return EventKind::StageClicked;
    if (opcode == "control_start_as_clone") return EventKind::CloneStart;
    return EventKind::Other;
}

std::optional<std::string_view> event_payload_field(std::string_view opcode) {
    if (opcode == "event_whenkeypressed") return "KEY_OPTION";
    if (opcode == "event_whenbroadcastreceived") return "BROADCAST_OPTION";
    if (opcode == "event_whenbackdropswitchesto") return "BACKDROP";
    return std::nullopt;
}

std::optional<std::string_view> number_literal_field(std::string_view opcode) {
    if (opcode == "math_number" || opcode == "math_positive_number" ||
        opcode == "math_whole_number" || opcode == "math_integer" || opcode == "math_angle") {
        return "NUM";
    }
    return std::nullopt;
}

std::optional<std::string_view> string_literal_field(std::string_view opcode) {
    if (opcode == "text") return "TEXT";
    if (opcode == "colour_picker") return "COLOUR";
    return std::nullopt;
}

std::string display_menu_value(std::string_view value) {
    if (value == "_random_") return "random position";
    if (value == "_mouse_") return "mouse-pointer";
    if (value == "_edge_") return "edge";
    if (value == "_myself_") return "myself";
    if (value == "_stage_") return "Stage";
    return std::string(value);
}

std::vector<ParamType> signature_params(std::string_view proccode) {
    std::vector<ParamType> params;
    for (std::size_t i = 0; i + 1 < proccode.size(); ++i) {
        if (proccode[i] != '%') {
            continue;
        }
        const char spec = proccode[i + 1];
        if (spec == 's' || spec == 'n') {
            params.push_back(ParamType::NumberOrText);
            ++i;
        } else if (spec == 'b') {
            params.push_back(ParamType::Boolean);
            ++i;
        }
    }
    return params;
}

bool looks_numeric(std::string_view text) {
    std::size_t i = 0;
    if (i < text.size() && text[i] == '-') {
        ++i;
    }
    std::size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0) {
        ++i;
        ++digits;
    }
    if (digits == 0) {
        return false;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        std::size_t frac = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0) {
            ++i;
            ++frac;
        }
        if (frac == 0) {
            return false;
        }
    }
    return i == text.size();
}

}  // namespace qlc::detail
