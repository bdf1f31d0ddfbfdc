// Fixture DSL that writes real Scratch 3 project.json text, so tests exercise
// the same parser path as files saved by the Scratch editor.
//
//   ProjectBuilder p;
//   p.stage().variable("score");
//   p.sprite("Cat").script({when_flag(), repeat(num(10), {move(num(5))})});
//   qlc::Project project = p.parse();

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qlc/ast.hpp"

namespace fx {

struct B;

/// Value placed in an input slot.
struct In {
    enum class Kind { Empty, Number, Text, Variable, List, Block, Menu, Broadcast };
    Kind kind = Kind::Empty;
    std::string value;              // literal, variable/list name, menu value
    std::string menu_opcode;        // shadow opcode for Menu
    std::string menu_field;         // shadow field for Menu
    std::shared_ptr<B> block;       // reporter for Block
};

/// Block spec. Hats, statements and reporters share this shape.
struct B {
    std::string opcode;
    std::vector<std::pair<std::string, In>> inputs;
    std::vector<std::pair<std::string, std::string>> fields;
    std::vector<std::vector<B>> substacks;
    // procedures
    std::string proccode;
    std::vector<std::string> arg_names;
    std::vector<std::string> arg_ids;
    bool warp = false;
};

using Stack = std::vector<B>;

// ---------------------------------------------------------------- inputs
In empty();
In num(const std::string& v);
In num(double v);
In text(const std::string& v);
In var(const std::string& name);
In list(const std::string& name);
In menu(const std::string& opcode, const std::string& field, const std::string& value);
In rep(B block);

// ---------------------------------------------------------------- hats
B when_flag();
B when_key(const std::string& key);
B when_receive(const std::string& message);
B when_backdrop(const std::string& backdrop);
B when_clicked();
B when_stage_clicked();
B when_clone();

// ---------------------------------------------------------------- control
B repeat(In times, Stack body);
B repeat_until(In condition, Stack body);
B forever(Stack body);
B if_then(In condition, Stack body);
B if_else(In condition, Stack then_body, Stack else_body);
B wait(In seconds);
B wait_until(In condition);
B stop_all();

// ---------------------------------------------------------------- statements
B move(In steps);
B turn(In degrees);
B go_to_random();
B go_to_xy(In x, In y);
B change_x(In dx);
B say(In message);
B think(In message);
B show();
B hide();
B next_costume();
B play_sound(const std::string& sound);
B set_var(const std::string& name, In value);
B change_var(const std::string& name, In by);
B add_to_list(const std::string& name, In item);
B broadcast(const std::string& message);
B broadcast_wait(const std::string& message);
B switch_backdrop(const std::string& backdrop);
B switch_backdrop_wait(const std::string& backdrop);
B call(const std::string& proccode, std::vector<In> args = {});
B define(const std::string& proccode, std::vector<std::string> arg_names, Stack body);
B raw(const std::string& opcode);  // anything, e.g. an extension block

// ---------------------------------------------------------------- reporters
B equals(In a, In b);
B gt(In a, In b);
B lt(In a, In b);
B and_(In a, In b);
B or_(In a, In b);
B not_(In a);
B add(In a, In b);
B touching_mouse();
B touching_edge();
B key_pressed(const std::string& key);
B mouse_down();
B x_position();
B timer();
B pick_random(In from, In to);
B arg(const std::string& name);
B arg_bool(const std::string& name);

class ProjectBuilder;

class TargetBuilder {
public:
    TargetBuilder(std::string name, bool stage) : name_(std::move(name)), stage_(stage) {}

    TargetBuilder& variable(const std::string& name, const std::string& value = "0");
    TargetBuilder& list(const std::string& name);
    TargetBuilder& broadcast_decl(const std::string& name);
    TargetBuilder& backdrop(const std::string& name);
    TargetBuilder& layer(int order);
    /// A top-level stack; a leading hat makes it an event script.
    TargetBuilder& script(Stack blocks);
    /// A loose block with no hat and nothing attached.
    TargetBuilder& loose(B block);

    [[nodiscard]] const std::string& name() const { return name_; }

private:
    friend class ProjectBuilder;
    std::string name_;
    bool stage_;
    int layer_ = -1;
    std::vector<std::pair<std::string, std::string>> variables_;
    std::vector<std::string> lists_;
    std::vector<std::string> broadcasts_;
    std::vector<std::string> backdrops_;
    std::vector<Stack> scripts_;
};

class ProjectBuilder {
public:
    ProjectBuilder();

    TargetBuilder& stage() { return *targets_.front(); }
    /// Adds a sprite, or returns the existing one with that name.
    TargetBuilder& sprite(const std::string& name);

    [[nodiscard]] std::string json() const;
    [[nodiscard]] qlc::Project parse(const std::string& id = "fixture") const;
    /// .sb3 archive bytes holding project.json.
    [[nodiscard]] std::string sb3(bool deflate = true) const;

private:
    std::vector<std::unique_ptr<TargetBuilder>> targets_;
};

/// The "catch" game: one sprite, a green-flag script with a
/// repeat-until loop on `catches = 5`, then a backdrop switch.
ProjectBuilder catch_game();

}  // namespace fx
