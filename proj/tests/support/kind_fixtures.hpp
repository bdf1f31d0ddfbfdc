// One minimal project per question kind producing exactly one instance, and
// a near-miss project producing none.

#pragma once

#include <functional>
#include <vector>

#include "fixtures.hpp"
#include "qlc/question.hpp"

namespace fx {

struct KindFixture {
    qlc::QuestionKind kind;
    std::function<ProjectBuilder()> positive;
    std::function<ProjectBuilder()> negative;
};

/// All thirty, in kind number order.
const std::vector<KindFixture>& kind_fixtures();

}  // namespace fx
