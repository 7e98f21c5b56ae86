#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "onell/algorithms.hpp"

namespace onell {

struct Preset {
    std::string name;
    AlgorithmSpec algorithm;
    std::string description;
};

/// Named configurations: dyn-default, dyn-C, dyn-C2, the tuned (A,b) rows and the tuned
/// static rows for n = 500 and n = 1000, and plain rls.
const std::vector<Preset>& presets();

std::optional<AlgorithmSpec> find_preset(std::string_view name);

} // namespace onell
