#include "onell/presets.hpp"

#include <cmath>

namespace onell {

const std::vector<Preset>& presets()
{
    static const std::vector<Preset> registry = [] {
        const double A_default = std::pow(1.5, 0.25);
        const double b_default = 2.0 / 3.0;
        return std::vector<Preset> {
            {"dyn-default", DynConfig {1.0, 1.0, 1.0, A_default, b_default}, "dyn(1, 1, 1, (3/2)^(1/4), 2/3)"},
            {"dyn-C", DynConfig {0.45, 1.6, 1.0, 1.16, 0.7}, "dyn(0.45, 1.6, 1, 1.16, 0.7)"},
            {"dyn-C2", DynConfig {0.5, 2.0, 0.5, A_default, b_default}, "dyn(1/2, 2, 1/2, (3/2)^(1/4), 2/3)"},
            {"dyn-Ab-heatmap", DynConfig {1.0, 1.0, 1.0, 1.06, 0.82}, "best heatmap cell at n = 1000"},
            {"dyn-Ab-1000", DynConfig {1.0, 1.0, 1.0, 1.07, 0.79}, "tuned dyn(1, 1, 1, A, b) at n = 1000"},
            {"stat-500", StaticConfig {6, 49, 7, 0.0151}, "tuned stat(6, 49, 7, 0.0151) at n = 500"},
            {"stat-1000", StaticConfig {5, 60, 7, 0.0143}, "tuned stat(5, 60, 7, 0.0143) at n = 1000"},
            {"rls", RlsConfig {}, "randomized local search"},
        };
    }();
    return registry;
}

std::optional<AlgorithmSpec> find_preset(std::string_view name)
{
    for (const auto& p : presets())
        if (p.name == name)
            return p.algorithm;
    return std::nullopt;
}

} // namespace onell
