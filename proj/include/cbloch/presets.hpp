#pragma once

#include "cbloch/scenario.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cbloch {

// Golden-ratio conjugate / 2, the irrational drive ratio of the presets.
inline constexpr double kIrrationalRatio = 0.30901699437494745;

struct Preset {
    std::string name;
    std::vector<Scenario> scenarios;
    std::vector<Sweep> sweeps;

    std::vector<Experiment> experiments() const;
};

const std::vector<std::string>& preset_names();

// fig1a, fig1b, fig2, fig3, fig4 or fig5. Throws ConfigError otherwise.
Preset preset(std::string_view name);

} // namespace cbloch
