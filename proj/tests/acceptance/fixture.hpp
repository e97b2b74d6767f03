#pragma once

#include "semrl/inp.hpp"

#include <functional>
#include <string>

namespace fixture {

/// Year-long synthetic dataset over a Hanoi-shaped network: 31 junctions,
/// 1 reservoir, 34 pipes, 65 sensors, 365 days x 2 readings per sensor.
/// Value patterns are deterministic; `rename` remaps every component and
/// sensor id (identity by default) without touching any value.
struct YearDataset {
    std::string inp_text;
    std::string sensors_csv;
    std::string measurements_csv;
};

using Renamer = std::function<std::string(const std::string&)>;

YearDataset make_year_dataset(const Renamer& rename = nullptr);

} // namespace fixture
