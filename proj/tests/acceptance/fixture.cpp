#include "fixture.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace fixture {

namespace {

// Hanoi water network link table (1 = reservoir, 2..32 = junctions)
constexpr int kLinks[34][2] = {
    {1, 2},   {2, 3},   {3, 4},   {4, 5},   {5, 6},   {6, 7},   {7, 8},   {8, 9},  {9, 10},
    {10, 11}, {11, 12}, {12, 13}, {10, 14}, {14, 15}, {15, 16}, {16, 17}, {17, 18}, {18, 19},
    {19, 3},  {3, 20},  {20, 21}, {21, 22}, {20, 23}, {23, 24}, {24, 25}, {26, 25}, {27, 26},
    {16, 27}, {23, 28}, {28, 29}, {29, 30}, {30, 31}, {31, 32}, {25, 32}};

constexpr int kFlowPipes[3] = {1, 10, 20};
constexpr int kDaysPerYear = 365;
constexpr int kFirstDay = 18628;  // 2021-01-01 in days since epoch

void civil_from_days(long long z, int& y, int& m, int& d) {
    z += 719468;
    const long long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long long yr = static_cast<long long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = static_cast<int>(yr + (m <= 2));
}

std::string day_stamp(int day_index, const char* clock) {
    int y, m, d;
    civil_from_days(kFirstDay + day_index, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %s", y, m, d, clock);
    return buf;
}

// Decorrelated per-(sensor, day) wobble; synchronized noise would make every
// noise level pair co-occur year-round and blow the itemset lattice up.
int wobble(std::uint64_t a, std::uint64_t b, int span) {
    std::uint64_t x = a * 0x9E3779B97F4A7C15ull + b * 0xBF58476D1CE4E5B9ull;
    x ^= x >> 30;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return static_cast<int>(x % static_cast<std::uint64_t>(span));
}

// Planted daily levels. Junctions carry one pressure and one consumption
// sensor each; a handful follow regime patterns that create co-occurrences
// at specific support levels, the rest wobble on bases far enough apart
// that levels never collide across sensors.
int pressure_level(int junction, int day) {
    switch (junction) {
    case 3: return day < 183 ? 200 : 210;        // half-year regimes
    case 6: return 500 + day / 122;              // thirds of the year
    case 4: return 300 + std::min(day / 91, 3);  // seasons
    case 5: return 400 + std::min(day / 91, 3);
    default:
        return 1000 + 17 * junction + wobble(junction, day, 5) - 2;
    }
}

int consumption_level(int junction, int day) {
    switch (junction) {
    case 3: return day < 183 ? 90 : 95;
    case 6: return 60 + 5 * (day / 122);
    case 4: return 80 + std::min(day / 91, 3);
    default:
        return 2000 + 13 * junction + wobble(junction + 100, day, 5) - 2;
    }
}

int flow_level(int pipe, int day) {
    return 3000 + 10 * pipe + wobble(pipe + 200, day, 3) - 1;
}

} // namespace

YearDataset make_year_dataset(const Renamer& rename) {
    auto name = [&](const std::string& id) { return rename ? rename(id) : id; };
    auto junction_id = [&](int n) { return name("J" + std::to_string(n)); };
    auto pipe_id = [&](int n) { return name("P" + std::to_string(n)); };
    auto node_id = [&](int n) { return n == 1 ? name("R1") : junction_id(n); };

    semrl::NetworkModel model;
    for (int n = 2; n <= 32; ++n) {
        semrl::Junction j;
        j.id = junction_id(n);
        j.elevation = 8.0 + (n * 37 % 23) * 0.5;
        j.base_demand = 40.0 + (n * 17 % 29) * 6.25;
        model.junctions.push_back(std::move(j));
    }
    model.reservoirs.push_back({name("R1"), 100.0});
    for (int i = 0; i < 34; ++i) {
        semrl::Pipe p;
        p.id = pipe_id(i + 1);
        p.from_node = node_id(kLinks[i][0]);
        p.to_node = node_id(kLinks[i][1]);
        p.length = 100.0 + ((i + 1) * 211 % 33) * 100.0;
        static const double diameters[6] = {300, 400, 500, 600, 762, 1016};
        p.diameter = diameters[(i + 1) * 7 % 6];
        p.roughness = 130.0;
        model.pipes.push_back(std::move(p));
    }

    YearDataset out;
    out.inp_text = semrl::to_inp(model);

    std::ostringstream sensors;
    sensors << "sensor_id,sensor_class,host_component,quantity\n";
    for (int n = 2; n <= 32; ++n)
        sensors << name("wps_J" + std::to_string(n)) << ",WaterPressureSensor," << junction_id(n)
                << ",pressure\n";
    for (int n = 2; n <= 32; ++n)
        sensors << name("wcs_J" + std::to_string(n)) << ",WaterConsumptionSensor," << junction_id(n)
                << ",demand\n";
    for (int p : kFlowPipes)
        sensors << name("fs_P" + std::to_string(p)) << ",FlowSensor," << pipe_id(p) << ",flow\n";
    out.sensors_csv = sensors.str();

    std::ostringstream rows;
    rows << "timestamp,sensor_id,value\n";
    auto emit = [&](int day, const std::string& sensor, int level) {
        rows << day_stamp(day, "06:00") << "," << sensor << "," << (level - 0.2) << "\n";
        rows << day_stamp(day, "18:00") << "," << sensor << "," << (level + 0.2) << "\n";
    };
    for (int day = 0; day < kDaysPerYear; ++day) {
        for (int n = 2; n <= 32; ++n) {
            emit(day, name("wps_J" + std::to_string(n)), pressure_level(n, day));
            emit(day, name("wcs_J" + std::to_string(n)), consumption_level(n, day));
        }
        for (int p : kFlowPipes) emit(day, name("fs_P" + std::to_string(p)), flow_level(p, day));
    }
    out.measurements_csv = rows.str();
    return out;
}

} // namespace fixture
