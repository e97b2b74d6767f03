#pragma once

#include "semrl/items.hpp"
#include "semrl/kg.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace semrl {

struct MeasurementRecord {
    std::int64_t timestamp = 0;  // unix seconds, UTC
    std::string sensor_id;
    Quantity quantity = Quantity::Pressure;
    double value = 0.0;
    friend bool operator==(const MeasurementRecord&, const MeasurementRecord&) = default;
};

/// Raw time-series rows, sorted by timestamp after load (stable, so
/// per-sensor order is non-decreasing).
struct MeasurementSeries {
    std::vector<MeasurementRecord> records;
};

struct DiscretizationScheme {
    std::int64_t window_seconds = 24 * 3600;
    int precision = 0;       // decimal places kept in the aggregated level
    int attribute_bins = 5;  // equal-width bins for graph attribute values

    void check() const;
};

/// "2017-01-03", "2017-01-03 06:30", "2017-01-03T06:30:15", optional 'Z'.
std::int64_t parse_timestamp(std::string_view text);

/// Midnight UTC of the day containing `t`.
std::int64_t floor_to_midnight_utc(std::int64_t t);

/// Round half away from zero at `precision` decimals and render the level
/// with exactly `precision` fractional digits ("43", "43.0", "-2.5").
std::string discretize_value(double value, int precision);

/// Measurement CSV, header: timestamp,sensor_id,value. Every sensor_id must
/// appear in the sensor map (it supplies the quantity).
MeasurementSeries parse_measurements(std::string_view text, const SensorMap& sensors);

/// Single-file loader; also accepts a per-node manifest (header
/// `file,sensor_id`, paths relative to the manifest) whose per-node files
/// are 2-column CSVs with header `timestamp,value`.
MeasurementSeries load_measurements(const std::string& path, const SensorMap& sensors);

/// Keep only the given quantities (empty filter keeps everything).
MeasurementSeries filter_quantities(MeasurementSeries series, const std::vector<Quantity>& keep);

/// One transaction per window with data, one Measurement item per
/// (sensor, window) pair, level = round(mean over the window, precision).
/// Windows are aligned to the first timestamp's midnight UTC; empty windows
/// are dropped.
TransactionDB discretize(const MeasurementSeries& series, const DiscretizationScheme& scheme);

} // namespace semrl
