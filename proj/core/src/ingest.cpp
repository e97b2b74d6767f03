#include "semrl/ingest.hpp"

#include "semrl/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace semrl {

namespace {

// days since 1970-01-01 for a civil date (proleptic Gregorian)
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(std::string("cannot open ") + what + " file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(std::string_view sv) {
    std::size_t b = 0, e = sv.size();
    while (b < e && std::isspace(static_cast<unsigned char>(sv[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(sv[e - 1]))) --e;
    return std::string(sv.substr(b, e - b));
}

std::vector<std::string> split(std::string_view sv, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= sv.size(); ++i) {
        if (i == sv.size() || sv[i] == sep) {
            out.emplace_back(sv.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

double parse_value(const std::string& tok, const std::string& where) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(where, "bad numeric value \"" + tok + "\"");
    if (!std::isfinite(v)) throw ParseError(where, "value must be finite");
    return v;
}

} // namespace

void DiscretizationScheme::check() const {
    if (window_seconds <= 0) throw Error("window must be > 0");
    if (precision < 0) throw Error("precision must be >= 0");
    if (precision > 9) throw Error("precision must be <= 9");
    if (attribute_bins < 1) throw Error("attribute_bins must be >= 1");
}

std::int64_t parse_timestamp(std::string_view text) {
    std::string s = trim(text);
    if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) s.pop_back();

    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    int n = 0;
    int fields = std::sscanf(s.c_str(), "%d-%d-%d%*1[T ]%d:%d:%d%n", &y, &mo, &d, &h, &mi, &sec, &n);
    if (fields < 3 || (fields >= 3 && fields < 6)) {
        // retry the shorter forms
        h = mi = sec = 0;
        n = 0;
        fields = std::sscanf(s.c_str(), "%d-%d-%d%*1[T ]%d:%d%n", &y, &mo, &d, &h, &mi, &n);
        if (fields < 5) {
            h = mi = 0;
            n = 0;
            fields = std::sscanf(s.c_str(), "%d-%d-%d%n", &y, &mo, &d, &n);
            if (fields < 3) throw Error("bad timestamp \"" + std::string(text) + "\"");
        }
    }
    if (static_cast<std::size_t>(n) != s.size())
        throw Error("bad timestamp \"" + std::string(text) + "\"");
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59 || sec < 0 || sec > 60)
        throw Error("bad timestamp \"" + std::string(text) + "\"");
    return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + sec;
}

std::int64_t floor_to_midnight_utc(std::int64_t t) {
    std::int64_t day = t / 86400;
    if (t % 86400 < 0) --day;
    return day * 86400;
}

std::string discretize_value(double value, int precision) {
    double scale = std::pow(10.0, precision);
    long long scaled = std::llround(value * scale); // llround = half away from zero
    if (precision == 0) return std::to_string(scaled);

    long long mag = scaled < 0 ? -scaled : scaled;
    long long div = 1;
    for (int i = 0; i < precision; ++i) div *= 10;
    std::string frac = std::to_string(mag % div);
    frac.insert(0, precision - frac.size(), '0');
    std::string out = scaled < 0 ? "-" : "";
    out += std::to_string(mag / div) + "." + frac;
    return out;
}

MeasurementSeries parse_measurements(std::string_view text, const SensorMap& sensors) {
    MeasurementSeries series;

    std::map<std::string, Quantity> quantity_of;
    for (const auto& e : sensors.entries) quantity_of[e.sensor_id] = e.quantity;

    std::size_t lineno = 0;
    bool header_seen = false;
    for (const auto& raw : split(text, '\n')) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "timestamp,sensor_id,value")
                throw ParseError("measurements line 1", "expected header timestamp,sensor_id,value");
            header_seen = true;
            continue;
        }
        std::string where = "measurements line " + std::to_string(lineno);
        auto cols = split(line, ',');
        if (cols.size() != 3) throw ParseError(where, "expected 3 columns, got " + std::to_string(cols.size()));

        MeasurementRecord r;
        try {
            r.timestamp = parse_timestamp(cols[0]);
        } catch (const Error& e) {
            throw ParseError(where, e.what());
        }
        r.sensor_id = trim(cols[1]);
        auto q = quantity_of.find(r.sensor_id);
        if (q == quantity_of.end())
            throw ParseError(where, "unknown sensor id \"" + r.sensor_id + "\"");
        r.quantity = q->second;
        r.value = parse_value(trim(cols[2]), where);
        series.records.push_back(std::move(r));
    }
    if (!header_seen) throw ParseError("measurements", "empty file (header line required)");

    std::stable_sort(series.records.begin(), series.records.end(),
                     [](const MeasurementRecord& a, const MeasurementRecord& b) {
                         return a.timestamp < b.timestamp;
                     });
    return series;
}

namespace {

MeasurementSeries load_from_manifest(const std::string& manifest_path, const SensorMap& sensors) {
    namespace fs = std::filesystem;
    std::string text = read_file(manifest_path, "manifest");
    fs::path base = fs::path(manifest_path).parent_path();

    std::map<std::string, Quantity> quantity_of;
    for (const auto& e : sensors.entries) quantity_of[e.sensor_id] = e.quantity;

    MeasurementSeries series;
    std::size_t lineno = 0;
    bool header_seen = false;
    for (const auto& raw : split(text, '\n')) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (!header_seen) {
            header_seen = true; // caller verified the header
            continue;
        }
        auto cols = split(line, ',');
        if (cols.size() != 2)
            throw ParseError("manifest line " + std::to_string(lineno),
                             "expected 2 columns, got " + std::to_string(cols.size()));
        std::string file = trim(cols[0]);
        std::string sensor_id = trim(cols[1]);
        auto q = quantity_of.find(sensor_id);
        if (q == quantity_of.end())
            throw ParseError("manifest line " + std::to_string(lineno),
                             "unknown sensor id \"" + sensor_id + "\"");

        std::string node_text = read_file((base / file).string(), "measurement");
        std::size_t node_lineno = 0;
        bool node_header = false;
        for (const auto& nraw : split(node_text, '\n')) {
            ++node_lineno;
            std::string nline = trim(nraw);
            if (nline.empty()) continue;
            if (!node_header) {
                if (nline != "timestamp,value")
                    throw ParseError(file + " line 1", "expected header timestamp,value");
                node_header = true;
                continue;
            }
            std::string where = file + " line " + std::to_string(node_lineno);
            auto ncols = split(nline, ',');
            if (ncols.size() != 2)
                throw ParseError(where, "expected 2 columns, got " + std::to_string(ncols.size()));
            MeasurementRecord r;
            try {
                r.timestamp = parse_timestamp(ncols[0]);
            } catch (const Error& e) {
                throw ParseError(where, e.what());
            }
            r.sensor_id = sensor_id;
            r.quantity = q->second;
            r.value = parse_value(trim(ncols[1]), where);
            series.records.push_back(std::move(r));
        }
    }

    std::stable_sort(series.records.begin(), series.records.end(),
                     [](const MeasurementRecord& a, const MeasurementRecord& b) {
                         return a.timestamp < b.timestamp;
                     });
    return series;
}

} // namespace

MeasurementSeries load_measurements(const std::string& path, const SensorMap& sensors) {
    std::string text = read_file(path, "measurements");
    // first non-empty line decides: plain measurement CSV or per-node manifest
    for (const auto& raw : split(std::string_view(text), '\n')) {
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line == "file,sensor_id") return load_from_manifest(path, sensors);
        break;
    }
    return parse_measurements(text, sensors);
}

MeasurementSeries filter_quantities(MeasurementSeries series, const std::vector<Quantity>& keep) {
    if (keep.empty()) return series;
    auto kept = [&](Quantity q) { return std::find(keep.begin(), keep.end(), q) != keep.end(); };
    std::erase_if(series.records, [&](const MeasurementRecord& r) { return !kept(r.quantity); });
    return series;
}

TransactionDB discretize(const MeasurementSeries& series, const DiscretizationScheme& scheme) {
    scheme.check();
    if (series.records.empty()) return {};

    std::int64_t min_ts = series.records.front().timestamp;
    for (const auto& r : series.records) min_ts = std::min(min_ts, r.timestamp);
    const std::int64_t origin = floor_to_midnight_utc(min_ts);

    // (window index, sensor) -> values; values are sorted before summing so
    // the mean is invariant under within-window permutation of the input
    struct Group {
        Quantity quantity;
        std::vector<double> values;
    };
    std::map<std::pair<std::int64_t, std::string>, Group> groups;
    for (const auto& r : series.records) {
        std::int64_t w = (r.timestamp - origin) / scheme.window_seconds;
        auto& g = groups[{w, r.sensor_id}];
        g.quantity = r.quantity;
        g.values.push_back(r.value);
    }

    std::map<std::int64_t, Transaction> windows;
    for (auto& [key, group] : groups) {
        std::sort(group.values.begin(), group.values.end());
        double sum = 0.0;
        for (double v : group.values) sum += v;
        double mean = sum / static_cast<double>(group.values.size());

        Transaction& t = windows[key.first];
        t.window_start = origin + key.first * scheme.window_seconds;
        t.items.push_back(Item::measurement(key.second, std::string(to_string(group.quantity)),
                                            discretize_value(mean, scheme.precision)));
    }

    TransactionDB db;
    db.reserve(windows.size());
    for (auto& [w, t] : windows) {
        normalize(t.items);
        db.push_back(std::move(t));
    }
    return db;
}

} // namespace semrl
