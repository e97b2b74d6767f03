#pragma once

#include "semrl/items.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

namespace testutil {

inline std::string data_path(const std::string& name) {
    return std::string(SEMRL_TEST_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::string out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return out;
}

/// Scratch directory removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("semrl_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    out << body;
}

/// Measurement-only transaction over plain item names, for miner tests where
/// the item payload is irrelevant.
inline semrl::Transaction tx(std::initializer_list<const char*> names, std::int64_t window = 0) {
    semrl::Transaction t;
    t.window_start = window;
    for (const char* n : names) t.items.push_back(semrl::Item::measurement(n, "pressure", "1"));
    semrl::normalize(t.items);
    return t;
}

/// Random transaction db over `n_items` single-letter items.
inline semrl::TransactionDB random_db(std::mt19937& rng, int n_transactions, int n_items,
                                      double density) {
    semrl::TransactionDB db;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 0; i < n_transactions; ++i) {
        semrl::Transaction t;
        t.window_start = i * 86400;
        for (int j = 0; j < n_items; ++j) {
            if (coin(rng) < density)
                t.items.push_back(semrl::Item::measurement("s" + std::to_string(j), "pressure", "1"));
        }
        if (t.items.empty())
            t.items.push_back(semrl::Item::measurement("s0", "pressure", "1"));
        semrl::normalize(t.items);
        db.push_back(std::move(t));
    }
    return db;
}

} // namespace testutil
