#pragma once

// Wall-clock cost of drawing a token and hashing it.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace deauthguard {

struct TimingStats {
    double mean_s = 0;
    double min_s = 0;
    double p50_s = 0;
    double p90_s = 0;
    double p99_s = 0;
    double max_s = 0;
};

struct BenchReport {
    std::size_t iterations = 0;
    TimingStats uuid;
    TimingStats sha512;
    TimingStats total;

    double uuid_mean_s() const { return uuid.mean_s; }
    double sha512_mean_s() const { return sha512.mean_s; }
    /// mean(generate_token) + mean(hash_token).
    double total_mean_s() const { return uuid.mean_s + sha512.mean_s; }
};

/// Published per-operation timings on embedded boards, shown for comparison.
struct ReferenceRow {
    std::string_view device;
    double uuid_s;
    double sha512_s;
    double total_s;
};

inline constexpr std::array<ReferenceRow, 2> kReferenceRows{{
    {"Raspberry Pi 3 Model B", 0.076341, 0.117223, 0.193564},
    {"ESP8266", 0.058025, 0.123348, 0.181373},
}};

inline constexpr std::size_t kMinBenchIterations = 100;

/// Throws std::invalid_argument when iterations < kMinBenchIterations.
BenchReport run_bench(std::size_t iterations);

std::string bench_to_table(const BenchReport& report);
std::string bench_to_json(const BenchReport& report);

}  // namespace deauthguard
