#include "deauthguard/bench.hpp"

#include "deauthguard/token.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace deauthguard {

namespace {

// Keeps the hash live under optimization.
volatile std::uint8_t g_sink = 0;

TimingStats summarize(std::vector<double> samples) {
    TimingStats s;
    std::sort(samples.begin(), samples.end());
    auto pct = [&](double p) {
        auto idx = static_cast<std::size_t>(p * static_cast<double>(samples.size() - 1) + 0.5);
        return samples[std::min(idx, samples.size() - 1)];
    };
    s.mean_s = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
    s.min_s = samples.front();
    s.p50_s = pct(0.50);
    s.p90_s = pct(0.90);
    s.p99_s = pct(0.99);
    s.max_s = samples.back();
    return s;
}

nlohmann::ordered_json stats_json(const TimingStats& s) {
    return {{"mean_s", s.mean_s}, {"min_s", s.min_s}, {"p50_s", s.p50_s},
            {"p90_s", s.p90_s},   {"p99_s", s.p99_s}, {"max_s", s.max_s}};
}

}  // namespace

BenchReport run_bench(std::size_t iterations) {
    if (iterations < kMinBenchIterations)
        throw std::invalid_argument("bench needs at least " + std::to_string(kMinBenchIterations) + " iterations");

    using Clock = std::chrono::steady_clock;
    std::vector<double> uuid_s(iterations), hash_s(iterations), total_s(iterations);
    std::uint8_t sink = 0;

    for (std::size_t i = 0; i < iterations; ++i) {
        auto t0 = Clock::now();
        Token token = generate_token();
        auto t1 = Clock::now();
        Digest digest = hash_token(token);
        auto t2 = Clock::now();
        sink ^= digest.bytes()[i % Digest::kSize];
        uuid_s[i] = std::chrono::duration<double>(t1 - t0).count();
        hash_s[i] = std::chrono::duration<double>(t2 - t1).count();
        total_s[i] = std::chrono::duration<double>(t2 - t0).count();
    }
    g_sink = sink;

    BenchReport report;
    report.iterations = iterations;
    report.uuid = summarize(std::move(uuid_s));
    report.sha512 = summarize(std::move(hash_s));
    report.total = summarize(std::move(total_s));
    return report;
}

std::string bench_to_table(const BenchReport& r) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%-16s %18s %18s %18s\n", "Task", "This machine (s)",
                  "Raspberry Pi (s)", "ESP8266 (s)");
    out += line;
    auto row = [&](const char* task, double here, double pi, double esp) {
        std::snprintf(line, sizeof line, "%-16s %18.9f %18.6f %18.6f\n", task, here, pi, esp);
        out += line;
    };
    const auto& pi = kReferenceRows[0];
    const auto& esp = kReferenceRows[1];
    row("Generating UUID", r.uuid.mean_s, pi.uuid_s, esp.uuid_s);
    row("SHA-512 Hashing", r.sha512.mean_s, pi.sha512_s, esp.sha512_s);
    row("Total Time", r.uuid.mean_s + r.sha512.mean_s, pi.total_s, esp.total_s);

    std::snprintf(line, sizeof line, "\n%zu iterations; per-iteration total p50 %.9f s, p99 %.9f s, max %.9f s\n",
                  r.iterations, r.total.p50_s, r.total.p99_s, r.total.max_s);
    out += line;
    return out;
}

std::string bench_to_json(const BenchReport& r) {
    nlohmann::ordered_json j;
    j["iterations"] = r.iterations;
    j["uuid_mean_s"] = r.uuid.mean_s;
    j["sha512_mean_s"] = r.sha512.mean_s;
    j["total_mean_s"] = r.uuid.mean_s + r.sha512.mean_s;
    j["uuid"] = stats_json(r.uuid);
    j["sha512"] = stats_json(r.sha512);
    j["total"] = stats_json(r.total);
    auto refs = nlohmann::ordered_json::array();
    for (const auto& ref : kReferenceRows)
        refs.push_back({{"device", ref.device}, {"uuid_s", ref.uuid_s}, {"sha512_s", ref.sha512_s}, {"total_s", ref.total_s}});
    j["reference"] = refs;
    return j.dump(2);
}

}  // namespace deauthguard
