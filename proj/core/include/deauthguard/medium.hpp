#pragma once

// Deterministic discrete-event broadcast medium. Frames are opaque bytes;
// routing reads only the destination MAC, so source spoofing is free.

#include "deauthguard/bytes.hpp"
#include "deauthguard/frame.hpp"

#include <cstdint>
#include <deque>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace deauthguard {

struct MediumConfig {
    double loss_probability = 0.0;
    std::uint64_t seed = 0;
    /// Endpoint ids that receive a copy of every frame.
    std::vector<std::string> promiscuous_taps;
    std::uint64_t max_ticks = 100000;
};

enum class EventKind : std::uint8_t { Delivered, Dropped, Injected, Sniffed };

std::string_view to_string(EventKind kind);

struct MediumEvent {
    std::uint64_t tick = 0;
    EventKind kind = EventKind::Delivered;
    Bytes frame_bytes;
    std::string from;
    std::string to;

    friend bool operator==(const MediumEvent&, const MediumEvent&) = default;
};

/// {"tick":..,"kind":..,"from":..,"to":..,"frame":"<hex>"} without trailing newline.
std::string to_json_line(const MediumEvent& event);
/// One line per event, each newline-terminated.
std::string to_jsonl(const std::vector<MediumEvent>& events);

class MediumError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};
class DuplicateEndpoint : public MediumError {
    using MediumError::MediumError;
};
class Detached : public MediumError {
    using MediumError::MediumError;
};
class TickLimitExceeded : public MediumError {
    using MediumError::MediumError;
};

struct EndpointHandle {
    std::size_t index = 0;
    friend bool operator==(const EndpointHandle&, const EndpointHandle&) = default;
};

class Medium;

struct Delivery {
    EndpointHandle self;
    const std::string& from;
    std::span<const std::uint8_t> bytes;
};

/// Receive side of anything attached to the medium. Handlers run
/// synchronously on the scheduler thread and may only call Medium::send.
class Endpoint {
public:
    virtual ~Endpoint() = default;
    virtual void on_frame(Medium& medium, const Delivery& delivery) = 0;
    virtual void on_sniff(const MediumEvent&) {}
};

class Medium {
public:
    explicit Medium(MediumConfig config);

    Medium(const Medium&) = delete;
    Medium& operator=(const Medium&) = delete;

    /// Endpoints are not owned and must outlive the medium or be detached.
    /// `injector` marks adversaries; their sends are logged as Injected.
    /// Throws DuplicateEndpoint if the id or MAC is already attached.
    EndpointHandle attach(const std::string& id, MacAddress mac, Endpoint& endpoint, bool injector = false);
    void detach(EndpointHandle handle);

    /// Queues for delivery on the next tick. Throws Detached.
    void send(EndpointHandle from, Bytes frame_bytes);

    /// Drains the queue and returns every event logged since the previous
    /// call, including Injected events logged at send time.
    /// Throws TickLimitExceeded once a frame is due past max_ticks.
    std::vector<MediumEvent> run_until_idle();

    const std::vector<MediumEvent>& log() const { return log_; }
    std::uint64_t now() const { return now_; }
    std::size_t pending() const { return queue_.size(); }
    const MediumConfig& config() const { return config_; }
    const std::string& id_of(EndpointHandle handle) const;

private:
    struct Slot {
        std::string id;
        MacAddress mac;
        Endpoint* endpoint = nullptr;
        bool tap = false;
        bool injector = false;
        bool attached = false;
    };
    struct Queued {
        std::uint64_t tick;
        std::size_t from;
        Bytes bytes;
    };

    bool draw_loss();
    void record(MediumEvent event);
    void process(const Queued& item);

    MediumConfig config_;
    std::mt19937_64 loss_rng_;
    std::vector<Slot> slots_;
    std::deque<Queued> queue_;
    std::vector<MediumEvent> log_;
    std::size_t reported_ = 0;
    std::uint64_t now_ = 0;
};

}  // namespace deauthguard
