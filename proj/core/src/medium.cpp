#include "deauthguard/medium.hpp"

#include <json.hpp>

#include <algorithm>

namespace deauthguard {

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Delivered: return "delivered";
        case EventKind::Dropped: return "dropped";
        case EventKind::Injected: return "injected";
        case EventKind::Sniffed: return "sniffed";
    }
    return "unknown";
}

std::string to_json_line(const MediumEvent& event) {
    nlohmann::ordered_json j;
    j["tick"] = event.tick;
    j["kind"] = to_string(event.kind);
    j["from"] = event.from;
    j["to"] = event.to;
    j["frame"] = to_hex(event.frame_bytes);
    return j.dump();
}

std::string to_jsonl(const std::vector<MediumEvent>& events) {
    std::string out;
    for (const auto& e : events) {
        out += to_json_line(e);
        out += '\n';
    }
    return out;
}

Medium::Medium(MediumConfig config) : config_(std::move(config)), loss_rng_(config_.seed) {
    if (!(config_.loss_probability >= 0.0 && config_.loss_probability <= 1.0))
        throw std::invalid_argument("loss_probability must be within [0, 1]");
}

EndpointHandle Medium::attach(const std::string& id, MacAddress mac, Endpoint& endpoint, bool injector) {
    for (const auto& s : slots_) {
        if (!s.attached) continue;
        if (s.id == id) throw DuplicateEndpoint("endpoint id already attached: " + id);
        if (s.mac == mac) throw DuplicateEndpoint("MAC already attached: " + mac.to_string());
    }
    Slot slot;
    slot.id = id;
    slot.mac = mac;
    slot.endpoint = &endpoint;
    slot.tap = std::find(config_.promiscuous_taps.begin(), config_.promiscuous_taps.end(), id) !=
               config_.promiscuous_taps.end();
    slot.injector = injector;
    slot.attached = true;
    slots_.push_back(std::move(slot));
    return EndpointHandle{slots_.size() - 1};
}

void Medium::detach(EndpointHandle handle) {
    if (handle.index >= slots_.size() || !slots_[handle.index].attached)
        throw Detached("endpoint is not attached");
    slots_[handle.index].attached = false;
    slots_[handle.index].endpoint = nullptr;
}

const std::string& Medium::id_of(EndpointHandle handle) const {
    if (handle.index >= slots_.size()) throw Detached("unknown endpoint handle");
    return slots_[handle.index].id;
}

void Medium::send(EndpointHandle from, Bytes frame_bytes) {
    if (from.index >= slots_.size() || !slots_[from.index].attached)
        throw Detached("send from a detached endpoint");
    const Slot& sender = slots_[from.index];
    if (sender.injector) {
        MediumEvent ev{now_, EventKind::Injected, frame_bytes, sender.id, ""};
        if (auto dst = peek_destination(frame_bytes)) ev.to = dst->to_string();
        log_.push_back(std::move(ev));
    }
    queue_.push_back(Queued{now_ + 1, from.index, std::move(frame_bytes)});
}

bool Medium::draw_loss() {
    // 53-bit uniform in [0, 1); one draw per processed frame.
    const double u = static_cast<double>(loss_rng_() >> 11) * 0x1.0p-53;
    return u < config_.loss_probability;
}

void Medium::record(MediumEvent event) { log_.push_back(std::move(event)); }

void Medium::process(const Queued& item) {
    const std::string from_id = slots_[item.from].id;

    for (std::size_t i = 0; i < slots_.size(); ++i) {
        Slot& s = slots_[i];
        if (!s.attached || !s.tap) continue;
        MediumEvent ev{now_, EventKind::Sniffed, item.bytes, from_id, s.id};
        record(ev);
        s.endpoint->on_sniff(ev);
    }

    const bool lost = draw_loss();
    const auto dst = peek_destination(item.bytes);

    std::vector<std::size_t> recipients;
    if (dst && dst->is_broadcast()) {
        for (std::size_t i = 0; i < slots_.size(); ++i)
            if (slots_[i].attached && i != item.from) recipients.push_back(i);
    } else if (dst) {
        for (std::size_t i = 0; i < slots_.size(); ++i)
            if (slots_[i].attached && slots_[i].mac == *dst) recipients.push_back(i);
    }

    std::string to_label;
    if (dst && dst->is_broadcast()) {
        to_label = "broadcast";
    } else if (recipients.size() == 1) {
        to_label = slots_[recipients.front()].id;
    } else if (dst) {
        to_label = dst->to_string();
    }

    if (lost || recipients.empty()) {
        record(MediumEvent{now_, EventKind::Dropped, item.bytes, from_id, to_label});
        return;
    }
    record(MediumEvent{now_, EventKind::Delivered, item.bytes, from_id, to_label});
    for (auto idx : recipients) {
        // A handler may detach endpoints; re-check before each call.
        if (!slots_[idx].attached) continue;
        slots_[idx].endpoint->on_frame(*this, Delivery{EndpointHandle{idx}, from_id, item.bytes});
    }
}

std::vector<MediumEvent> Medium::run_until_idle() {
    while (!queue_.empty()) {
        if (queue_.front().tick > config_.max_ticks)
            throw TickLimitExceeded("tick limit " + std::to_string(config_.max_ticks) + " exceeded with " +
                                    std::to_string(queue_.size()) + " frames queued");
        Queued item = std::move(queue_.front());
        queue_.pop_front();
        now_ = item.tick;
        process(item);
    }
    std::vector<MediumEvent> out(log_.begin() + static_cast<std::ptrdiff_t>(reported_), log_.end());
    reported_ = log_.size();
    return out;
}

}  // namespace deauthguard
