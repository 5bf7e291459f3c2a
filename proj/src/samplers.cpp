#include "animalab/simlab.hpp"

#include "animalab/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace animalab {

Animal sample_bhp(RngStream& rng, std::uint64_t cap) {
    return decode_path(sample_excursion(rng, cap).values);
}

namespace {

/// Incremental domino-dropping restricted to what B(r) can still see.
/// Column heights are capped at r+1 (larger values never change membership
/// decisions), and `saturated()` flips once every ball column is buried.
class BallTraceBuilder {
public:
    explicit BallTraceBuilder(std::int64_t r) : r_(r), buried_(2 * r + 1, false) {
        remaining_ = buried_.size();
    }

    void feed(std::int64_t x) {
        const std::int64_t y = 1 + std::max(top(x - 1), top(x + 1));
        set_top(x, y);
        if (x >= -r_ && x <= r_ && y <= r_) trace_.push_back({x, y});
    }

    bool saturated() const { return remaining_ == 0; }
    const std::vector<Vertex>& trace() const { return trace_; }

private:
    std::int64_t top(std::int64_t x) const {
        auto it = col_.find(x);
        return it == col_.end() ? -1 : it->second;
    }

    void set_top(std::int64_t x, std::int64_t y) {
        col_[x] = std::min(y, r_ + 1);
        if (y >= r_) {
            for (std::int64_t nb : {x - 1, x + 1}) {
                if (nb < -r_ || nb > r_) continue;
                const auto idx = static_cast<std::size_t>(nb + r_);
                if (!buried_[idx]) {
                    buried_[idx] = true;
                    --remaining_;
                }
            }
        }
    }

    std::int64_t r_;
    std::unordered_map<std::int64_t, std::int64_t> col_;
    std::vector<bool> buried_;
    std::size_t remaining_;
    std::vector<Vertex> trace_;
};

} // namespace

std::vector<Vertex> sample_uip_ball(std::int64_t r, RngStream& rng, std::uint64_t cap) {
    if (cap == 0) cap = step_cap();
    BallTraceBuilder builder(r);
    std::int64_t v = 0, min = 0;
    builder.feed(v);
    std::uint64_t steps = 0;
    while (!builder.saturated()) {
        std::int64_t next = v + sample_step(rng);
        if (next < min) next = min - 1; // shaved undershoot
        if (next == -(r + 1)) break;    // tau_{-(r+1)}: everything later is higher than r
        min = std::min(min, next);
        v = next;
        builder.feed(v);
        if (++steps > cap) throw StepCapExceeded(cap);
    }
    return builder.trace();
}

std::vector<Vertex> sample_bhp_ball(std::int64_t r, RngStream& rng, std::uint64_t cap) {
    if (cap == 0) cap = step_cap();
    BallTraceBuilder builder(r);
    std::int64_t v = 0;
    builder.feed(v);
    std::uint64_t steps = 0;
    while (!builder.saturated()) {
        const std::int64_t next = v + sample_step(rng);
        if (next < 0) break; // the excursion is over
        v = next;
        builder.feed(v);
        if (++steps > cap) throw StepCapExceeded(cap);
    }
    return builder.trace();
}

std::vector<Vertex> sample_uip_minus_ball(std::int64_t r, RngStream& rng) {
    const WalkTrace t = sample_shaved_nonpos(r + 1, rng);
    BallTraceBuilder builder(r);
    for (auto x : t.values) builder.feed(x);
    return builder.trace();
}

std::vector<Vertex> sample_uip_plus_ball(std::int64_t r, RngStream& rng) {
    auto trace = sample_uip_minus_ball(r, rng);
    for (auto& v : trace) v.x = -v.x;
    std::sort(trace.begin(), trace.end());
    return trace;
}

namespace {

std::uint64_t default_attempt_budget(int n, double acceptance) {
    // ~ 40 / acceptance per sample keeps false failures around e^-40.
    (void)n;
    const double budget = 40.0 / std::max(acceptance, 1e-12);
    return static_cast<std::uint64_t>(std::min(budget, 1e12));
}

} // namespace

Animal sample_uniform_pyramid(int n, RngStream& rng, std::uint64_t max_attempts) {
    if (n < 1) throw std::invalid_argument("n >= 1 required");
    const double acceptance = 1.0 / std::sqrt(3.0 * M_PI * n);
    if (max_attempts == 0) max_attempts = default_attempt_budget(n, acceptance);
    std::vector<std::int64_t> values(static_cast<std::size_t>(n));
    for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
        std::int64_t v = 0, min = 0;
        values[0] = 0;
        for (int i = 1; i < n; ++i) {
            std::int64_t next = v + sample_step(rng);
            if (next < min) next = min - 1;
            min = std::min(min, next);
            v = next;
            values[static_cast<std::size_t>(i)] = v;
        }
        // accept iff step n beats the running min (strict minimum at time n)
        std::int64_t last = v + sample_step(rng);
        if (n == 1) last = std::min(last, min - 1);
        if (last < min) return decode_path(values);
    }
    throw RejectionBudgetExceeded(max_attempts, acceptance);
}

Animal sample_uniform_half_pyramid(int n, int window, RngStream& rng,
                                   std::uint64_t max_attempts) {
    if (n < 1 || window < 0) throw std::invalid_argument("n >= 1, window >= 0 required");
    const double acceptance =
        std::max(1, window) * std::sqrt(3.0 / (4.0 * M_PI)) * std::pow(n, -1.5);
    if (max_attempts == 0) max_attempts = default_attempt_budget(n, acceptance);
    const std::uint64_t cap = step_cap();
    for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
        std::vector<std::int64_t> values{0};
        bool dead = false;
        for (;;) {
            const std::int64_t next = values.back() + sample_step(rng);
            if (next < 0) break;
            values.push_back(next);
            if (values.size() > static_cast<std::size_t>(n + window)) {
                dead = true; // already too large, abort the attempt
                break;
            }
            if (values.size() > cap) throw StepCapExceeded(cap);
        }
        if (!dead && values.size() >= static_cast<std::size_t>(n)) return decode_path(values);
    }
    throw RejectionBudgetExceeded(max_attempts, acceptance);
}

std::vector<Vertex> sample_uip_plus_bluered(std::int64_t r, RngStream& rng,
                                            std::int64_t blue_horizon) {
    const std::uint64_t cap = step_cap();
    BallTraceBuilder builder(r);
    // Blue phase: the conditioned walk, stopped once it escapes past the
    // horizon (heuristic: returns below 2r are then unlikely).
    std::int64_t v = 0;
    builder.feed(v);
    std::uint64_t steps = 0;
    while (v <= blue_horizon) {
        v += sample_step_nonneg(v, rng);
        builder.feed(v);
        if (++steps > cap) throw StepCapExceeded(cap);
    }
    // Red phase: independent BHPs on columns 2r+1 down to 0, each present
    // with probability 1/2. A root above 2r+1 can only rearrange column tops
    // that are already too high to change any B(r) membership decision.
    for (std::int64_t root = 2 * r + 1; root >= 0; --root) {
        if (rng.next_u64() & 1) continue;
        std::int64_t w = 0;
        builder.feed(root);
        for (;;) {
            w += sample_step(rng);
            if (w < 0) break;
            builder.feed(root + w);
            if (++steps > cap) throw StepCapExceeded(cap);
        }
    }
    auto trace = builder.trace();
    std::sort(trace.begin(), trace.end());
    return trace;
}

} // namespace animalab
