#include "animalab/walks.hpp"

#include <algorithm>
#include <cstdlib>

namespace animalab {

std::uint64_t step_cap() {
    static const std::uint64_t cap = []() -> std::uint64_t {
        if (const char* env = std::getenv("ANIMALAB_STEP_CAP")) {
            const auto v = std::strtoull(env, nullptr, 10);
            if (v > 0) return v;
        }
        return 100'000'000;
    }();
    return cap;
}

std::int64_t sample_step(RngStream& rng) {
    // Exact thirds need rejection: 2^64 is not a multiple of 3.
    constexpr std::uint64_t bucket = ~0ULL / 3;
    constexpr std::uint64_t limit = bucket * 3;
    std::uint64_t w;
    do {
        w = rng.next_u64();
    } while (w >= limit);
    if (w < 2 * bucket) return 1;
    return -static_cast<std::int64_t>(rng.geometric_half());
}

WalkTrace sample_walk(int n, RngStream& rng) {
    WalkTrace t;
    t.kind = TraceKind::Raw;
    t.values.reserve(n + 1);
    t.values.push_back(0);
    std::int64_t min = 0;
    for (int i = 0; i < n; ++i) {
        const std::int64_t v = t.values.back() + sample_step(rng);
        if (v < min) {
            t.ladder_times.push_back(t.values.size());
            min = v;
        }
        t.values.push_back(v);
    }
    return t;
}

WalkTrace shave(const WalkTrace& raw) {
    if (raw.kind != TraceKind::Raw) throw std::invalid_argument("shave expects a raw trace");
    WalkTrace out;
    out.kind = TraceKind::Shaved;
    out.values.reserve(raw.values.size());
    std::int64_t raw_min = raw.values.front();
    std::int64_t min = raw_min, shift = 0;
    out.values.push_back(raw.values.front());
    for (std::size_t i = 1; i < raw.values.size(); ++i) {
        const std::int64_t v = raw.values[i];
        if (v < raw_min) {
            out.ladder_times.push_back(i);
            raw_min = v;
            out.values.push_back(min - 1);
            min -= 1;
            shift = min - v;
        } else {
            out.values.push_back(v + shift);
            min = std::min(min, v + shift);
        }
    }
    return out;
}

Rat path_prob(const WalkTrace& t) {
    if (t.kind != TraceKind::Raw && t.kind != TraceKind::Shaved)
        throw std::invalid_argument("path_prob expects a raw or shaved trace");
    const int n = static_cast<int>(t.values.size()) - 1;
    const std::int64_t last = t.values.back();
    std::int64_t e = last;
    if (t.kind == TraceKind::Shaved)
        e -= *std::min_element(t.values.begin(), t.values.end());
    // 2^e / 3^n with e possibly negative.
    Rat r(1, pow3(n));
    if (e >= 0)
        for (std::int64_t i = 0; i < e; ++i) r *= 2;
    else
        for (std::int64_t i = 0; i < -e; ++i) r /= 2;
    return r;
}

Rat exit_probability(std::int64_t x, std::int64_t y) {
    if (x < 1 || y < 1) throw std::invalid_argument("exit_probability needs x, y >= 1");
    return Rat(x, x + y + 1);
}

BigInt h_plus(std::int64_t z) {
    if (z < 0) throw std::invalid_argument("h_plus domain is z >= 0");
    return BigInt(z + 2);
}

BigInt h_minus(std::int64_t z) {
    if (z > 0) throw std::invalid_argument("h_minus domain is z <= 0");
    return BigInt(-z + 1);
}

BigInt h_pair(std::int64_t m, std::int64_t x) {
    if (!(m <= x && x <= 0)) throw std::invalid_argument("h_pair domain is m <= x <= 0");
    return BigInt(-x + 1) * BigInt(-m + 2);
}

WalkTrace sample_excursion(RngStream& rng, std::uint64_t cap) {
    if (cap == 0) cap = step_cap();
    WalkTrace t;
    t.kind = TraceKind::Raw;
    t.values.push_back(0);
    for (;;) {
        const std::int64_t v = t.values.back() + sample_step(rng);
        if (v < 0) return t;
        t.values.push_back(v);
        if (t.values.size() > cap) throw StepCapExceeded(cap);
    }
}

WalkTrace sample_conditioned_excursion(std::int64_t k, RngStream& rng, std::uint64_t cap) {
    if (k < 0) throw std::invalid_argument("k >= 0 required");
    if (cap == 0) cap = step_cap();
    for (;;) {
        WalkTrace t;
        t.kind = TraceKind::Raw;
        t.values.push_back(0);
        bool rejected = false;
        for (;;) {
            const std::int64_t v = t.values.back() + sample_step(rng);
            if (v > k) { // early abort, the excursion already failed sup <= k
                rejected = true;
                break;
            }
            if (v < 0) break;
            t.values.push_back(v);
            if (t.values.size() > cap) throw StepCapExceeded(cap);
        }
        if (!rejected) return t;
    }
}

WalkTrace sample_shaved_nonpos(std::int64_t depth, RngStream& rng, std::uint64_t cap) {
    if (depth < 1) throw std::invalid_argument("depth >= 1 required");
    WalkTrace t;
    t.kind = TraceKind::ShavedConditionedNonpos;
    for (std::int64_t k = 0; k < depth; ++k) {
        const WalkTrace v = sample_conditioned_excursion(k, rng, cap);
        for (auto x : v.values) t.values.push_back(x - k);
        t.ladder_times.push_back(t.values.size());
    }
    t.values.push_back(-depth); // tau_{-depth}
    return t;
}

std::int64_t sample_step_nonneg(std::int64_t z, RngStream& rng) {
    if (z < 0) throw std::invalid_argument("z >= 0 required");
    // P(down) = z / (3(z+2)); 0 at the wall, where only +1 has tilted mass.
    if (z == 0 || !rng.bernoulli_ratio(static_cast<std::uint64_t>(z),
                                       static_cast<std::uint64_t>(3 * (z + 2))))
        return 1;
    // Down jumps: propose Geom(1/2) conditioned on j <= z, accept with
    // (z - j + 2)/(z + 2). Exact by harmonicity of h+.
    for (;;) {
        int j = rng.geometric_half();
        if (j > z) continue;
        if (rng.bernoulli_ratio(static_cast<std::uint64_t>(z - j + 2),
                                static_cast<std::uint64_t>(z + 2)))
            return -j;
    }
}

WalkTrace sample_walk_nonneg(int n, RngStream& rng) {
    WalkTrace t;
    t.kind = TraceKind::ConditionedNonneg;
    t.values.push_back(0);
    for (int i = 0; i < n; ++i)
        t.values.push_back(t.values.back() + sample_step_nonneg(t.values.back(), rng));
    return t;
}

} // namespace animalab
