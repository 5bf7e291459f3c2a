#pragma once

#include "animalab/rational.hpp"
#include "animalab/rng.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace animalab {

/// Step law of the animal walk: +1 with probability 2/3, otherwise the
/// opposite of a Geom(1/2) variable. mu_k = 2^k / 3 on Z_-* u {1}.
struct StepLaw {
    static Rat prob(std::int64_t k) {
        if (k == 1) return Rat(2, 3);
        if (k <= -1) {
            BigInt den = 3;
            for (std::int64_t i = 0; i < -k; ++i) den *= 2;
            return Rat(1, den);
        }
        return Rat(0);
    }
};

enum class TraceKind { Raw, Shaved, ShavedConditionedNonpos, ConditionedNonneg };

struct WalkTrace {
    std::vector<std::int64_t> values;       // values[0] = start
    std::vector<std::size_t> ladder_times;  // indices of the descending ladder events
    TraceKind kind = TraceKind::Raw;
};

struct StepCapExceeded : std::runtime_error {
    explicit StepCapExceeded(std::uint64_t cap)
        : std::runtime_error("excursion step cap exceeded (" + std::to_string(cap) + ")"),
          cap(cap) {}
    std::uint64_t cap;
};

/// Default per-excursion step cap; the ANIMALAB_STEP_CAP environment variable
/// overrides it process-wide. tau_{-1} has infinite mean, so unbounded
/// sampling loops are a real hazard and always error out rather than
/// truncate silently.
std::uint64_t step_cap();

/// One exact step of the animal walk.
std::int64_t sample_step(RngStream& rng);

/// n i.i.d. mu-steps from 0 (trace has n+1 values).
WalkTrace sample_walk(int n, RngStream& rng);

/// Clips every undershoot of the running min to exactly one below it.
/// Ladder times are preserved.
WalkTrace shave(const WalkTrace& raw);

/// Raw trace: 2^{x_n} / 3^n. Shaved trace: 2^{x_n - min} / 3^n.
/// Rejects conditioned kinds.
Rat path_prob(const WalkTrace& t);

/// P(S enters (-inf,-y] before reaching x) = x / (x + y + 1), for 0 < x, y.
Rat exit_probability(std::int64_t x, std::int64_t y);

/// Harmonic functions: h+(z) = z + 2 on z >= 0 (killed below 0),
/// h-(z) = |z| + 1 on z <= 0 (killed above 0), and the bivariate
/// h(m, x) = (|x| + 1)(|m| + 2) on m <= x <= 0 for (min, shaved walk).
BigInt h_plus(std::int64_t z);
BigInt h_minus(std::int64_t z);
BigInt h_pair(std::int64_t m, std::int64_t x);

/// S_0..S_{tau_{-1}-1}: the walk stopped just before its first entry into
/// the negatives. All values >= 0, starts at 0. cap = 0 uses step_cap().
WalkTrace sample_excursion(RngStream& rng, std::uint64_t cap = 0);

/// A positive excursion conditioned on sup <= k, by rejection with early
/// abort the moment the excursion exceeds k. Acceptance is (k+1)/(k+3).
WalkTrace sample_conditioned_excursion(std::int64_t k, RngStream& rng, std::uint64_t cap = 0);

/// The shaved walk conditioned to stay non-positive, stopped at its first
/// hit of -depth: concatenation of independent conditioned excursions
/// V^0, V^1(sup<=1), ..., each shifted down by its index.
WalkTrace sample_shaved_nonpos(std::int64_t depth, RngStream& rng, std::uint64_t cap = 0);

/// n steps of the walk conditioned to stay non-negative (h+ tilt); exact
/// sequential sampling, no step cap needed.
WalkTrace sample_walk_nonneg(int n, RngStream& rng);

/// One exact step of the h+-conditioned walk from z >= 0.
std::int64_t sample_step_nonneg(std::int64_t z, RngStream& rng);

} // namespace animalab
