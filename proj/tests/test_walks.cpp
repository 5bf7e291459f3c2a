#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "animalab/enumeration.hpp"
#include "animalab/walks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

using namespace animalab;

namespace {

double binom_z(std::uint64_t hits, std::uint64_t n, const Rat& p_exact) {
    const double p = rat_to_double(p_exact);
    const double se = std::sqrt(p * (1 - p) / static_cast<double>(n));
    return (static_cast<double>(hits) / static_cast<double>(n) - p) / se;
}

} // namespace

TEST_CASE("step law masses") {
    CHECK(StepLaw::prob(1) == Rat(2, 3));
    CHECK(StepLaw::prob(-1) == Rat(1, 6));
    CHECK(StepLaw::prob(-2) == Rat(1, 12));
    CHECK(StepLaw::prob(0) == Rat(0));
    CHECK(StepLaw::prob(2) == Rat(0));
    Rat mass = StepLaw::prob(1);
    for (int k = 1; k <= 60; ++k) mass += StepLaw::prob(-k);
    CHECK(mass < 1);
    CHECK(Rat(1) - mass == Rat(1, BigInt(3) * (BigInt(1) << 60)));
}

TEST_CASE("sample_step matches the law") {
    RngStream rng(7, 0);
    const std::uint64_t n = 2'000'000;
    std::map<std::int64_t, std::uint64_t> counts;
    for (std::uint64_t i = 0; i < n; ++i) ++counts[sample_step(rng)];
    CHECK(std::abs(binom_z(counts[1], n, Rat(2, 3))) < 4.5);
    CHECK(std::abs(binom_z(counts[-1], n, Rat(1, 6))) < 4.5);
    CHECK(std::abs(binom_z(counts[-2], n, Rat(1, 12))) < 4.5);
    CHECK(std::abs(binom_z(counts[-3], n, Rat(1, 24))) < 4.5);
}

TEST_CASE("walk traces and CLT sanity") {
    RngStream rng(8, 0);
    CHECK(sample_walk(0, rng).values == std::vector<std::int64_t>{0});
    const int n = 400;
    const int trials = 20000;
    double sum = 0;
    for (int t = 0; t < trials; ++t) sum += static_cast<double>(sample_walk(n, rng).values.back());
    // Var(step) = 8/3; the empirical mean of S_n is within 5 sigma of 0
    const double se = std::sqrt(8.0 / 3.0 * n / trials);
    CHECK(std::abs(sum / trials) < 5 * se);
}

TEST_CASE("path probabilities") {
    WalkTrace raw{{0, 1}, {}, TraceKind::Raw};
    CHECK(path_prob(raw) == Rat(2, 3));
    raw.values = {0, -2};
    raw.ladder_times = {1};
    CHECK(path_prob(raw) == Rat(1, 12));
    WalkTrace shaved{{0, -1}, {1}, TraceKind::Shaved};
    CHECK(path_prob(shaved) == Rat(1, 3));
    WalkTrace bad{{0}, {}, TraceKind::ConditionedNonneg};
    CHECK_THROWS(path_prob(bad));
}

TEST_CASE("shaving clips undershoots and keeps ladder times") {
    WalkTrace raw{{0, 1, -3}, {2}, TraceKind::Raw};
    const auto s = shave(raw);
    CHECK(s.values == std::vector<std::int64_t>{0, 1, -1});
    CHECK(s.ladder_times == raw.ladder_times);

    WalkTrace gentle{{0, 1, 0, -1}, {3}, TraceKind::Raw};
    CHECK(shave(gentle).values == gentle.values); // already shaved: fixpoint

    RngStream rng(9, 0);
    for (int t = 0; t < 2000; ++t) {
        const auto w = sample_walk(60, rng);
        const auto sv = shave(w);
        CHECK(sv.ladder_times == w.ladder_times);
        // ladder time k is the first hit of -(k+1) by the shaved values
        for (std::size_t k = 0; k < sv.ladder_times.size(); ++k) {
            const auto idx = sv.ladder_times[k];
            CHECK(sv.values[idx] == -static_cast<std::int64_t>(k) - 1);
            for (std::size_t i = 0; i < idx; ++i)
                CHECK(sv.values[i] > -static_cast<std::int64_t>(k) - 1);
        }
        std::int64_t min = 0;
        for (std::size_t i = 1; i < sv.values.size(); ++i) {
            const auto d = sv.values[i] - sv.values[i - 1];
            CHECK((d == 1 || d < 0));
            CHECK(sv.values[i] >= min - 1);
            min = std::min(min, sv.values[i]);
        }
    }
}

TEST_CASE("exit probabilities") {
    CHECK(exit_probability(1, 1) == Rat(1, 3));
    CHECK(exit_probability(1, 3) == Rat(1, 5));
    CHECK(exit_probability(4, 1) == Rat(4, 6));
    CHECK_THROWS(exit_probability(0, 1));
    Rat prev(0);
    for (std::int64_t x = 1; x <= 30; ++x) {
        const Rat p = exit_probability(x, 1);
        CHECK(p > prev); // monotone toward 1
        prev = p;
    }

    RngStream rng(10, 0);
    const std::uint64_t trials = 100000;
    for (std::int64_t x = 1; x <= 5; ++x)
        for (std::int64_t y = 1; y <= 5; ++y) {
            std::uint64_t hits = 0;
            for (std::uint64_t t = 0; t < trials; ++t) {
                std::int64_t v = 0;
                for (;;) {
                    v += sample_step(rng);
                    if (v <= -y) {
                        ++hits;
                        break;
                    }
                    if (v == x) break;
                }
            }
            CHECK(std::abs(binom_z(hits, trials, exit_probability(x, y))) < 4.5);
        }
}

TEST_CASE("harmonic functions and exact harmonicity") {
    CHECK(h_plus(0) == 2);
    CHECK(h_minus(0) == 1);
    CHECK(h_pair(0, 0) == 2);
    CHECK(h_pair(-3, -1) == 10);
    CHECK_THROWS(h_pair(-1, -2));

    // sum_j mu_j h+(z+j) 1{z+j >= 0} = h+(z); the geometric tail below 0
    // carries no mass because h+ vanishes there
    for (std::int64_t z = 0; z <= 100; ++z) {
        Rat sum = Rat(2, 3) * Rat(h_plus(z + 1));
        BigInt den = 2;
        for (std::int64_t j = 1; j <= z; ++j, den *= 2) sum += Rat(h_plus(z - j), den * 3);
        CHECK(sum == Rat(h_plus(z)));
    }
    // sum_j mu_j h-(z+j) 1{z+j <= 0} = h-(z); the infinite down-sum has the
    // closed form sum_j 2^-j (|z|+j+1)/3 = (|z|+3)/3
    for (std::int64_t z = 0; z >= -100; --z) {
        Rat sum = Rat(-z + 3, 3);
        if (z + 1 <= 0) sum += Rat(2, 3) * Rat(h_minus(z + 1));
        CHECK(sum == Rat(h_minus(z)));
    }
}

TEST_CASE("excursions") {
    RngStream rng(11, 0);
    const std::uint64_t trials = 300000;
    const std::uint64_t cap = 100000; // tail lengths land in an overflow bucket
    std::map<std::size_t, std::uint64_t> len_counts;
    std::uint64_t overflowed = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        try {
            const auto e = sample_excursion(rng, cap);
            CHECK(e.values.front() == 0);
            CHECK(*std::min_element(e.values.begin(), e.values.end()) == 0);
            ++len_counts[e.values.size()];
        } catch (const StepCapExceeded&) {
            ++overflowed;
        }
    }
    CHECK(overflowed < trials / 100); // P(tau > 1e5) ~ 3e-3
    const auto law = excursion_law(20);
    for (int n = 1; n <= 20; ++n)
        CHECK(std::abs(binom_z(len_counts[static_cast<std::size_t>(n)], trials, law.a(n))) < 4.5);
}

TEST_CASE("undershoots at ladder epochs are Geom(1/2), independent of the epoch") {
    RngStream rng(12, 0);
    const int trials = 60000;
    std::array<std::array<std::uint64_t, 4>, 2> counts{};
    std::uint64_t pairs = 0;
    std::array<std::array<std::uint64_t, 2>, 2> joint{};
    for (int t = 0; t < trials; ++t) {
        const auto w = sample_walk(80, rng);
        std::int64_t min = 0;
        std::vector<std::int64_t> undershoots;
        for (std::size_t i = 1; i < w.values.size() && undershoots.size() < 2; ++i) {
            if (w.values[i] < min) {
                undershoots.push_back(min - w.values[i]);
                min = w.values[i];
            }
        }
        for (std::size_t e = 0; e < undershoots.size(); ++e)
            ++counts[e][static_cast<std::size_t>(std::min<std::int64_t>(undershoots[e], 4) - 1)];
        if (undershoots.size() == 2) {
            ++pairs;
            ++joint[undershoots[0] == 1 ? 0 : 1][undershoots[1] == 1 ? 0 : 1];
        }
    }
    // chi-square vs Geom(1/2), bins {1,2,3,>=4}; 3 dof, 0.001 quantile 16.27
    for (const auto& c : counts) {
        const double n = static_cast<double>(c[0] + c[1] + c[2] + c[3]);
        const double expect[4] = {n / 2, n / 4, n / 8, n / 8};
        double chi2 = 0;
        for (int b = 0; b < 4; ++b) {
            const double d = static_cast<double>(c[b]) - expect[b];
            chi2 += d * d / expect[b];
        }
        CHECK(chi2 < 16.27);
    }
    // 2x2 independence of the first two undershoots; 1 dof, 0.001 quantile 10.83
    {
        const double n = static_cast<double>(pairs);
        double chi2 = 0;
        const double r0 = static_cast<double>(joint[0][0] + joint[0][1]);
        const double c0 = static_cast<double>(joint[0][0] + joint[1][0]);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const double e = (i ? n - r0 : r0) * (j ? n - c0 : c0) / n;
                const double d = static_cast<double>(joint[i][j]) - e;
                chi2 += d * d / e;
            }
        CHECK(chi2 < 10.83);
    }
}

TEST_CASE("conditioned excursions") {
    RngStream rng(13, 0);
    for (int t = 0; t < 200; ++t)
        CHECK(sample_conditioned_excursion(0, rng).values == std::vector<std::int64_t>{0});
    for (std::int64_t k : {1, 2, 5})
        for (int t = 0; t < 5000; ++t) {
            const auto e = sample_conditioned_excursion(k, rng);
            CHECK(*std::max_element(e.values.begin(), e.values.end()) <= k);
        }
    // P(sup <= k) = (k+1)/(k+3) on unconditioned excursions; an excursion
    // that outlives the cap has sup > k up to an exp(-ct) event
    const std::uint64_t trials = 200000;
    for (std::int64_t k : {0, 1, 2, 4}) {
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            try {
                const auto e = sample_excursion(rng, 100000);
                if (*std::max_element(e.values.begin(), e.values.end()) <= k) ++hits;
            } catch (const StepCapExceeded&) {
            }
        }
        CHECK(std::abs(binom_z(hits, trials, Rat(k + 1, k + 3))) < 4.5);
    }
    // P(sup >= x | sup <= k) against the exit formulas
    {
        const std::int64_t k = 3, x = 2;
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            const auto e = sample_conditioned_excursion(k, rng);
            if (*std::max_element(e.values.begin(), e.values.end()) >= x) ++hits;
        }
        const Rat p = (Rat(k + 1, k + 3) - Rat(x, x + 2)) / Rat(k + 1, k + 3);
        CHECK(std::abs(binom_z(hits, trials, p)) < 4.5);
    }
}

namespace {

/// Test-only stepwise sampler of the conditioned pair (min, shaved walk) by
/// direct h-ratio tilting; cross-checks the path-decomposition route.
std::int64_t tilted_step(std::int64_t& m, std::int64_t& x, RngStream& rng) {
    const std::int64_t h = x - m;
    std::vector<std::uint64_t> w;
    std::vector<std::int64_t> target;
    const BigInt scale = BigInt(3) * (BigInt(1) << static_cast<unsigned>(h));
    if (x + 1 <= 0)
        w.push_back(((BigInt(2) << static_cast<unsigned>(h)) * h_pair(m, x + 1))
                        .convert_to<std::uint64_t>());
    else
        w.push_back(0); // killed above 0
    target.push_back(x + 1);
    for (std::int64_t j = 1; j <= h; ++j) {
        w.push_back(((BigInt(1) << static_cast<unsigned>(h - j)) * h_pair(m, x - j))
                        .convert_to<std::uint64_t>());
        target.push_back(x - j);
    }
    w.push_back(h_pair(m - 1, m - 1).convert_to<std::uint64_t>());
    target.push_back(m - 1);
    std::uint64_t total = 0;
    for (auto v : w) total += v;
    REQUIRE(BigInt(total) == scale * h_pair(m, x)); // exact harmonicity per row
    std::uint64_t r = rng.next_below(total);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (r < w[i]) {
            if (target[i] < m) m = target[i];
            x = target[i];
            return x;
        }
        r -= w[i];
    }
    throw std::logic_error("unreachable");
}

} // namespace

TEST_CASE("path decomposition matches the h-transform definition") {
    RngStream rng(14, 0);
    const int prefix = 4;
    const std::uint64_t trials = 200000;
    std::map<std::vector<std::int64_t>, std::uint64_t> from_decomposition, from_tilting;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto trace = sample_shaved_nonpos(prefix + 1, rng);
        std::vector<std::int64_t> key(trace.values.begin(), trace.values.begin() + prefix + 1);
        ++from_decomposition[key];
    }
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::int64_t m = 0, x = 0;
        std::vector<std::int64_t> key{0};
        for (int i = 0; i < prefix; ++i) key.push_back(tilted_step(m, x, rng));
        ++from_tilting[key];
    }
    for (const auto& [key, c1] : from_decomposition) {
        const double n = static_cast<double>(trials);
        const double c2 = from_tilting.count(key) ? static_cast<double>(from_tilting.at(key)) : 0.0;
        const double pool = (static_cast<double>(c1) + c2) / (2 * n);
        if (pool * n < 25) continue; // skip rare prefixes
        const double z =
            (static_cast<double>(c1) - c2) / n / std::sqrt(pool * (1 - pool) * (2 / n));
        CHECK(std::abs(z) < 4.8);
    }
}

TEST_CASE("shaved walk conditioned non-positive") {
    RngStream rng(15, 0);
    for (int t = 0; t < 3000; ++t) {
        const auto trace = sample_shaved_nonpos(4, rng);
        CHECK(*std::max_element(trace.values.begin(), trace.values.end()) <= 0);
        CHECK(trace.values.back() == -4);
        const auto first_neg = std::find(trace.values.begin(), trace.values.end(), -1);
        REQUIRE(first_neg != trace.values.end());
        CHECK(static_cast<std::size_t>(first_neg - trace.values.begin()) ==
              trace.ladder_times[0]);
    }
}

TEST_CASE("exit problem of the conditioned pair from a general start") {
    // P_{(m,x)}(tau_{-N} < tau_1) = h(m,x)/((N+1)(N+2))
    RngStream rng(16, 0);
    const std::uint64_t trials = 150000;
    for (auto [m0, x0, N] : std::vector<std::array<std::int64_t, 3>>{
             {0, 0, 2}, {-1, 0, 3}, {-2, -1, 4}, {-1, -1, 3}}) {
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            std::int64_t m = m0, x = x0;
            for (;;) {
                std::int64_t next = x + sample_step(rng);
                if (next < m) next = m - 1;
                if (next < m) m = next;
                x = next;
                if (x == -N) {
                    ++hits;
                    break;
                }
                if (x == 1) break;
            }
        }
        const Rat p(h_pair(m0, x0), BigInt(N + 1) * BigInt(N + 2));
        CHECK(std::abs(binom_z(hits, trials, p)) < 4.5);
    }
}

TEST_CASE("conditioned non-negative walk") {
    RngStream rng(17, 0);
    for (int t = 0; t < 100; ++t) CHECK(sample_step_nonneg(0, rng) == 1);
    const auto w = sample_walk_nonneg(2000, rng);
    CHECK(*std::min_element(w.values.begin(), w.values.end()) >= 0);

    for (std::int64_t z : {1, 2, 5}) {
        std::map<std::int64_t, std::uint64_t> counts;
        const std::uint64_t trials = 200000;
        for (std::uint64_t t = 0; t < trials; ++t) ++counts[sample_step_nonneg(z, rng)];
        for (std::int64_t j = -z; j <= 1; ++j) {
            if (j == 0) continue;
            const Rat p = StepLaw::prob(j) * Rat(h_plus(z + j), h_plus(z));
            CHECK(std::abs(binom_z(counts[j], trials, p)) < 4.8);
        }
    }
}

TEST_CASE("reproducibility across identical streams") {
    RngStream a(123, 5), b(123, 5), c(123, 6);
    const auto w1 = sample_walk(200, a);
    const auto w2 = sample_walk(200, b);
    const auto w3 = sample_walk(200, c);
    CHECK(w1.values == w2.values);
    CHECK(w1.values != w3.values);
}

TEST_CASE("step cap reporting") {
    CHECK(step_cap() == 100'000'000);
    StepCapExceeded err(42);
    CHECK(err.cap == 42);
}
