#include "animalab/enumeration.hpp"

#include "animalab/encoding.hpp"
#include "animalab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace animalab {

namespace {

// Paths with (a)+(c): state = height of the value above the running min.
// Beating the min by exactly one re-enters state 0.
std::vector<std::vector<BigInt>> pyramid_path_table(int n) {
    std::vector<std::vector<BigInt>> c(n);
    c[0].assign(1, BigInt(1));
    for (int t = 0; t + 1 < n; ++t) {
        c[t + 1].assign(t + 2, BigInt(0));
        for (int h = 0; h <= t; ++h) {
            if (c[t][h] == 0) continue;
            c[t + 1][h + 1] += c[t][h];
            for (int j = 1; j <= h; ++j) c[t + 1][h - j] += c[t][h];
            c[t + 1][0] += c[t][h]; // new running min
        }
    }
    return c;
}

// Paths with (a)+(d): state = current value.
std::vector<std::vector<BigInt>> half_path_table(int n) {
    std::vector<std::vector<BigInt>> c(n);
    c[0].assign(1, BigInt(1));
    for (int t = 0; t + 1 < n; ++t) {
        c[t + 1].assign(t + 2, BigInt(0));
        for (int v = 0; v <= t; ++v) {
            if (c[t][v] == 0) continue;
            c[t + 1][v + 1] += c[t][v];
            for (int j = 1; j <= v; ++j) c[t + 1][v - j] += c[t][v];
        }
    }
    return c;
}

BigInt table_total(const std::vector<std::vector<BigInt>>& c) {
    BigInt s = 0;
    for (const auto& x : c.back()) s += x;
    return s;
}

} // namespace

BigInt count_animals(CountKind kind, int n) {
    if (n < 1) throw std::invalid_argument("count requires n >= 1");
    switch (kind) {
    case CountKind::Pyramid:
        return table_total(pyramid_path_table(n));
    case CountKind::HalfPyramid:
        return table_total(half_path_table(n));
    case CountKind::CompactSource:
        return pow3(static_cast<unsigned>(n - 1));
    }
    throw std::invalid_argument("bad kind");
}

BigInt count_compact_by_dp(int n) {
    // Sum of (depth of running min + 1) over all (a)+(c) paths of length n;
    // state = (height above min, depth of min).
    std::vector<std::vector<BigInt>> c(static_cast<std::size_t>(n) * (n + 1));
    auto at = [&](int t, int h, int d) -> BigInt& {
        return c[static_cast<std::size_t>(t) * (n + 1) + d][h];
    };
    for (int t = 0; t < n; ++t)
        for (int d = 0; d <= n; ++d)
            c[static_cast<std::size_t>(t) * (n + 1) + d].assign(n + 1, BigInt(0));
    at(0, 0, 0) = 1;
    for (int t = 0; t + 1 < n; ++t)
        for (int d = 0; d <= t; ++d)
            for (int h = 0; h <= t; ++h) {
                const BigInt& v = at(t, h, d);
                if (v == 0) continue;
                at(t + 1, h + 1, d) += v;
                for (int j = 1; j <= h; ++j) at(t + 1, h - j, d) += v;
                at(t + 1, 0, d + 1) += v;
            }
    BigInt s = 0;
    for (int d = 0; d < n; ++d)
        for (int h = 0; h < n; ++h) s += at(n - 1, h, d) * BigInt(d + 1);
    return s;
}

namespace {

void dfs_paths(CountKind kind, int n, std::vector<std::int64_t>& path, std::int64_t running_min,
               int phase, const std::function<void(const std::vector<std::int64_t>&)>& fn) {
    if (static_cast<int>(path.size()) == n) {
        fn(path);
        return;
    }
    const std::int64_t x = path.back();
    auto push = [&](std::int64_t v, int ph) {
        path.push_back(v);
        dfs_paths(kind, n, path, std::min(running_min, v), ph, fn);
        path.pop_back();
    };
    push(x + 1, phase);
    switch (kind) {
    case CountKind::Pyramid:
        for (std::int64_t v = x - 1; v >= running_min - 1; --v) push(v, phase);
        break;
    case CountKind::HalfPyramid:
        for (std::int64_t v = x - 1; v >= 0; --v) push(v, phase);
        break;
    case CountKind::CompactSource:
        // Inside the current range: no new source.
        for (std::int64_t v = x - 1; v >= running_min; --v) push(v, phase);
        // Ladder undershoots: exactly 2 while in the source-growing phase,
        // exactly 1 once the first unit undershoot has happened.
        if (phase == 0) push(running_min - 2, 0);
        push(running_min - 1, 1);
        break;
    }
}

} // namespace

void enumerate_paths(CountKind kind, int n,
                     const std::function<void(const std::vector<std::int64_t>&)>& fn, int cap) {
    if (n < 1) throw std::invalid_argument("n >= 1 required");
    if (n > cap) throw std::invalid_argument("enumeration cap exceeded");
    std::vector<std::int64_t> path{0};
    dfs_paths(kind, n, path, 0, 0, fn);
}

std::vector<Animal> enumerate_animals(CountKind kind, int n, int cap) {
    std::vector<Animal> out;
    enumerate_paths(kind, n, [&](const std::vector<std::int64_t>& p) { out.push_back(decode_path(p)); },
                    cap);
    return out;
}

void enumerate_animals_from_source(const AdmissibleSet& source, int n,
                                   const std::function<void(const std::vector<AdmissibleSet>&)>& fn) {
    if (n < static_cast<int>(source.size())) return;
    std::vector<AdmissibleSet> chain{source};
    std::function<void(int)> rec = [&](int remaining) {
        if (remaining == 0) {
            fn(chain);
            return;
        }
        const auto f = augment(chain.back()).elems();
        const std::size_t m = f.size();
        for (std::uint64_t mask = 1; mask < (1ULL << m); ++mask) {
            if (static_cast<int>(__builtin_popcountll(mask)) > remaining) continue;
            std::vector<std::int64_t> b;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (1ULL << i)) b.push_back(f[i]);
            chain.emplace_back(std::move(b));
            rec(remaining - static_cast<int>(__builtin_popcountll(mask)));
            chain.pop_back();
        }
    };
    rec(n - static_cast<int>(source.size()));
}

SeriesCoeffs excursion_law(int n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max >= 1 required");
    SeriesCoeffs s;
    s.a_num.assign(n_max + 1, BigInt(0));
    s.u_num.assign(n_max + 1, BigInt(0));
    s.a_num[1] = 1;
    for (int n = 2; n <= n_max; ++n) {
        BigInt acc = s.a_num[n - 1];
        for (int i = 1; i + 1 <= n - 1; ++i) acc += s.a_num[i] * s.a_num[n - 1 - i];
        s.a_num[n] = acc;
    }
    for (int n = 1; n <= n_max; ++n) {
        BigInt acc = s.a_num[n];
        for (int k = 1; k < n; ++k) acc += s.a_num[k] * s.u_num[n - k];
        s.u_num[n] = acc;
    }
    return s;
}

std::vector<BigInt> motzkin_numbers(int n_max) {
    std::vector<BigInt> m(n_max + 1);
    m[0] = 1;
    if (n_max >= 1) m[1] = 1;
    for (int n = 2; n <= n_max; ++n) {
        BigInt num = BigInt(2 * n + 1) * m[n - 1] + BigInt(3 * (n - 1)) * m[n - 2];
        BigInt q = num / (n + 2);
        if (q * (n + 2) != num) throw std::logic_error("motzkin recurrence not divisible");
        m[n] = q;
    }
    return m;
}

std::vector<BigInt> pyramid_count_series(int n_max) {
    // G_n = 2 * count(pyramid, n) for n >= 1, G_0 = 1, with
    // (n+1) G_{n+1} = (2n+2) G_n + 3(n-1) G_{n-1}.
    std::vector<BigInt> g(n_max + 1), p(n_max + 1);
    g[0] = 1;
    p[0] = 0;
    for (int n = 0; n < n_max; ++n) {
        BigInt num = BigInt(2 * n + 2) * g[n];
        if (n >= 1) num += BigInt(3 * (n - 1)) * g[n - 1];
        BigInt q = num / (n + 1);
        if (q * (n + 1) != num) throw std::logic_error("renewal recurrence not divisible");
        g[n + 1] = q;
        BigInt half = g[n + 1] / 2;
        if (half * 2 != g[n + 1]) throw std::logic_error("renewal numerator not even");
        p[n + 1] = half;
    }
    return p;
}

namespace {

long double log2_bigint(const BigInt& v) {
    if (v <= 0) throw std::invalid_argument("log2 of nonpositive");
    const long msb = static_cast<long>(boost::multiprecision::msb(v));
    const long shift = std::max<long>(0, msb - 62);
    const auto top = (v >> static_cast<unsigned>(shift)).convert_to<std::uint64_t>();
    return std::log2(static_cast<long double>(top)) + static_cast<long double>(shift);
}

double scaled_ratio(const BigInt& num, int pow3_exp) {
    const long double l = log2_bigint(num) - static_cast<long double>(pow3_exp) * std::log2(3.0L);
    return static_cast<double>(std::exp2(l));
}

} // namespace

RenewalReport verify_renewal_asymptotics(int n) {
    if (n < 2) throw std::invalid_argument("n >= 2 required");
    RenewalReport r;
    r.n = n;
    const auto motzkin = motzkin_numbers(n - 1);
    const auto pyr = pyramid_count_series(n);
    const double an = scaled_ratio(motzkin[n - 1], n);
    const double un = scaled_ratio(pyr[n], n);
    r.a_ratio = an / (std::sqrt(3.0 / (4.0 * M_PI)) * std::pow(n, -1.5));
    r.u_ratio = un * std::sqrt(3.0 * M_PI * n);
    double mass = 0;
    for (int k = 1; k <= n - 1; ++k) mass += scaled_ratio(motzkin[k - 1], k);
    r.tail_mass = mass;
    r.converging = std::abs(r.a_ratio - 1.0) < 0.05 && std::abs(r.u_ratio - 1.0) < 0.05;
    return r;
}

BigInt eta_sequence(const std::vector<std::int64_t>& f) {
    BigInt p = 1;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) p *= BigInt(f[i + 1] - f[i] - 1);
    return p;
}

BigInt eta_plus_sequence(const std::vector<std::int64_t>& f) {
    BigInt p = 1;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) p *= BigInt(f[i + 1] - f[i] + 1);
    return p;
}

namespace {

template <typename Fn>
void for_each_subset(const std::vector<std::int64_t>& f, Fn&& fn) {
    const std::size_t m = f.size();
    std::vector<std::int64_t> b;
    for (std::uint64_t mask = 1; mask < (1ULL << m); ++mask) {
        b.clear();
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (1ULL << i)) b.push_back(f[i]);
        fn(b);
    }
}

} // namespace

BigInt sum_eta_subsets(const std::vector<std::int64_t>& f) {
    BigInt s = 0;
    for_each_subset(f, [&](const std::vector<std::int64_t>& b) { s += eta_sequence(b); });
    return s;
}

BigInt sum_eta_max_subsets(const std::vector<std::int64_t>& f) {
    BigInt s = 0;
    for_each_subset(f, [&](const std::vector<std::int64_t>& b) {
        s += eta_sequence(b) * BigInt(b.back());
    });
    return s;
}

BigInt sum_eta_minmax_subsets(const std::vector<std::int64_t>& f) {
    BigInt s = 0;
    for_each_subset(f, [&](const std::vector<std::int64_t>& b) {
        s += eta_sequence(b) * BigInt(b.front()) * BigInt(b.back());
    });
    return s;
}

BigInt sum_eta_fixed_max(const std::vector<std::int64_t>& f) {
    BigInt s = 0;
    for_each_subset(f, [&](const std::vector<std::int64_t>& b) {
        if (b.back() == f.back()) s += eta_sequence(b);
    });
    return s;
}

BigInt sum_eta_fixed_minmax(const std::vector<std::int64_t>& f) {
    BigInt s = 0;
    for_each_subset(f, [&](const std::vector<std::int64_t>& b) {
        if (b.front() == f.front() && b.back() == f.back()) s += eta_sequence(b);
    });
    return s;
}

namespace {

std::string join(const std::vector<std::int64_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

std::vector<std::int64_t> random_distinct_sorted(RngStream& rng, int count, std::int64_t lo,
                                                 std::int64_t hi) {
    std::vector<std::int64_t> out;
    while (static_cast<int>(out.size()) < count) {
        const auto v = lo + static_cast<std::int64_t>(rng.next_below(hi - lo + 1));
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::int64_t> random_admissible(RngStream& rng, int max_size) {
    const int size = 1 + static_cast<int>(rng.next_below(max_size));
    const std::int64_t parity = static_cast<std::int64_t>(rng.next_below(2));
    std::vector<std::int64_t> out;
    std::int64_t x = parity + 2 * (static_cast<std::int64_t>(rng.next_below(21)) - 10);
    out.push_back(x);
    for (int i = 1; i < size; ++i) {
        x += 2 * (1 + static_cast<std::int64_t>(rng.next_below(6)));
        out.push_back(x);
    }
    return out;
}

IdentityResult check_gencomb_once(const std::vector<std::int64_t>& f) {
    IdentityResult r;
    auto fail = [&](const std::string& which) {
        r.ok = false;
        r.witness = which + " failed on F={" + join(f) + "}";
        return r;
    };
    const BigInt ep = eta_plus_sequence(f);
    if (sum_eta_subsets(f) != ep) return fail("sum eta = eta+");
    if (sum_eta_max_subsets(f) != BigInt(1) + BigInt(f.back() - 1) * ep)
        return fail("sum eta*max");
    if (sum_eta_minmax_subsets(f) !=
        BigInt(1) + BigInt(f.back() - 1) * BigInt(f.front() + 1) * ep)
        return fail("sum eta*min*max");
    if (f.size() >= 2) {
        BigInt rhs = BigInt(f[f.size() - 1] - f[f.size() - 2]);
        for (std::size_t j = 1; j + 1 < f.size(); ++j) rhs *= BigInt(f[j] - f[j - 1] + 1);
        if (sum_eta_fixed_max(f) != rhs) return fail("fixed-max sum");
    }
    if (f.size() >= 3) {
        BigInt rhs = BigInt(f[1] - f[0]) * BigInt(f[f.size() - 1] - f[f.size() - 2]);
        for (std::size_t j = 2; j + 1 < f.size(); ++j) rhs *= BigInt(f[j] - f[j - 1] + 1);
        if (sum_eta_fixed_minmax(f) != rhs) return fail("fixed-minmax sum");
    }
    return r;
}

} // namespace

IdentityResult verify_identity(const std::string& name, std::uint64_t seed, int trials) {
    IdentityResult r;
    RngStream rng(seed, 0x1de117);
    if (name == "jolie") {
        const int n_max = std::min(trials, 14);
        for (int n = 0; n <= n_max; ++n) {
            std::vector<std::int64_t> f;
            for (int x = 0; x <= n; ++x) f.push_back(2 * x);
            if (sum_eta_subsets(f) != pow3(n)) {
                r.ok = false;
                r.witness = "jolie identity failed at n=" + std::to_string(n);
                return r;
            }
        }
        return r;
    }
    if (name == "gencomb") {
        for (int t = 0; t < trials; ++t) {
            const int size = 1 + static_cast<int>(rng.next_below(10));
            auto f = random_distinct_sorted(rng, size, -40, 40);
            auto res = check_gencomb_once(f);
            if (!res.ok) return res;
        }
        return r;
    }
    if (name == "eta") {
        for (int t = 0; t < trials; ++t) {
            auto a = random_admissible(rng, 12);
            AdmissibleSet as(a);
            if (pow3(static_cast<unsigned>(a.size())) * eta(as) !=
                eta_plus_sequence(augment(as).elems())) {
                r.ok = false;
                r.witness = "3^|A| eta(A) != eta+([A]) on A={" + join(a) + "}";
                return r;
            }
        }
        return r;
    }
    if (name == "alpha") {
        // alpha(F) = alpha(F\{f_{n-1}}) + (f_n - f_{n-1} - 1) alpha(F\{f_n})
        for (int t = 0; t < trials; ++t) {
            const int size = 3 + static_cast<int>(rng.next_below(8));
            auto f = random_distinct_sorted(rng, size, -40, 40);
            auto without = [&](std::size_t drop) {
                std::vector<std::int64_t> g;
                for (std::size_t i = 0; i < f.size(); ++i)
                    if (i != drop) g.push_back(f[i]);
                return g;
            };
            const BigInt lhs = sum_eta_fixed_max(f);
            const BigInt rhs = sum_eta_fixed_max(without(f.size() - 2)) +
                               BigInt(f[f.size() - 1] - f[f.size() - 2] - 1) *
                                   sum_eta_fixed_max(without(f.size() - 1));
            if (lhs != rhs) {
                r.ok = false;
                r.witness = "alpha recursion failed on F={" + join(f) + "}";
                return r;
            }
        }
        return r;
    }
    throw std::invalid_argument("unknown identity: " + name);
}

bool verify_counting_bridge(int n) {
    if (n < 1 || n > 16) throw std::invalid_argument("bridge check supports 1 <= n <= 16");
    // Route 1: integer DP counts.
    const BigInt pyramids = count_animals(CountKind::Pyramid, n);
    const BigInt halves = count_animals(CountKind::HalfPyramid, n);

    // Route 2: raw-walk probability DPs (states hold exact rationals).
    // Pyramids: P(S_n < min_{j<n} S_j), state = height above the running min.
    std::vector<Rat> ph{Rat(1)};
    for (int t = 0; t + 1 < n; ++t) {
        std::vector<Rat> nx(ph.size() + 1, Rat(0));
        for (std::size_t h = 0; h < ph.size(); ++h) {
            if (ph[h] == 0) continue;
            nx[h + 1] += ph[h] * Rat(2, 3);
            BigInt den = 2;
            for (std::size_t j = 1; j <= h; ++j, den *= 2) nx[h - j] += ph[h] * Rat(1, den * 3);
            nx[0] += ph[h] * Rat(1, den / 2 * 3); // total mass of undershoots
        }
        ph = std::move(nx);
    }
    Rat p_strict(0);
    {
        BigInt den = 1;
        for (std::size_t h = 0; h < ph.size(); ++h, den *= 2) p_strict += ph[h] * Rat(1, den * 3);
    }
    if (p_strict * pow3(n) != Rat(pyramids)) return false;

    // Half-pyramids: P(S_j >= 0 for j < n, S_n < 0), state = current value.
    std::vector<Rat> pv{Rat(1)};
    for (int t = 0; t + 1 < n; ++t) {
        std::vector<Rat> nx(pv.size() + 1, Rat(0));
        for (std::size_t v = 0; v < pv.size(); ++v) {
            if (pv[v] == 0) continue;
            nx[v + 1] += pv[v] * Rat(2, 3);
            BigInt den = 2;
            for (std::size_t j = 1; j <= v; ++j, den *= 2) nx[v - j] += pv[v] * Rat(1, den * 3);
        }
        pv = std::move(nx);
    }
    Rat p_half(0);
    {
        BigInt den = 1;
        for (std::size_t v = 0; v < pv.size(); ++v, den *= 2) p_half += pv[v] * Rat(1, den * 3);
    }
    if (p_half * pow3(n) != Rat(halves)) return false;

    // Remark identity: the non-negative excursion probability equals the
    // probability that the shaved walk, confined to non-positive values,
    // hits a strict min at time n. State = (height above min, depth of min).
    std::vector<std::vector<Rat>> ps(1, std::vector<Rat>(1, Rat(1))); // ps[d][h]
    for (int t = 0; t + 1 < n; ++t) {
        std::vector<std::vector<Rat>> nx(ps.size() + 1,
                                         std::vector<Rat>(ps[0].size() + 1, Rat(0)));
        for (std::size_t d = 0; d < ps.size(); ++d)
            for (std::size_t h = 0; h < ps[d].size(); ++h) {
                const Rat& cur = ps[d][h];
                if (cur == 0) continue;
                if (h + 1 <= d) nx[d][h + 1] += cur * Rat(2, 3); // stay <= 0
                BigInt den = 2;
                for (std::size_t j = 1; j <= h; ++j, den *= 2)
                    nx[d][h - j] += cur * Rat(1, den * 3);
                nx[d + 1][0] += cur * Rat(1, den / 2 * 3);
            }
        ps = std::move(nx);
    }
    Rat p_confined(0);
    for (std::size_t d = 0; d < ps.size(); ++d) {
        BigInt den = 1;
        for (std::size_t h = 0; h < ps[d].size(); ++h, den *= 2)
            p_confined += ps[d][h] * Rat(1, den * 3);
    }
    return p_confined == p_half;
}

} // namespace animalab
