#pragma once

#include "animalab/core.hpp"
#include "animalab/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace animalab {

enum class CountKind { Pyramid, HalfPyramid, CompactSource };

/// Exact number of animals of the class with n vertices, by integer DP over
/// encoding paths (pyramids: paths (a)+(c); half-pyramids: (a)+(d);
/// compact-source: 3^{n-1}, cross-checked against a DP elsewhere).
BigInt count_animals(CountKind kind, int n);

/// Sum over all (a)+(c) paths of length n of (|running min| + 1); equals the
/// compact-source count. Used as the independent oracle for 3^{n-1}.
BigInt count_compact_by_dp(int n);

/// Streams every encoding path of the class with n values into the callback.
/// Caps n (default 12) because the counts grow exponentially.
void enumerate_paths(CountKind kind, int n, const std::function<void(const std::vector<std::int64_t>&)>& fn,
                     int cap = 14);

/// Streams every animal of the class with n vertices (exhaustive decode).
std::vector<Animal> enumerate_animals(CountKind kind, int n, int cap = 14);

/// Streams every layer chain from the given floor set with n vertices total
/// (general directed animals with a prescribed source set).
void enumerate_animals_from_source(const AdmissibleSet& source, int n,
                                   const std::function<void(const std::vector<AdmissibleSet>&)>& fn);

/// Law of the first descending ladder time and its renewal sequence:
///   a_n = P(tau_{-1} = n) from f = (s/3)(1 + f + f^2),
///   u_n from u = f + f*u (convolution).
/// Exact rationals with denominator 3^n; O(n_max^2).
struct SeriesCoeffs {
    std::vector<BigInt> a_num; // a_n = a_num[n] / 3^n, index 0 unused
    std::vector<BigInt> u_num; // u_n = u_num[n] / 3^n
    Rat a(int n) const { return Rat(a_num[n], pow3(n)); }
    Rat u(int n) const { return Rat(u_num[n], pow3(n)); }
    int n_max() const { return static_cast<int>(a_num.size()) - 1; }
};
SeriesCoeffs excursion_law(int n_max);

/// O(n) exact route to the same numerators through holonomic recurrences:
/// a_num[n] satisfies the Motzkin recurrence, u_num[n] the pyramid-count
/// recurrence (n+1)P_{n+1} = (2n+2)P_n + 3(n-1)P_{n-1}. Equality with
/// excursion_law is exact and asserted in the tests.
std::vector<BigInt> motzkin_numbers(int n_max);   // index n -> a_num[n+1]
std::vector<BigInt> pyramid_count_series(int n_max); // index n -> u_num[n]

struct RenewalReport {
    int n = 0;
    double a_ratio = 0;      // a_n / (sqrt(3/4pi) n^{-3/2})
    double u_ratio = 0;      // u_n * sqrt(3 pi n)
    double tail_mass = 0;    // sum_{k<=n} a_k
    bool converging = false; // both ratios within 5% of 1
};
RenewalReport verify_renewal_asymptotics(int n);

/// Named exact identities; returns success and a witness line (the
/// counterexample on failure).
struct IdentityResult {
    bool ok = true;
    std::string witness;
};
IdentityResult verify_identity(const std::string& name, std::uint64_t seed = 1, int trials = 1000);

/// The three kernel-normalization bridges between path DPs and counts:
/// pyramid/half-pyramid counts against raw/shaved walk probabilities, plus
/// the nonneg-excursion vs confined-strict-min identity.
bool verify_counting_bridge(int n);

/// Exact appendix sums, exposed for tests. Elements are taken in the order
/// given (the identities are polynomial identities over the tuple).
BigInt sum_eta_subsets(const std::vector<std::int64_t>& f);                  // sum eta(B)
BigInt sum_eta_max_subsets(const std::vector<std::int64_t>& f);              // sum eta(B) max(B)
BigInt sum_eta_minmax_subsets(const std::vector<std::int64_t>& f);           // sum eta(B) min max
BigInt sum_eta_fixed_max(const std::vector<std::int64_t>& f);                // max(B) = f_n
BigInt sum_eta_fixed_minmax(const std::vector<std::int64_t>& f);             // min = f_1, max = f_n
BigInt eta_sequence(const std::vector<std::int64_t>& f);                     // order as given
BigInt eta_plus_sequence(const std::vector<std::int64_t>& f);

} // namespace animalab
