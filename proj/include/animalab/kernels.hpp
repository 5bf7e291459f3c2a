#pragma once

#include "animalab/core.hpp"
#include "animalab/rational.hpp"
#include "animalab/rng.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace animalab {

enum class KernelKind { BHP, UIP, UIP_PLUS };

/// One enumerated kernel row: exact probability per reachable target.
/// For the BHP the absorbed state appears as the nullopt target.
struct TransitionTable {
    KernelKind kind;
    AdmissibleSet source;
    std::vector<std::pair<Layer, Rat>> entries;

    Rat prob(const Layer& target) const;
    Rat row_sum() const;
};

/// Exact transition probability of the layer chain:
///   BHP:  eta-weighted with a (min B + 1) factor and an Empty outcome,
///   UIP:  eta(B) / (eta(A) 3^{|A|}),
///   UIP+: additional (min B + 1)(max B + 2) h-factor.
/// Returns 0 for targets outside the support; throws on domain violations
/// (A not within N for BHP/UIP+, Empty target outside the BHP).
Rat kernel_prob(KernelKind kind, const AdmissibleSet& a, const Layer& b);

/// Full row with exact probabilities; throws when |augment(A)| exceeds the
/// cap (use TransitionSampler instead).
TransitionTable enumerate_row(KernelKind kind, const AdmissibleSet& a, int cap = 22);

/// Exact row sampler that never enumerates the 2^m subsets. Suffix weights
///   W(j) = t_j + sum_{i>j} (f_i - f_j - 1) W(i)
/// over F = augment(A) answer "total weight of subsets whose leftmost chosen
/// element is f_j"; the leftmost element is then drawn proportionally to its
/// entry weight and the subset is completed left to right by the exact
/// conditional weights. The BHP/UIP+ min factor enters as a phantom element
/// at -2, the UIP+ max factor as the terminal weight f_j + 2.
class TransitionSampler {
public:
    TransitionSampler(KernelKind kind, AdmissibleSet a);

    Layer sample(RngStream& rng) const;

    /// Total subset weight including the BHP empty mass; equals the kernel
    /// normalizer (min A + 1)^{BHP,UIP+} (max A + 2)^{UIP+} eta(A) 3^{|A|}.
    const BigInt& total_weight() const { return total_; }

private:
    KernelKind kind_;
    AdmissibleSet source_;
    std::vector<std::int64_t> f_;       // support elements, ascending
    std::vector<BigInt> suffix_;        // W(j)
    std::vector<BigInt> entry_cum_;     // cumulative e_j W(j), plus empty mass
    BigInt total_;
};

/// O(|A|) exact sampler for the UIP layer step, built from the walk
/// exploration: each layer element draws one of three equally likely
/// excursion classes and each gap one uniform cliff position; the next
/// layer is a deterministic function of those draws.
AdmissibleSet uip_step(const AdmissibleSet& a, RngStream& rng);

/// Exact UIP+ step: uip_step proposal accepted with probability
/// (min B + 1)(max B + 2) / ((min A + 2)(max A + 3)).
AdmissibleSet uip_plus_step(const AdmissibleSet& a, RngStream& rng);

/// The deterministic map behind uip_step, exposed so tests can enumerate the
/// full (classes, cliffs) space and compare the induced law with
/// enumerate_row exactly. classes[i] in {0,1,2}; cliffs[i] in
/// [a_i + 2, a_{i+1}] indexed by ascending gaps.
AdmissibleSet uip_step_apply(const AdmissibleSet& a, const std::vector<int>& classes,
                             const std::vector<std::int64_t>& cliffs);

/// Closed-form ball marginals (pyramid of height exactly r required):
///   BHP:  (min C_r + 1) eta(C_r) / 3^{|C|-|C_r|}
///   UIP:  eta(C_r) / 3^{|C|-|C_r|}
///   UIP+: (min C_r + 1)(max C_r + 2) eta(C_r) / (2 3^{|C|-|C_r|})
Rat marginal_ball(KernelKind model, const Animal& c, std::int64_t r);

/// P(UIP trace on B(D) equals C) = eta(D) / 3^{|C|-|D|} for a proper
/// boundary subset D of C. Throws when D is not proper.
Rat marginal_general(const Animal& c, const std::vector<Vertex>& d);

/// Proper-boundary-subset predicate of the generalized marginal.
bool is_proper_boundary_subset(const Animal& c, const std::vector<Vertex>& d);

/// P(next layer subset of augment(B) | current = A) = eta(B)/eta(A) 3^{|B|-|A|}.
Rat subset_containment_prob(const AdmissibleSet& a, const AdmissibleSet& b);

/// Joint occupation law of the two children of an interior particle with
/// clamped gaps j = max(gapL,4), k = max(gapR,4):
///   both, right only, left only, neither (sums to 1).
struct CherryProbs {
    Rat both, right_only, left_only, neither;
};
CherryProbs cherry_probs(std::int64_t gap_left, std::int64_t gap_right);

/// P(max moves +1), P(min moves -1) (both 2/3) and their exact joint.
struct ExtremeMoveProbs {
    Rat max_up, min_down, joint;
};
ExtremeMoveProbs extreme_move_probs(const AdmissibleSet& a);

/// P(min of the UIP+ layer stays >= b forever | start C), 0 <= b <= min C:
///   (min C + 1 - b)(max C + 2 - b) / ((min C + 1)(max C + 2)).
Rat future_infimum_prob(const AdmissibleSet& c, std::int64_t b);

} // namespace animalab
