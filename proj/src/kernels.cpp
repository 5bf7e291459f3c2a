#include "animalab/kernels.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace animalab {

namespace {

void require_nonneg(const AdmissibleSet& a, const char* what) {
    if (a.min() < 0)
        throw std::invalid_argument(std::string(what) + " requires a non-negative layer");
}

std::vector<std::int64_t> support(KernelKind kind, const AdmissibleSet& a) {
    auto f = augment(a).elems();
    if (kind != KernelKind::UIP && !f.empty() && f.front() < 0)
        f.erase(f.begin()); // BHP / UIP+ live on N; only -1 can appear
    return f;
}

BigInt subset_weight(KernelKind kind, const std::vector<std::int64_t>& b) {
    BigInt w = eta(std::span(b.data(), b.size()));
    if (kind != KernelKind::UIP) w *= BigInt(b.front() + 1);
    if (kind == KernelKind::UIP_PLUS) w *= BigInt(b.back() + 2);
    return w;
}

BigInt row_normalizer(KernelKind kind, const AdmissibleSet& a) {
    BigInt n = eta(a) * pow3(static_cast<unsigned>(a.size()));
    if (kind != KernelKind::UIP) n *= BigInt(a.min() + 1);
    if (kind == KernelKind::UIP_PLUS) n *= BigInt(a.max() + 2);
    return n;
}

bool subset_of(const std::vector<std::int64_t>& b, const std::vector<std::int64_t>& f) {
    std::size_t i = 0;
    for (auto x : b) {
        while (i < f.size() && f[i] < x) ++i;
        if (i == f.size() || f[i] != x) return false;
    }
    return true;
}

} // namespace

Rat TransitionTable::prob(const Layer& target) const {
    for (const auto& [t, p] : entries)
        if (t == target) return p;
    return Rat(0);
}

Rat TransitionTable::row_sum() const {
    Rat s(0);
    for (const auto& [t, p] : entries) s += p;
    return s;
}

Rat kernel_prob(KernelKind kind, const AdmissibleSet& a, const Layer& b) {
    if (kind != KernelKind::UIP) require_nonneg(a, "kernel");
    if (!b.has_value()) {
        if (kind != KernelKind::BHP)
            throw std::invalid_argument("the Empty target exists only for the BHP kernel");
        return Rat(1, row_normalizer(kind, a));
    }
    const auto f = support(kind, a);
    if (!subset_of(b->elems(), f)) return Rat(0);
    return Rat(subset_weight(kind, b->elems()), row_normalizer(kind, a));
}

TransitionTable enumerate_row(KernelKind kind, const AdmissibleSet& a, int cap) {
    if (kind != KernelKind::UIP) require_nonneg(a, "kernel");
    const auto f = support(kind, a);
    if (static_cast<int>(f.size()) > cap)
        throw std::invalid_argument("augment(A) exceeds the enumeration cap; use the sampler");
    TransitionTable table{kind, a, {}};
    const BigInt norm = row_normalizer(kind, a);
    std::vector<std::int64_t> b;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == f.size()) {
            if (!b.empty())
                table.entries.emplace_back(AdmissibleSet(b), Rat(subset_weight(kind, b), norm));
            return;
        }
        rec(i + 1);
        b.push_back(f[i]);
        rec(i + 1);
        b.pop_back();
    };
    rec(0);
    if (kind == KernelKind::BHP) table.entries.emplace_back(std::nullopt, Rat(1, norm));
    return table;
}

namespace {

BigInt uniform_below(RngStream& rng, const BigInt& n) {
    if (n <= 1) return 0;
    const unsigned bits = boost::multiprecision::msb(n) + 1;
    const unsigned words = (bits + 63) / 64;
    for (;;) {
        BigInt v = 0;
        for (unsigned i = 0; i < words; ++i) {
            v <<= 64;
            v |= BigInt(rng.next_u64());
        }
        v >>= (words * 64 - bits);
        if (v < n) return v;
    }
}

} // namespace

TransitionSampler::TransitionSampler(KernelKind kind, AdmissibleSet a)
    : kind_(kind), source_(std::move(a)), f_(support(kind, source_)) {
    const std::size_t m = f_.size();
    suffix_.assign(m, BigInt(0));
    for (std::size_t j = m; j-- > 0;) {
        BigInt w = kind_ == KernelKind::UIP_PLUS ? BigInt(f_[j] + 2) : BigInt(1);
        for (std::size_t i = j + 1; i < m; ++i)
            w += BigInt(f_[i] - f_[j] - 1) * suffix_[i];
        suffix_[j] = w;
    }
    entry_cum_.reserve(m + 1);
    BigInt acc = 0;
    for (std::size_t j = 0; j < m; ++j) {
        BigInt e = kind_ == KernelKind::UIP ? BigInt(1) : BigInt(f_[j] + 1);
        acc += e * suffix_[j];
        entry_cum_.push_back(acc);
    }
    if (kind_ == KernelKind::BHP) {
        acc += 1; // the absorbed outcome
        entry_cum_.push_back(acc);
    }
    total_ = acc;
    if (total_ != row_normalizer(kind_, source_))
        throw std::logic_error("suffix weights disagree with the kernel normalizer");
}

Layer TransitionSampler::sample(RngStream& rng) const {
    const std::size_t m = f_.size();
    BigInt r = uniform_below(rng, total_);
    std::size_t j =
        std::upper_bound(entry_cum_.begin(), entry_cum_.end(), r) - entry_cum_.begin();
    if (j >= m) return std::nullopt; // BHP empty slot
    std::vector<std::int64_t> b{f_[j]};
    for (;;) {
        const BigInt t = kind_ == KernelKind::UIP_PLUS ? BigInt(f_[j] + 2) : BigInt(1);
        BigInt r2 = uniform_below(rng, suffix_[j]);
        if (r2 < t) break;
        r2 -= t;
        std::size_t next = j;
        for (std::size_t i = j + 1; i < m; ++i) {
            const BigInt w = BigInt(f_[i] - f_[j] - 1) * suffix_[i];
            if (r2 < w) {
                next = i;
                break;
            }
            r2 -= w;
        }
        j = next;
        b.push_back(f_[j]);
    }
    return AdmissibleSet(std::move(b));
}

AdmissibleSet uip_step_apply(const AdmissibleSet& a, const std::vector<int>& classes,
                             const std::vector<std::int64_t>& cliffs) {
    const auto& z = a.elems();
    const std::size_t l = z.size();
    if (classes.size() != l || cliffs.size() != l - 1)
        throw std::invalid_argument("classes/cliffs sized to the layer");
    auto visits_start_only = [&](std::size_t i) { return classes[i] <= 1; }; // O
    auto nontrivial = [&](std::size_t i) { return classes[i] >= 1; };        // N
    std::vector<std::int64_t> b;
    for (std::size_t i = 0; i < l; ++i) {
        // left child z_i - 1
        if (i == 0) {
            if (visits_start_only(0)) b.push_back(z[0] - 1);
        } else if (z[i] - z[i - 1] >= 4) {
            if (visits_start_only(i) && cliffs[i - 1] <= z[i] - 1) b.push_back(z[i] - 1);
        } // gap 2 collides with the right child of i-1, emitted there
        // right child z_i + 1
        if (i + 1 == l) {
            if (nontrivial(i)) b.push_back(z[i] + 1);
        } else if (z[i + 1] - z[i] == 2) {
            if (nontrivial(i) && visits_start_only(i + 1)) b.push_back(z[i] + 1);
        } else {
            if (nontrivial(i) && cliffs[i] >= z[i] + 3) b.push_back(z[i] + 1);
        }
    }
    if (b.empty()) throw std::logic_error("exploration step produced an empty layer");
    return AdmissibleSet(std::move(b));
}

AdmissibleSet uip_step(const AdmissibleSet& a, RngStream& rng) {
    const auto& z = a.elems();
    std::vector<int> classes(z.size());
    for (auto& c : classes) c = rng.trit();
    std::vector<std::int64_t> cliffs(z.size() ? z.size() - 1 : 0);
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        const std::uint64_t span = static_cast<std::uint64_t>(z[i + 1] - (z[i] + 2)) + 1;
        cliffs[i] = z[i] + 2 + static_cast<std::int64_t>(rng.next_below(span));
    }
    return uip_step_apply(a, classes, cliffs);
}

AdmissibleSet uip_plus_step(const AdmissibleSet& a, RngStream& rng) {
    require_nonneg(a, "uip_plus_step");
    // h(B) = (min B + 1)(max B + 2) is maximized by B = {max A + 1}
    const std::uint64_t bound =
        static_cast<std::uint64_t>(a.max() + 2) * static_cast<std::uint64_t>(a.max() + 3);
    for (;;) {
        AdmissibleSet b = uip_step(a, rng);
        if (b.min() < 0) continue; // h-factor (min+1) vanishes
        const std::uint64_t h =
            static_cast<std::uint64_t>(b.min() + 1) * static_cast<std::uint64_t>(b.max() + 2);
        if (rng.bernoulli_ratio(h, bound)) return b;
    }
}

Rat marginal_ball(KernelKind model, const Animal& c, std::int64_t r) {
    auto cls = classify_animal(c.vertices());
    if (!cls.pyramid) throw std::invalid_argument("marginal_ball requires a pyramid");
    if (model != KernelKind::UIP && !cls.nonneg_pyramid)
        throw std::invalid_argument("this model is supported on non-negative pyramids");
    if (c.height() != r) throw std::invalid_argument("animal must have height exactly r");
    for (const auto& v : c.vertices())
        if (!Ball{r}.contains(v)) throw std::invalid_argument("animal not inside B(r)");
    const Layer top = c.layer(r);
    const auto& xs = top->elems();
    BigInt num = eta(*top);
    BigInt den = pow3(static_cast<unsigned>(c.size() - xs.size()));
    switch (model) {
    case KernelKind::UIP:
        break;
    case KernelKind::BHP:
        num *= BigInt(xs.front() + 1);
        break;
    case KernelKind::UIP_PLUS:
        num *= BigInt(xs.front() + 1) * BigInt(xs.back() + 2);
        den *= 2;
        break;
    }
    return Rat(num, den);
}

namespace {

bool in_cone_of(const Vertex& v, const Vertex& d) {
    return v.y > d.y && std::llabs(v.x - d.x) <= v.y - d.y;
}

bool in_cone_union(const Vertex& v, const std::vector<Vertex>& d) {
    return std::any_of(d.begin(), d.end(), [&](const Vertex& w) { return in_cone_of(v, w); });
}

} // namespace

bool is_proper_boundary_subset(const Animal& c, const std::vector<Vertex>& d) {
    if (d.empty()) return false;
    for (const auto& v : d) {
        if (!c.contains(v)) return false;
        if (in_cone_union(v, d)) return false; // D must sit inside B(D)
    }
    // distinct x-coordinates
    std::vector<std::int64_t> xs;
    for (const auto& v : d) xs.push_back(v.x);
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) return false;
    // boundary of B(D) intersected with C must be exactly D
    for (const auto& v : c.vertices()) {
        if (in_cone_union(v, d)) return false; // C must lie in B(D)
        const bool boundary = in_cone_union({v.x - 1, v.y + 1}, d) ||
                              in_cone_union({v.x + 1, v.y + 1}, d);
        const bool in_d = std::find(d.begin(), d.end(), v) != d.end();
        if (boundary != in_d) return false;
    }
    return true;
}

Rat marginal_general(const Animal& c, const std::vector<Vertex>& d) {
    if (!is_proper_boundary_subset(c, d))
        throw std::invalid_argument("D is not a proper boundary subset of C");
    std::vector<std::int64_t> xs;
    for (const auto& v : d) xs.push_back(v.x);
    std::sort(xs.begin(), xs.end());
    return Rat(eta(std::span(xs.data(), xs.size())),
               pow3(static_cast<unsigned>(c.size() - d.size())));
}

Rat subset_containment_prob(const AdmissibleSet& a, const AdmissibleSet& b) {
    if (!subset_of(b.elems(), a.elems()))
        throw std::invalid_argument("B must be a subset of A");
    return Rat(eta(b), eta(a) * pow3(static_cast<unsigned>(a.size() - b.size())));
}

CherryProbs cherry_probs(std::int64_t gap_left, std::int64_t gap_right) {
    if (gap_left < 2 || gap_right < 2 || gap_left % 2 || gap_right % 2)
        throw std::invalid_argument("gaps must be even and >= 2");
    const std::int64_t j = std::max<std::int64_t>(gap_left, 4);
    const std::int64_t k = std::max<std::int64_t>(gap_right, 4);
    const BigInt den = BigInt(3) * BigInt(j - 1) * BigInt(k - 1);
    CherryProbs p;
    p.both = Rat(BigInt(j - 2) * BigInt(k - 2), den);
    p.right_only = Rat(BigInt(j) * BigInt(k - 2), den);
    p.left_only = Rat(BigInt(j - 2) * BigInt(k), den);
    p.neither = Rat(BigInt(j + k - 1), den);
    return p;
}

ExtremeMoveProbs extreme_move_probs(const AdmissibleSet& a) {
    ExtremeMoveProbs p;
    p.max_up = Rat(2, 3);
    p.min_down = Rat(2, 3);
    p.joint = a.size() >= 2 ? Rat(4, 9) : Rat(1, 3);
    return p;
}

Rat future_infimum_prob(const AdmissibleSet& c, std::int64_t b) {
    require_nonneg(c, "future_infimum_prob");
    if (b < 0 || b > c.min())
        throw std::invalid_argument("future_infimum_prob requires 0 <= b <= min C");
    return Rat(BigInt(c.min() + 1 - b) * BigInt(c.max() + 2 - b),
               BigInt(c.min() + 1) * BigInt(c.max() + 2));
}

} // namespace animalab
