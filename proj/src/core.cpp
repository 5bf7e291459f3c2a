#include "animalab/core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace animalab {

AdmissibleSet::AdmissibleSet(std::vector<std::int64_t> elems) : elems_(std::move(elems)) {
    if (elems_.empty()) throw std::invalid_argument("admissible set must be nonempty");
    for (std::size_t i = 0; i + 1 < elems_.size(); ++i) {
        if (elems_[i] >= elems_[i + 1])
            throw std::invalid_argument("admissible set must be strictly increasing");
    }
    const auto parity = ((elems_[0] % 2) + 2) % 2;
    for (auto e : elems_) {
        if (((e % 2) + 2) % 2 != parity)
            throw std::invalid_argument("admissible set must have uniform parity");
    }
}

bool AdmissibleSet::contains(std::int64_t x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
}

BigInt eta(std::span<const std::int64_t> s) {
    BigInt p = 1;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) p *= BigInt(s[i + 1] - s[i] - 1);
    return p;
}

BigInt eta(const AdmissibleSet& a) { return eta(std::span(a.elems())); }

BigInt eta_plus(std::span<const std::int64_t> s) {
    BigInt p = 1;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) p *= BigInt(s[i + 1] - s[i] + 1);
    return p;
}

AdmissibleSet augment(const AdmissibleSet& a) {
    std::vector<std::int64_t> out;
    out.reserve(2 * a.size());
    for (auto e : a.elems()) {
        if (out.empty() || out.back() < e - 1) out.push_back(e - 1);
        out.push_back(e + 1);
    }
    return AdmissibleSet(std::move(out));
}

namespace {

bool vertex_cmp(const Vertex& a, const Vertex& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
}

} // namespace

Animal::Animal(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    auto c = classify_animal(vertices_);
    if (!c.valid) throw std::invalid_argument("not a directed animal: " + c.reason);
    std::sort(vertices_.begin(), vertices_.end(), vertex_cmp);
    const std::int64_t h = vertices_.back().y;
    height_index_.assign(static_cast<std::size_t>(h) + 2, 0);
    for (const auto& v : vertices_) ++height_index_[static_cast<std::size_t>(v.y) + 1];
    for (std::size_t i = 1; i < height_index_.size(); ++i) height_index_[i] += height_index_[i - 1];
}

bool Animal::contains(const Vertex& v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v, vertex_cmp);
}

Layer Animal::layer(std::int64_t n) const {
    if (n < 0 || n > height()) return std::nullopt;
    const auto lo = height_index_[static_cast<std::size_t>(n)];
    const auto hi = height_index_[static_cast<std::size_t>(n) + 1];
    if (lo == hi) return std::nullopt;
    std::vector<std::int64_t> xs;
    xs.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) xs.push_back(vertices_[i].x);
    return AdmissibleSet(std::move(xs));
}

std::vector<Vertex> Animal::sources() const {
    std::vector<Vertex> out;
    for (const auto& v : vertices_)
        if (v.y == 0) out.push_back(v);
    return out;
}

Animal Animal::intersect(const Ball& b) const {
    std::vector<Vertex> kept;
    for (const auto& v : vertices_)
        if (b.contains(v)) kept.push_back(v);
    return Animal(std::move(kept));
}

Animal Animal::mirrored() const {
    std::vector<Vertex> out = vertices_;
    for (auto& v : out) v.x = -v.x;
    return Animal(std::move(out));
}

AnimalClassification classify_animal(const std::vector<Vertex>& vertices) {
    AnimalClassification c;
    if (vertices.empty()) {
        c.reason = "empty vertex set";
        return c;
    }
    std::set<Vertex> have(vertices.begin(), vertices.end());
    if (have.size() != vertices.size()) {
        c.reason = "duplicate vertex";
        return c;
    }
    for (const auto& v : have) {
        if (!on_lattice(v)) {
            c.reason = "vertex (" + std::to_string(v.x) + "," + std::to_string(v.y) +
                       ") off the lattice";
            return c;
        }
        if (v.y > 0 && !have.count({v.x - 1, v.y - 1}) && !have.count({v.x + 1, v.y - 1})) {
            c.reason = "vertex (" + std::to_string(v.x) + "," + std::to_string(v.y) +
                       ") has no parent";
            return c;
        }
    }
    c.valid = true;
    std::vector<std::int64_t> floor_xs;
    std::int64_t min_x = vertices[0].x, max_x = vertices[0].x;
    for (const auto& v : have) {
        if (v.y == 0) floor_xs.push_back(v.x);
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
    }
    c.pyramid = floor_xs.size() == 1 && floor_xs[0] == 0;
    c.nonneg_pyramid = c.pyramid && min_x >= 0;
    c.nonpos_pyramid = c.pyramid && max_x <= 0;
    c.compact_source = true;
    for (std::size_t i = 0; i < floor_xs.size(); ++i) {
        if (floor_xs[i] != -2 * static_cast<std::int64_t>(floor_xs.size() - 1 - i)) {
            c.compact_source = false;
            break;
        }
    }
    return c;
}

namespace {

/// Reachability closure for the chain relation: edge a -> b when y(b) > y(a)
/// and |x(b) - x(a)| <= 1. Rows are indexed by the animal's sorted order.
struct Reach {
    explicit Reach(const Animal& a) : vs(a.vertices()) {
        const std::size_t n = vs.size();
        const std::size_t words = (n + 63) / 64;
        bits.assign(n * words, 0);
        w = words;
        // Process from the top down so closures of higher vertices are ready.
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (vs[j].y > vs[i].y && std::llabs(vs[j].x - vs[i].x) <= 1) {
                    set(i, j);
                    orrow(i, j);
                }
            }
        }
    }

    void set(std::size_t i, std::size_t j) { bits[i * w + j / 64] |= 1ULL << (j % 64); }
    bool get(std::size_t i, std::size_t j) const {
        return (bits[i * w + j / 64] >> (j % 64)) & 1ULL;
    }
    void orrow(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < w; ++k) bits[i * w + k] |= bits[j * w + k];
    }

    std::size_t index(const Vertex& v) const {
        auto it = std::lower_bound(vs.begin(), vs.end(), v, vertex_cmp);
        if (it == vs.end() || !(*it == v)) throw std::invalid_argument("vertex not in animal");
        return static_cast<std::size_t>(it - vs.begin());
    }

    const std::vector<Vertex>& vs;
    std::vector<std::uint64_t> bits;
    std::size_t w = 0;
};

} // namespace

Order compare_partial(const Vertex& a, const Vertex& b, const Animal& animal) {
    if (a == b) return Order::Equal;
    Reach r(animal);
    const auto ia = r.index(a), ib = r.index(b);
    if (r.get(ia, ib)) return Order::Less;
    if (r.get(ib, ia)) return Order::Greater;
    return Order::Incomparable;
}

std::vector<Vertex> sort_total(const Animal& a, bool mirror) {
    Reach r(a);
    const auto& vs = a.vertices();
    std::vector<std::size_t> idx(vs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        if (r.get(i, j)) return true;
        if (r.get(j, i)) return false;
        return mirror ? vs[i].x < vs[j].x : vs[i].x > vs[j].x;
    });
    std::vector<Vertex> out;
    out.reserve(vs.size());
    for (auto i : idx) out.push_back(vs[i]);
    return out;
}

} // namespace animalab
