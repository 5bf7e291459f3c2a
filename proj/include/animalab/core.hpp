#pragma once

#include "animalab/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace animalab {

/// Point of the rotated lattice: x + y must be even, y >= 0.
struct Vertex {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

inline bool on_lattice(const Vertex& v) { return v.y >= 0 && ((v.x + v.y) % 2 == 0); }

/// Nonempty strictly increasing integers of uniform parity (one animal layer).
/// The absorbed state of the BHP layer chain is modelled by
/// std::optional<AdmissibleSet> == nullopt, never by an empty element list.
class AdmissibleSet {
public:
    explicit AdmissibleSet(std::vector<std::int64_t> elems);
    static AdmissibleSet singleton(std::int64_t x) { return AdmissibleSet({x}); }

    const std::vector<std::int64_t>& elems() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    std::int64_t min() const { return elems_.front(); }
    std::int64_t max() const { return elems_.back(); }
    bool contains(std::int64_t x) const;

    friend bool operator==(const AdmissibleSet&, const AdmissibleSet&) = default;
    friend auto operator<=>(const AdmissibleSet&, const AdmissibleSet&) = default;

private:
    std::vector<std::int64_t> elems_;
};

using Layer = std::optional<AdmissibleSet>; // nullopt = Empty (absorbed)

/// eta: product of (gap - 1) over consecutive elements; 1 for singletons.
BigInt eta(std::span<const std::int64_t> sorted_elems);
BigInt eta(const AdmissibleSet& a);

/// eta_plus: product of (gap + 1) over consecutive elements; 1 for singletons.
BigInt eta_plus(std::span<const std::int64_t> sorted_elems);

/// [A] = (A-1) u (A+1); admissible with opposite parity.
AdmissibleSet augment(const AdmissibleSet& a);

/// B(r) = (Z x N) n ([-r,r] x [0,r]).
struct Ball {
    std::int64_t r = 0;
    bool contains(const Vertex& v) const {
        return v.y <= r && v.x >= -r && v.x <= r;
    }
};

/// Finite directed animal. Stored as a vertex array sorted by (y, x) with a
/// per-height index, so layer extraction is a slice and membership a binary
/// search.
class Animal {
public:
    /// Validates the animal invariants (nonempty, lattice parity, parent
    /// condition) and throws std::invalid_argument on violation.
    explicit Animal(std::vector<Vertex> vertices);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    std::int64_t height() const { return vertices_.back().y; }
    bool contains(const Vertex& v) const;

    /// x-coordinates of the vertices at height n, or Empty.
    Layer layer(std::int64_t n) const;

    /// Vertices with no parent in the animal (all on the floor).
    std::vector<Vertex> sources() const;

    Animal intersect(const Ball& b) const; // throws if empty
    Animal mirrored() const;               // x -> -x

    friend bool operator==(const Animal&, const Animal&) = default;

private:
    std::vector<Vertex> vertices_;          // sorted by (y, x)
    std::vector<std::size_t> height_index_; // offset of each height slab
};

struct AnimalClassification {
    bool valid = false;
    bool pyramid = false;          // single floor vertex, located at the origin
    bool nonneg_pyramid = false;   // pyramid with all x >= 0
    bool nonpos_pyramid = false;   // pyramid with all x <= 0
    bool compact_source = false;   // floor = {0,-2,...,-2p}
    std::string reason;            // set when !valid
};

/// Pure predicate: animal validity plus classification flags.
AnimalClassification classify_animal(const std::vector<Vertex>& vertices);
inline bool is_directed_animal(const std::vector<Vertex>& vertices) {
    return classify_animal(vertices).valid;
}

enum class Order { Less, Greater, Incomparable, Equal };

/// Decides the heap partial order between two vertices of the animal:
/// a below b iff a chain of vertices with strictly increasing heights and
/// |dx| <= 1 links them. Uses reachability over the finite animal.
Order compare_partial(const Vertex& a, const Vertex& b, const Animal& animal);

/// Total order completing compare_partial; incomparable pairs are sorted by
/// decreasing x (increasing when mirror is set).
std::vector<Vertex> sort_total(const Animal& a, bool mirror = false);

} // namespace animalab
