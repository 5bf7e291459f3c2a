#pragma once

#include "animalab/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace animalab {

/// Path classes of the encoding:
///   (a) increments in Z_-* u {1}
///   (b) x_0 even and every undershoot of the running min by >= 2 lands even
///   (c) x_0 = 0 and the running min is never beaten by more than 1
///   (d) x_0 = 0 and all values >= 0
enum class PathClass { Any, Pyramid, NonnegPyramid };

struct PathCheck {
    bool ok = true;
    std::size_t index = 0; // first violating index when !ok
    char condition = 0;    // 'a', 'b', 'c' or 'd'
    std::string message;
};

/// Validates a path against a class: (a)+(b) for Any, (a)+(c) for Pyramid,
/// (a)+(d) for NonnegPyramid. Empty paths are rejected.
PathCheck validate_path(const std::vector<std::int64_t>& steps, PathClass cls);

/// Psi^{-1}: drop dominoes from infinity along the path; y_k = 1 + max{y_i :
/// i < k, |x_k - x_i| = 1} with max(empty) = -1. Requires (a)+(b); throws
/// std::invalid_argument naming the violating index otherwise.
Animal decode_path(const std::vector<std::int64_t>& steps);

/// Psi: x-coordinates of sort_total(a). decode_path(encode_animal(a)) == a.
std::vector<std::int64_t> encode_animal(const Animal& a);

/// Adds the vertex obtained by dropping a domino from infinite height at
/// column x. Returns nullopt when the landing spot is off the lattice
/// (odd column landing on the floor).
std::optional<Animal> drop_domino(const Animal& a, std::int64_t x);

/// Landing height of a domino dropped at column x (without adding it).
std::int64_t drop_height(const Animal& a, std::int64_t x);

} // namespace animalab
