#include "animalab/encoding.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace animalab {

PathCheck validate_path(const std::vector<std::int64_t>& steps, PathClass cls) {
    PathCheck r;
    if (steps.empty()) {
        r.ok = false;
        r.condition = 'a';
        r.message = "empty path";
        return r;
    }
    auto fail = [&](std::size_t i, char cond, std::string msg) {
        r.ok = false;
        r.index = i;
        r.condition = cond;
        r.message = std::move(msg);
        return r;
    };
    if (cls != PathClass::Any && steps[0] != 0)
        return fail(0, cls == PathClass::Pyramid ? 'c' : 'd', "path must start at 0");
    if (cls == PathClass::Any && ((steps[0] % 2) + 2) % 2 != 0)
        return fail(0, 'b', "x_0 must be even");

    std::int64_t running_min = steps[0];
    for (std::size_t k = 1; k < steps.size(); ++k) {
        const std::int64_t d = steps[k] - steps[k - 1];
        if (d != 1 && d >= 0)
            return fail(k, 'a', "increment must be in Z_-* u {1}");
        switch (cls) {
        case PathClass::Any:
            if (steps[k] <= running_min - 2 && ((steps[k] % 2) + 2) % 2 != 0)
                return fail(k, 'b', "undershoot by >= 2 must land on an even value");
            break;
        case PathClass::Pyramid:
            if (steps[k] < running_min - 1)
                return fail(k, 'c', "path beats its running min by more than 1");
            break;
        case PathClass::NonnegPyramid:
            if (steps[k] < 0) return fail(k, 'd', "negative value");
            break;
        }
        running_min = std::min(running_min, steps[k]);
    }
    return r;
}

std::int64_t drop_height(const Animal& a, std::int64_t x) {
    std::int64_t best = -1;
    for (const auto& v : a.vertices())
        if (v.x == x - 1 || v.x == x + 1) best = std::max(best, v.y);
    return best + 1;
}

std::optional<Animal> drop_domino(const Animal& a, std::int64_t x) {
    const std::int64_t y = drop_height(a, x);
    if (!on_lattice({x, y})) return std::nullopt;
    if (a.contains({x, y})) return std::nullopt; // would land inside a same-column piece
    auto vs = a.vertices();
    vs.push_back({x, y});
    return Animal(std::move(vs));
}

Animal decode_path(const std::vector<std::int64_t>& steps) {
    auto check = validate_path(steps, PathClass::Any);
    if (!check.ok)
        throw std::invalid_argument("path violates condition (" +
                                    std::string(1, check.condition) + ") at index " +
                                    std::to_string(check.index) + ": " + check.message);
    std::vector<Vertex> vs;
    vs.reserve(steps.size());
    std::unordered_map<std::int64_t, std::int64_t> col; // current top per column
    auto top = [&](std::int64_t x) {
        auto it = col.find(x);
        return it == col.end() ? std::int64_t{-1} : it->second;
    };
    for (auto x : steps) {
        const std::int64_t y = 1 + std::max(top(x - 1), top(x + 1));
        col[x] = y;
        vs.push_back({x, y});
    }
    return Animal(std::move(vs));
}

std::vector<std::int64_t> encode_animal(const Animal& a) {
    auto order = sort_total(a);
    std::vector<std::int64_t> xs;
    xs.reserve(order.size());
    for (const auto& v : order) xs.push_back(v.x);
    return xs;
}

} // namespace animalab
