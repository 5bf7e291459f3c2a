#include "animalab/json_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace animalab {

using nlohmann::json;

json animal_to_json(const Animal& a) {
    json verts = json::array();
    for (const auto& v : a.vertices()) verts.push_back({v.x, v.y});
    return json{{"vertices", verts}};
}

Animal animal_from_json(const json& j) {
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw std::invalid_argument("animal JSON needs a \"vertices\" array");
    std::vector<Vertex> vs;
    for (const auto& e : j["vertices"]) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("each vertex must be an [x, y] pair");
        vs.push_back({e[0].get<std::int64_t>(), e[1].get<std::int64_t>()});
    }
    return Animal(std::move(vs));
}

json path_to_json(const std::vector<std::int64_t>& steps) { return json(steps); }

std::vector<std::int64_t> path_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("path JSON must be a flat integer array");
    return j.get<std::vector<std::int64_t>>();
}

json trace_to_json(const WalkTrace& t) {
    const char* kind = nullptr;
    switch (t.kind) {
    case TraceKind::Raw: kind = "raw"; break;
    case TraceKind::Shaved: kind = "shaved"; break;
    case TraceKind::ShavedConditionedNonpos: kind = "nonpos"; break;
    case TraceKind::ConditionedNonneg: kind = "nonneg"; break;
    }
    return json{{"kind", kind}, {"values", t.values}, {"ladder_times", t.ladder_times}};
}

json table_to_json(const TransitionTable& t) {
    json rows = json::array();
    for (const auto& [target, p] : t.entries) {
        json row;
        row["target"] = target ? json(target->elems()) : json("empty");
        row["prob"] = rat_to_string(p);
        rows.push_back(row);
    }
    return json{{"set", t.source.elems()}, {"entries", rows}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
}

} // namespace animalab
