#pragma once

#include "animalab/core.hpp"
#include "animalab/kernels.hpp"
#include "animalab/walks.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace animalab {

/// Animal wire format: {"vertices": [[x,y], ...]}, any order, validated.
nlohmann::json animal_to_json(const Animal& a);
Animal animal_from_json(const nlohmann::json& j);

/// Path wire format: a flat integer array.
nlohmann::json path_to_json(const std::vector<std::int64_t>& steps);
std::vector<std::int64_t> path_from_json(const nlohmann::json& j);

/// Trace dump: values plus ladder-time indices.
nlohmann::json trace_to_json(const WalkTrace& t);

nlohmann::json table_to_json(const TransitionTable& t);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace animalab
