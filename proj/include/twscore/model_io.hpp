#pragma once

#include "twscore/emos.hpp"

#include <string>
#include <vector>

namespace twscore {

// Distribution <-> JSON object {"family": ..., "params": {...}}.
std::string distribution_to_json(const Distribution& d);
Distribution distribution_from_json(const std::string& json_text);

// Model files are JSON arrays of
// {station_id, family, trained_with: {kind, tau, gamma}, coeffs: {alpha,
// beta, lmu_sin, lmu_cos, gamma_c, delta, lsig_sin, lsig_cos}}.
std::string models_to_json(const std::vector<EmosModel>& models);
std::vector<EmosModel> models_from_json(const std::string& json_text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace twscore
