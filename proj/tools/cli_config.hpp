#pragma once

#include "ose/checks.hpp"
#include "ose/harness.hpp"

#include <map>
#include <string>
#include <vector>

namespace ose::cli {

//! Flat "section.key" -> value settings. Later sources override earlier ones.
using Settings = std::map<std::string, std::string>;

//! Reads an INI-style file: `key = value` lines grouped by `[section]`.
//! Throws std::runtime_error on unreadable or malformed files.
Settings read_config_file(const std::string& path);

//! Copies every entry of `overrides` into `base`.
void merge(Settings& base, const Settings& overrides);

//! Builds the experiment configuration; throws std::invalid_argument for
//! missing or malformed values (the target is mandatory).
ExperimentConfig experiment_from(const Settings& s);

std::vector<double> c_grid_from(const Settings& s);
Index calibration_reps_from(const Settings& s);
CheckOptions check_options_from(const Settings& s);
std::string output_dir_from(const Settings& s);

std::vector<std::string> split_list(const std::string& s);

} // namespace ose::cli
