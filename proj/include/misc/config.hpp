#pragma once

#include <string>

#include "misc/study.hpp"

namespace misc::study {

/// Versioned JSON study configuration. Unknown keys are rejected so typos do
/// not silently fall back to defaults.
struct LoadedConfig {
  StudyConfig study;
  RateSource rate_source;
  std::optional<double> reference_L;
  std::optional<double> reference_margin;
  std::string csv_path;
};

LoadedConfig load_config(const std::string& path);

/// Serialization of a rate model in the same format the config accepts
/// ("rates" with explicit vectors), so fitted rates can be pinned.
std::string rates_to_json(const RateModel& rates);
RateModel rates_from_json(const std::string& text);

}  // namespace misc::study
