/*
 * Copyright 2026 The wnoc-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file config_io.hpp
 * @brief TOML loading for run configurations and comparison experiments.
 *
 * Run config keys are the SimConfig field names; traffic fields live in a
 * [traffic] table:
 *
 * @code{.toml}
 * num_nodes = 64
 * npt = 3
 * protocol = "TRMAC"
 * [traffic]
 * injection_rate = 0.002
 * hurst = 1.0
 * sigma = 0.5
 * @endcode
 *
 * Omitted keys keep their defaults; warmup_cycles defaults to a fifth of
 * measure_cycles. Unknown keys are rejected.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wnoc/core.hpp"

namespace wnoc {

SimConfig parse_config_toml(std::string_view text, std::string_view source = "<string>");
SimConfig load_config(const std::string& path);
std::string to_toml(const SimConfig& cfg);

/// One curve of a comparison: a protocol plus per-series overrides.
struct SeriesSpec {
	std::string label;
	Protocol protocol = Protocol::TrMac;
	std::optional<std::uint32_t> num_freq_channels;
	std::optional<std::uint32_t> npt;
};

struct ExperimentSpec {
	std::string name = "compare";
	SimConfig base;
	std::vector<double> sweep_rates;
	std::vector<SeriesSpec> series;
	std::vector<std::uint32_t> node_counts;  // empty: base.num_nodes only
	std::uint32_t repetitions = 3;
	std::string output_dir = ".";
};

/// Parses an experiment file: an [experiment] table plus a [base] run config.
ExperimentSpec parse_experiment_toml(std::string_view text, std::string_view source = "<string>");
ExperimentSpec load_experiment(const std::string& path);

/// Config for one series at one node count (rate and seed left to the caller).
SimConfig series_config(const ExperimentSpec& spec, const SeriesSpec& series, std::uint32_t nodes);

}  // namespace wnoc
