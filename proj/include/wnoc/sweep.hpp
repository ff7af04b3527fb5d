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
 * @file sweep.hpp
 * @brief Injection-rate sweeps and multi-protocol comparisons.
 *
 * Points are independent runs and may execute on worker threads; results
 * always come back in input order. Point seeds depend only on the base seed
 * and the point's (rate index, repetition), so every protocol in a
 * comparison sees identical traffic at the same point.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wnoc/config_io.hpp"
#include "wnoc/metrics.hpp"

namespace wnoc {

/// Worker threads: WNOC_SIM_THREADS if set, else the hardware concurrency.
std::size_t worker_count();

/// Calls fn(i) for i in [0, count) on up to `workers` threads. The first
/// exception is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn);

std::uint64_t point_seed(std::uint64_t base_seed, std::size_t rate_index, std::uint32_t repetitions,
			 std::uint32_t repetition);

/// Runs base at every rate (ascending) `repetitions` times each.
std::vector<SweepRow> sweep(const SimConfig& base, std::span<const double> rates, std::uint32_t repetitions = 1);

struct ExperimentPoint {
	std::string series;
	std::uint32_t nodes = 0;
	double rate = 0.0;
	std::uint32_t repetition = 0;
	std::optional<MetricsReport> report;  // empty when the run failed
	std::string error;
	double link_rate_gbps = 0.0;
};

/// Every (node count, series, rate, repetition) point. A failing point is
/// recorded with its error and does not stop the others.
std::vector<ExperimentPoint> run_experiment(const ExperimentSpec& spec);

/// Results CSV rows for the successful points.
void write_experiment_csv(std::ostream& os, std::span<const ExperimentPoint> points);

}  // namespace wnoc
