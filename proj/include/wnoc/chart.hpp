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
 * @file chart.hpp
 * @brief Self-contained SVG latency/throughput charts.
 */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wnoc/sweep.hpp"

namespace wnoc {

struct ChartPoint {
	double x = 0.0;     // mean throughput
	double y = 0.0;     // mean latency
	double y_lo = 0.0;  // whisker range over repetitions
	double y_hi = 0.0;
};

struct ChartSeries {
	std::string label;
	std::vector<ChartPoint> points;
};

/// One series per label for the given node count, one point per rate.
/// Rates where no repetition delivered a packet are left out.
std::vector<ChartSeries> latency_throughput_series(std::span<const ExperimentPoint> points, std::uint32_t nodes);

/// Same aggregation for a plain sweep.
ChartSeries latency_throughput_series(std::span<const SweepRow> rows, std::string label);

/// Latency (log scale) against delivered throughput.
std::string render_latency_throughput_svg(const std::string& title, std::span<const ChartSeries> series);

}  // namespace wnoc
