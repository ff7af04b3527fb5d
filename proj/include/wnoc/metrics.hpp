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
 * @file metrics.hpp
 * @brief Run statistics, derived rates and the results CSV schema.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wnoc/core.hpp"

namespace wnoc {

struct MetricsReport {
	// identification
	Protocol protocol = Protocol::TrMac;
	std::uint32_t nodes = 0;
	std::uint32_t channels = 0;
	std::uint32_t npt = 0;
	std::uint64_t seed = 0;

	double offered_load = 0.0;  // packets / node / cycle
	std::uint64_t delivered = 0;
	std::uint64_t dropped = 0;
	std::optional<double> mean_latency;  // cycles; empty without deliveries
	std::optional<double> p99_latency;
	double throughput = 0.0;        // delivered packets / cycle, network-wide
	double mean_concurrency = 0.0;  // data-carrying transmissions in flight
	double collision_rate = 0.0;    // failed attempts / attempts

	// measurement-window detail
	std::uint64_t injected = 0;
	std::uint64_t attempts = 0;
	std::uint64_t collisions = 0;
	std::uint64_t latency_samples = 0;
	Cycle measure_cycles = 0;

	// whole-run conservation: injected = delivered + queued + dropped
	std::uint64_t total_injected = 0;
	std::uint64_t total_delivered = 0;
	std::uint64_t total_dropped = 0;
	std::uint64_t queued_at_end = 0;
	std::uint32_t peak_channel_concurrency = 0;
};

/// Accumulates one run. A delivery counts toward throughput when its whole
/// transmission lies inside the measurement window, so a window of M cycles
/// holds at most M / duration deliveries per transmission slot. Latencies
/// cover packets created inside the window.
class MetricsCollector {
public:
	MetricsCollector(Cycle warmup_cycles, Cycle measure_cycles);

	bool in_window(Cycle t) const { return t >= begin_ && t < end_; }

	void on_inject(Cycle t);
	void on_drop(Cycle t);
	void on_attempt(Cycle t, bool collided);
	void on_deliver(const Packet& p, Cycle started_at);
	void on_cycle(Cycle t, std::uint32_t concurrency);
	void on_channel_load(std::uint32_t load);

	const std::vector<Cycle>& latencies() const { return latencies_; }

private:
	friend MetricsReport summarize(const MetricsCollector&, const SimConfig&, std::uint64_t);

	Cycle begin_;
	Cycle end_;
	std::uint64_t injected_ = 0, dropped_ = 0, delivered_ = 0, attempts_ = 0, collisions_ = 0;
	std::uint64_t total_injected_ = 0, total_dropped_ = 0, total_delivered_ = 0;
	std::uint64_t concurrency_sum_ = 0;
	std::uint32_t peak_load_ = 0;
	std::vector<Cycle> latencies_;
};

MetricsReport summarize(const MetricsCollector& acc, const SimConfig& cfg, std::uint64_t queued_at_end);

double aggregate_gbps(const MetricsReport& report, const SimConfig& cfg);
double aggregate_gbps(const MetricsReport& report, double link_rate_gbps);

/// Nearest-rank percentile of an unsorted sample (p in (0, 100]).
double percentile(std::vector<Cycle> samples, double p);

/// Cycles to nanoseconds; empty when no clock is configured.
std::optional<double> cycles_to_ns(double cycles, const SimConfig& cfg);

struct SweepRow {
	double rate = 0.0;
	std::uint32_t repetition = 0;
	MetricsReport report;
};

/// Maximum delivered throughput across a sweep (needs at least 3 rows).
double saturation_point(std::span<const SweepRow> curve);

inline constexpr const char* kResultsCsvHeader =
	"protocol,nodes,channels,npt,rate,throughput,mean_latency_cycles,p99_latency_cycles,aggregate_gbps,"
	"collision_rate,dropped";

void write_results_header(std::ostream& os);
void write_results_row(std::ostream& os, const MetricsReport& r, double link_rate_gbps);

}  // namespace wnoc
