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

#include "wnoc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace wnoc {

MetricsCollector::MetricsCollector(Cycle warmup_cycles, Cycle measure_cycles)
    : begin_(warmup_cycles), end_(warmup_cycles + measure_cycles)
{
}

void MetricsCollector::on_inject(Cycle t)
{
	++total_injected_;
	if (in_window(t)) ++injected_;
}

void MetricsCollector::on_drop(Cycle t)
{
	++total_dropped_;
	if (in_window(t)) ++dropped_;
}

void MetricsCollector::on_attempt(Cycle t, bool collided)
{
	if (!in_window(t)) return;
	++attempts_;
	if (collided) ++collisions_;
}

void MetricsCollector::on_deliver(const Packet& p, Cycle started_at)
{
	++total_delivered_;
	const Cycle at = p.delivered_at.value();
	if (started_at >= begin_ && at <= end_) ++delivered_;
	if (in_window(p.created_at)) latencies_.push_back(at - p.created_at);
}

void MetricsCollector::on_cycle(Cycle t, std::uint32_t concurrency)
{
	if (in_window(t)) concurrency_sum_ += concurrency;
}

void MetricsCollector::on_channel_load(std::uint32_t load)
{
	peak_load_ = std::max(peak_load_, load);
}

double percentile(std::vector<Cycle> samples, double p)
{
	if (samples.empty()) throw std::invalid_argument("percentile of an empty sample");
	const auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(samples.size())));
	const std::size_t idx = std::clamp<std::size_t>(rank, 1, samples.size()) - 1;
	std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(idx), samples.end());
	return static_cast<double>(samples[idx]);
}

MetricsReport summarize(const MetricsCollector& acc, const SimConfig& cfg, std::uint64_t queued_at_end)
{
	MetricsReport r;
	r.protocol = cfg.protocol;
	r.nodes = cfg.num_nodes;
	r.channels = cfg.num_freq_channels;
	r.npt = cfg.npt;
	r.seed = cfg.seed;
	r.offered_load = cfg.traffic.injection_rate;
	r.measure_cycles = cfg.measure_cycles;

	r.injected = acc.injected_;
	r.delivered = acc.delivered_;
	r.dropped = acc.dropped_;
	r.attempts = acc.attempts_;
	r.collisions = acc.collisions_;
	r.throughput = static_cast<double>(acc.delivered_) / static_cast<double>(cfg.measure_cycles);
	r.mean_concurrency = static_cast<double>(acc.concurrency_sum_) / static_cast<double>(cfg.measure_cycles);
	r.collision_rate = acc.attempts_ == 0 ? 0.0
					      : static_cast<double>(acc.collisions_) / static_cast<double>(acc.attempts_);

	r.latency_samples = acc.latencies_.size();
	if (!acc.latencies_.empty()) {
		const double sum = std::accumulate(acc.latencies_.begin(), acc.latencies_.end(), 0.0);
		r.mean_latency = sum / static_cast<double>(acc.latencies_.size());
		r.p99_latency = percentile(acc.latencies_, 99.0);
	}

	r.total_injected = acc.total_injected_;
	r.total_delivered = acc.total_delivered_;
	r.total_dropped = acc.total_dropped_;
	r.queued_at_end = queued_at_end;
	r.peak_channel_concurrency = acc.peak_load_;
	return r;
}

double aggregate_gbps(const MetricsReport& report, double link_rate_gbps)
{
	return report.mean_concurrency * link_rate_gbps;
}

double aggregate_gbps(const MetricsReport& report, const SimConfig& cfg)
{
	return aggregate_gbps(report, cfg.link_rate_gbps);
}

std::optional<double> cycles_to_ns(double cycles, const SimConfig& cfg)
{
	if (cfg.clock_ghz <= 0.0) return std::nullopt;
	return cycles / cfg.clock_ghz;
}

double saturation_point(std::span<const SweepRow> curve)
{
	if (curve.size() < 3) throw std::invalid_argument("saturation_point needs at least 3 sweep rows");
	double best = 0.0;
	for (const auto& row : curve) best = std::max(best, row.report.throughput);
	return best;
}

void write_results_header(std::ostream& os)
{
	os << kResultsCsvHeader << '\n';
}

void write_results_row(std::ostream& os, const MetricsReport& r, double link_rate_gbps)
{
	auto opt = [](const std::optional<double>& v) { return v ? fmt::format("{:.6g}", *v) : std::string(); };
	os << fmt::format("{},{},{},{},{:.6g},{:.6g},{},{},{:.6g},{:.6g},{}\n", to_string(r.protocol), r.nodes,
			  r.channels, r.npt, r.offered_load, r.throughput, opt(r.mean_latency), opt(r.p99_latency),
			  aggregate_gbps(r, link_rate_gbps), r.collision_rate, r.dropped);
}

}  // namespace wnoc
