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

#include "wnoc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include <fmt/format.h>

#include "wnoc/engine.hpp"
#include "wnoc/rng.hpp"

namespace wnoc {

std::size_t worker_count()
{
	if (const char* env = std::getenv("WNOC_SIM_THREADS")) {
		try {
			const long v = std::stol(env);
			if (v >= 1) return static_cast<std::size_t>(v);
		} catch (const std::exception&) {
		}
		throw ConfigError(std::string("WNOC_SIM_THREADS must be a positive integer (got '") + env + "')");
	}
	return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn)
{
	workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
	if (workers == 1) {
		for (std::size_t i = 0; i < count; ++i) fn(i);
		return;
	}

	std::atomic<std::size_t> next{0};
	std::exception_ptr first;
	std::mutex mu;
	auto body = [&] {
		for (;;) {
			const std::size_t i = next.fetch_add(1);
			if (i >= count) return;
			try {
				fn(i);
			} catch (...) {
				std::lock_guard lock(mu);
				if (!first) first = std::current_exception();
				next = count;
			}
		}
	};
	std::vector<std::jthread> pool;
	for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
	pool.clear();
	if (first) std::rethrow_exception(first);
}

std::uint64_t point_seed(std::uint64_t base_seed, std::size_t rate_index, std::uint32_t repetitions,
			 std::uint32_t repetition)
{
	return derive_seed(base_seed, Stream::Point, rate_index * repetitions + repetition);
}

std::vector<SweepRow> sweep(const SimConfig& base, std::span<const double> rates, std::uint32_t repetitions)
{
	if (rates.empty()) throw std::invalid_argument("sweep needs at least one rate");
	if (repetitions == 0) throw std::invalid_argument("sweep needs at least one repetition");
	if (!std::is_sorted(rates.begin(), rates.end())) throw std::invalid_argument("sweep rates must be ascending");
	validate_config(base);

	std::vector<SweepRow> rows(rates.size() * repetitions);
	parallel_for(rows.size(), worker_count(), [&](std::size_t i) {
		const std::size_t ri = i / repetitions;
		const auto rep = static_cast<std::uint32_t>(i % repetitions);
		SimConfig cfg = base;
		cfg.traffic.injection_rate = rates[ri];
		cfg.seed = point_seed(base.seed, ri, repetitions, rep);
		try {
			rows[i] = {rates[ri], rep, run(cfg)};
		} catch (const ConfigError& e) {
			throw ConfigError(fmt::format("rate {:g}: {}", rates[ri], e.what()));
		} catch (const IntegrityFault& e) {
			throw IntegrityFault(fmt::format("rate {:g}: {}", rates[ri], e.what()));
		} catch (const std::exception& e) {
			throw std::runtime_error(fmt::format("rate {:g}: {}", rates[ri], e.what()));
		}
	});
	return rows;
}

std::vector<ExperimentPoint> run_experiment(const ExperimentSpec& spec)
{
	const std::vector<std::uint32_t> node_counts =
		spec.node_counts.empty() ? std::vector{spec.base.num_nodes} : spec.node_counts;
	const std::size_t nr = spec.sweep_rates.size();
	const std::uint32_t reps = spec.repetitions;

	std::vector<ExperimentPoint> points;
	for (std::uint32_t nodes : node_counts)
		for (const auto& s : spec.series)
			for (std::size_t ri = 0; ri < nr; ++ri)
				for (std::uint32_t rep = 0; rep < reps; ++rep)
					points.push_back({s.label, nodes, spec.sweep_rates[ri], rep, std::nullopt, {},
							  spec.base.link_rate_gbps});

	const std::size_t per_series = nr * reps;
	parallel_for(points.size(), worker_count(), [&](std::size_t i) {
		ExperimentPoint& pt = points[i];
		const std::size_t within = i % per_series;
		const auto& series = spec.series[(i / per_series) % spec.series.size()];
		SimConfig cfg = series_config(spec, series, pt.nodes);
		cfg.traffic.injection_rate = pt.rate;
		cfg.seed = point_seed(spec.base.seed, within / reps, reps, pt.repetition);
		try {
			pt.report = run(cfg);
		} catch (const std::exception& e) {
			pt.error = e.what();
		}
	});
	return points;
}

void write_experiment_csv(std::ostream& os, std::span<const ExperimentPoint> points)
{
	write_results_header(os);
	for (const auto& pt : points)
		if (pt.report) write_results_row(os, *pt.report, pt.link_rate_gbps);
}

}  // namespace wnoc
