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
 * @file traffic.hpp
 * @brief Synthetic bursty/hotspot traffic and arrival-trace replay.
 *
 * Temporal burstiness: every source alternates ON and OFF periods whose
 * lengths are Pareto distributed with shape alpha = 3 - 2H, clamped to
 * [1.05, 1.95]. While ON it emits one packet per cycle with probability
 * on_rate, calibrated so the long-run mean equals the injection rate.
 *
 * Spatial concentration: a weight vector w over nodes whose normalized
 * dispersion std(n * w) equals sigma.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wnoc/core.hpp"
#include "wnoc/rng.hpp"

namespace wnoc {

inline constexpr double kMinParetoShape = 1.05;
inline constexpr double kMaxParetoShape = 1.95;

double pareto_shape(double hurst);

struct SourceProcess {
	NodeId node = 0;
	bool on = false;
	double remaining = 0.0;  // cycles left in the current period
	double on_rate = 0.0;
	double alpha = kMaxParetoShape;
	double on_scale = 1.0;   // Pareto minimum of ON periods
	double off_scale = 1.0;  // Pareto minimum of OFF periods; 0 = never OFF
};

SourceProcess make_source(NodeId node, double injection_rate, double hurst, Rng& rng);

/// Advances the source by one cycle; true if it emits a packet this cycle.
bool step_source(SourceProcess& src, Rng& rng);

struct SpatialWeights {
	std::vector<double> w;
	std::vector<double> cdf;

	SpatialWeights() = default;
	explicit SpatialWeights(std::vector<double> weights);

	std::size_t size() const { return w.size(); }
	/// Population std of n * w_i.
	double dispersion() const;
};

/// Largest dispersion a weight vector over n nodes can reach (all mass on one node).
double max_dispersion(std::uint32_t n);

SpatialWeights spatial_weights(std::uint32_t n, double sigma, Rng& rng);

/// Destination drawn from the weights renormalized without `src`.
NodeId draw_destination(NodeId src, const SpatialWeights& weights, Rng& rng);

/// Uniform destination over every node except `src`.
NodeId draw_uniform_destination(NodeId src, std::uint32_t n, Rng& rng);

/// Variance-time Hurst estimate over block sizes 2^0..2^10.
double estimate_hurst(std::span<const double> series);

struct Arrival {
	Cycle cycle = 0;
	NodeId src = 0;
	NodeId dst = 0;
};

/// Reads a `cycle,src,dst` CSV; rows must be cycle-sorted and inside [0, horizon).
std::vector<Arrival> load_arrival_trace(const std::string& path, std::uint32_t num_nodes, Cycle horizon);
std::vector<Arrival> parse_arrival_trace(std::istream& in, std::uint32_t num_nodes, Cycle horizon);

/// Per-cycle arrival source for one run: synthetic or replayed.
class TrafficGenerator {
public:
	explicit TrafficGenerator(const SimConfig& cfg);
	TrafficGenerator(const SimConfig& cfg, std::vector<Arrival> trace);

	/// Appends the arrivals of cycle `t`; must be called with t = 0, 1, 2, ...
	void arrivals(Cycle t, std::vector<Arrival>& out);

	const SpatialWeights& weights() const { return weights_; }

private:
	std::uint32_t n_;
	HotspotAxis axis_;
	bool replay_ = false;
	SpatialWeights weights_;
	std::vector<SourceProcess> sources_;
	std::vector<Rng> rngs_;
	std::vector<Arrival> trace_;
	std::size_t cursor_ = 0;
};

}  // namespace wnoc
