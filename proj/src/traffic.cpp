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

#include "wnoc/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace wnoc {

namespace {

double draw_pareto(double scale, double alpha, Rng& rng)
{
	// 1 - U lies in (0, 1]
	const double u = 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);
	return scale * std::pow(u, -1.0 / alpha);
}

double period(const SourceProcess& s, Rng& rng)
{
	return draw_pareto(s.on ? s.on_scale : s.off_scale, s.alpha, rng);
}

}  // namespace

double pareto_shape(double hurst)
{
	return std::clamp(3.0 - 2.0 * hurst, kMinParetoShape, kMaxParetoShape);
}

SourceProcess make_source(NodeId node, double injection_rate, double hurst, Rng& rng)
{
	SourceProcess s;
	s.node = node;
	s.alpha = pareto_shape(hurst);
	if (injection_rate <= 0.0) return s;

	s.on_rate = std::min(1.0, 2.0 * injection_rate);
	const double on_fraction = std::min(1.0, injection_rate / s.on_rate);
	if (on_fraction >= 1.0) {
		s.off_scale = 0.0;
		s.on = true;
		s.remaining = 0.0;
		return s;
	}
	// Equal shapes, so the ON share of time is on_scale / (on_scale + off_scale).
	if (on_fraction <= 0.5) {
		s.on_scale = 1.0;
		s.off_scale = (1.0 - on_fraction) / on_fraction;
	} else {
		s.off_scale = 1.0;
		s.on_scale = on_fraction / (1.0 - on_fraction);
	}
	s.on = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < on_fraction;
	s.remaining = period(s, rng);
	return s;
}

bool step_source(SourceProcess& src, Rng& rng)
{
	if (src.on_rate <= 0.0) return false;
	bool emit = false;
	if (src.on) emit = src.on_rate >= 1.0 || std::uniform_real_distribution<double>(0.0, 1.0)(rng) < src.on_rate;
	if (src.off_scale == 0.0) return emit;

	src.remaining -= 1.0;
	while (src.remaining <= 0.0) {
		src.on = !src.on;
		src.remaining += period(src, rng);
	}
	return emit;
}

SpatialWeights::SpatialWeights(std::vector<double> weights) : w(std::move(weights)), cdf(w.size())
{
	std::partial_sum(w.begin(), w.end(), cdf.begin());
}

double SpatialWeights::dispersion() const
{
	const double n = static_cast<double>(w.size());
	double acc = 0.0;
	for (double x : w) acc += (n * x - 1.0) * (n * x - 1.0);
	return std::sqrt(acc / n);
}

double max_dispersion(std::uint32_t n)
{
	return std::sqrt(static_cast<double>(n) - 1.0);
}

SpatialWeights spatial_weights(std::uint32_t n, double sigma, Rng& rng)
{
	if (n == 0) throw ConfigError("spatial weights need at least one node");
	if (!(sigma >= 0.0)) throw ConfigError("sigma ≥ 0");
	const double cap = max_dispersion(n);
	if (sigma > cap * (1.0 + 1e-12))
		throw ConfigError("sigma above achievable maximum sqrt(n-1) = " + std::to_string(cap));

	if (sigma == 0.0 || n == 1) return SpatialWeights(std::vector<double>(n, 1.0 / n));
	if (sigma >= cap * (1.0 - 1e-12)) {
		std::vector<double> w(n, 0.0);
		w[std::uniform_int_distribution<std::uint32_t>(0, n - 1)(rng)] = 1.0;
		return SpatialWeights(std::move(w));
	}

	// w ∝ exp(s * g): dispersion rises monotonically from 0 (s = 0) toward
	// sqrt(n-1) (s → ∞), so bisection on s hits sigma.
	std::normal_distribution<double> normal;
	std::vector<double> g(n);
	for (auto& x : g) x = normal(rng);
	const double gmax = *std::max_element(g.begin(), g.end());

	std::vector<double> w(n);
	auto shape = [&](double s) {
		double total = 0.0;
		for (std::uint32_t i = 0; i < n; ++i) total += (w[i] = std::exp(s * (g[i] - gmax)));
		for (auto& x : w) x /= total;
		double acc = 0.0;
		for (double x : w) acc += (n * x - 1.0) * (n * x - 1.0);
		return std::sqrt(acc / n);
	};

	double lo = 0.0, hi = 1.0;
	while (shape(hi) < sigma && hi < 1e6) hi *= 2.0;
	for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
		const double mid = 0.5 * (lo + hi);
		(shape(mid) < sigma ? lo : hi) = mid;
	}
	shape(0.5 * (lo + hi));
	return SpatialWeights(std::move(w));
}

NodeId draw_destination(NodeId src, const SpatialWeights& weights, Rng& rng)
{
	const auto n = static_cast<std::uint32_t>(weights.size());
	const double own = weights.w.at(src);
	const double rest = weights.cdf.back() - own;
	if (rest <= 1e-15) return draw_uniform_destination(src, n, rng);

	std::uniform_real_distribution<double> unit(0.0, 1.0);
	if (own < 0.5) {
		while (true) {
			const double x = unit(rng) * weights.cdf.back();
			auto it = std::upper_bound(weights.cdf.begin(), weights.cdf.end(), x);
			auto d = static_cast<NodeId>(std::min<std::ptrdiff_t>(it - weights.cdf.begin(), n - 1));
			if (d != src && weights.w[d] > 0.0) return d;
		}
	}
	// Heavily self-weighted source: walk the renormalized mass directly.
	double x = unit(rng) * rest;
	NodeId last = src;
	for (NodeId d = 0; d < n; ++d) {
		if (d == src || weights.w[d] <= 0.0) continue;
		last = d;
		if (x < weights.w[d]) return d;
		x -= weights.w[d];
	}
	return last;
}

NodeId draw_uniform_destination(NodeId src, std::uint32_t n, Rng& rng)
{
	const auto d = std::uniform_int_distribution<NodeId>(0, n - 2)(rng);
	return d >= src ? d + 1 : d;
}

double estimate_hurst(std::span<const double> series)
{
	constexpr std::size_t kMinLength = std::size_t{1} << 16;
	if (series.size() < kMinLength) throw std::invalid_argument("estimate_hurst: series shorter than 2^16 samples");

	std::vector<double> xs, ys;
	for (int k = 0; k <= 10; ++k) {
		const std::size_t m = std::size_t{1} << k;
		const std::size_t blocks = series.size() / m;
		double mean = 0.0, sq = 0.0;
		for (std::size_t b = 0; b < blocks; ++b) {
			double s = 0.0;
			for (std::size_t i = b * m; i < (b + 1) * m; ++i) s += series[i];
			s /= static_cast<double>(m);
			mean += s;
			sq += s * s;
		}
		mean /= static_cast<double>(blocks);
		const double var = sq / static_cast<double>(blocks) - mean * mean;
		if (k == 0 && !(var > 0.0)) throw std::invalid_argument("estimate_hurst: degenerate series (zero variance)");
		if (!(var > 0.0)) continue;
		xs.push_back(std::log(static_cast<double>(m)));
		ys.push_back(std::log(var));
	}
	const double n = static_cast<double>(xs.size());
	const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
	const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
	double sxy = 0.0, sxx = 0.0;
	for (std::size_t i = 0; i < xs.size(); ++i) {
		sxy += (xs[i] - mx) * (ys[i] - my);
		sxx += (xs[i] - mx) * (xs[i] - mx);
	}
	const double decay = -sxy / sxx;
	return std::clamp(1.0 - decay / 2.0, 0.5, 1.0);
}

std::vector<Arrival> parse_arrival_trace(std::istream& in, std::uint32_t num_nodes, Cycle horizon)
{
	std::string line;
	if (!std::getline(in, line)) throw ConfigError("arrival trace is empty");
	if (!line.empty() && line.back() == '\r') line.pop_back();
	if (line != "cycle,src,dst") throw ConfigError("arrival trace header must be 'cycle,src,dst'");

	std::vector<Arrival> rows;
	std::size_t lineno = 1;
	while (std::getline(in, line)) {
		++lineno;
		if (!line.empty() && line.back() == '\r') line.pop_back();
		if (line.empty()) continue;
		std::istringstream ls(line);
		long long c = -1, s = -1, d = -1;
		char comma1 = 0, comma2 = 0;
		if (!(ls >> c >> comma1 >> s >> comma2 >> d) || comma1 != ',' || comma2 != ',')
			throw ConfigError("arrival trace line " + std::to_string(lineno) + ": expected cycle,src,dst");
		if (c < 0 || static_cast<Cycle>(c) >= horizon)
			throw ConfigError("arrival trace line " + std::to_string(lineno) + ": cycle outside run horizon");
		if (s < 0 || d < 0 || s >= num_nodes || d >= num_nodes || s == d)
			throw ConfigError("arrival trace line " + std::to_string(lineno) + ": bad src/dst");
		if (!rows.empty() && static_cast<Cycle>(c) < rows.back().cycle)
			throw ConfigError("arrival trace line " + std::to_string(lineno) + ": rows not sorted by cycle");
		rows.push_back({static_cast<Cycle>(c), static_cast<NodeId>(s), static_cast<NodeId>(d)});
	}
	return rows;
}

std::vector<Arrival> load_arrival_trace(const std::string& path, std::uint32_t num_nodes, Cycle horizon)
{
	std::ifstream in(path);
	if (!in) throw ConfigError("arrival trace not found: " + path);
	return parse_arrival_trace(in, num_nodes, horizon);
}

TrafficGenerator::TrafficGenerator(const SimConfig& cfg)
    : n_(cfg.num_nodes), axis_(cfg.traffic.hotspot_axis)
{
	Rng hot = make_rng(cfg.seed, Stream::Hotspot);
	weights_ = spatial_weights(n_, cfg.traffic.sigma, hot);

	sources_.reserve(n_);
	rngs_.reserve(n_);
	for (NodeId i = 0; i < n_; ++i) {
		rngs_.push_back(make_rng(cfg.seed, Stream::Traffic, i));
		double rate = cfg.traffic.injection_rate;
		if (axis_ == HotspotAxis::Sources) rate *= n_ * weights_.w[i];
		sources_.push_back(make_source(i, rate, cfg.traffic.hurst, rngs_.back()));
	}
}

TrafficGenerator::TrafficGenerator(const SimConfig& cfg, std::vector<Arrival> trace)
    : n_(cfg.num_nodes), axis_(cfg.traffic.hotspot_axis), replay_(true), trace_(std::move(trace))
{
}

void TrafficGenerator::arrivals(Cycle t, std::vector<Arrival>& out)
{
	if (replay_) {
		while (cursor_ < trace_.size() && trace_[cursor_].cycle <= t) {
			if (trace_[cursor_].cycle == t) out.push_back(trace_[cursor_]);
			++cursor_;
		}
		return;
	}
	for (NodeId i = 0; i < n_; ++i) {
		if (!step_source(sources_[i], rngs_[i])) continue;
		const NodeId dst = axis_ == HotspotAxis::Destinations ? draw_destination(i, weights_, rngs_[i])
								     : draw_uniform_destination(i, n_, rngs_[i]);
		out.push_back({t, i, dst});
	}
}

}  // namespace wnoc
