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

#include <algorithm>
#include <cmath>
#include <random>
#include <numeric>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "wnoc/traffic.hpp"

using namespace wnoc;

namespace {

double population_std_scaled(const std::vector<double>& w)
{
	const double n = static_cast<double>(w.size());
	double ss = 0.0;
	for (double x : w) ss += (n * x - 1.0) * (n * x - 1.0);
	return std::sqrt(ss / n);
}

// Per-cycle arrival counts summed over independent sources.
std::vector<double> aggregate_series(std::size_t length, int sources, double rate, double hurst, std::uint64_t seed)
{
	std::vector<double> s(length, 0.0);
	for (int k = 0; k < sources; ++k) {
		Rng rng = make_rng(seed, Stream::Traffic, static_cast<std::uint64_t>(k));
		SourceProcess src = make_source(static_cast<NodeId>(k), rate, hurst, rng);
		for (auto& x : s) x += step_source(src, rng) ? 1.0 : 0.0;
	}
	return s;
}

}  // namespace

TEST_SUITE("traffic") {

TEST_CASE("Pareto shape follows 3 - 2H within its clamp")
{
	CHECK(pareto_shape(0.5) == doctest::Approx(1.95));
	CHECK(pareto_shape(0.9) == doctest::Approx(1.2));
	CHECK(pareto_shape(1.0) == doctest::Approx(1.05));
	CHECK(pareto_shape(0.3) == doctest::Approx(1.95));
}

TEST_CASE("zero rate never emits")
{
	Rng rng(1);
	SourceProcess s = make_source(0, 0.0, 0.9, rng);
	for (int i = 0; i < 100000; ++i) REQUIRE_FALSE(step_source(s, rng));
}

TEST_CASE("memoryless limit at H = 0.5")
{
	Rng rng(1);
	const SourceProcess s = make_source(0, 0.01, 0.5, rng);
	CHECK(s.alpha == doctest::Approx(1.95));
}

TEST_CASE("long-run mean rate matches the configured rate")
{
	for (double h : {0.5, 0.9}) {
		for (double rate : {0.001, 0.01, 0.1}) {
			const auto s = aggregate_series(1u << 20, 64, rate, h, 3);
			const double mean = std::accumulate(s.begin(), s.end(), 0.0) / (64.0 * s.size());
			CHECK_MESSAGE(std::abs(mean / rate - 1.0) < 0.05, "H=" << h << " rate=" << rate << " mean=" << mean);
		}
	}
}

TEST_CASE("spatial weights hit the requested dispersion")
{
	Rng rng(9);
	const SpatialWeights u = spatial_weights(64, 0.0, rng);
	for (double w : u.w) CHECK(w == 1.0 / 64.0);

	for (std::uint64_t seed = 0; seed < 20; ++seed) {
		Rng r(seed);
		const SpatialWeights w = spatial_weights(64, 0.5, r);
		CHECK(std::accumulate(w.w.begin(), w.w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
		CHECK(population_std_scaled(w.w) == doctest::Approx(0.5).epsilon(0.02));
		CHECK(w.dispersion() == doctest::Approx(population_std_scaled(w.w)));
		for (double x : w.w) CHECK(x >= 0.0);
	}

	Rng r4(2);
	const SpatialWeights w4 = spatial_weights(4, 1.0, r4);
	CHECK(population_std_scaled(w4.w) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("dispersion beyond the one-hot limit is rejected")
{
	Rng rng(1);
	CHECK(max_dispersion(64) == doctest::Approx(std::sqrt(63.0)));
	CHECK_THROWS_AS(spatial_weights(64, 8.0, rng), ConfigError);
	const SpatialWeights one_hot = spatial_weights(4, std::sqrt(3.0), rng);
	CHECK(*std::max_element(one_hot.w.begin(), one_hot.w.end()) == doctest::Approx(1.0));
}

TEST_CASE("destination excludes the source")
{
	Rng rng(4);
	const SpatialWeights two(std::vector<double>{0.5, 0.5});
	for (int i = 0; i < 100; ++i) CHECK(draw_destination(0, two, rng) == 1);

	Rng r(5);
	const SpatialWeights w = spatial_weights(16, 1.0, r);
	for (int i = 0; i < 20000; ++i) {
		const NodeId src = static_cast<NodeId>(i % 16);
		CHECK(draw_destination(src, w, r) != src);
		CHECK(draw_uniform_destination(src, 16, r) != src);
	}
}

TEST_CASE("renormalized hotspot frequency")
{
	Rng rng(6);
	const SpatialWeights w(std::vector<double>{0.7, 0.1, 0.1, 0.1});
	int hits = 0;
	const int draws = 100000;
	for (int i = 0; i < draws; ++i) hits += draw_destination(3, w, rng) == 0;
	CHECK(static_cast<double>(hits) / draws == doctest::Approx(0.7 / 0.9).epsilon(0.01 / 0.778));

	// a dominant source weight goes through the explicit walk
	const SpatialWeights heavy(std::vector<double>{0.1, 0.6, 0.2, 0.1});
	int to2 = 0;
	for (int i = 0; i < draws; ++i) {
		const NodeId d = draw_destination(1, heavy, rng);
		CHECK(d != 1);
		to2 += d == 2;
	}
	CHECK(static_cast<double>(to2) / draws == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("destination marginals pass a chi-square test")
{
	Rng rng(12);
	const SpatialWeights w = spatial_weights(64, 0.5, rng);
	const NodeId src = 17;
	const int draws = 100000;
	std::vector<int> hits(64, 0);
	for (int i = 0; i < draws; ++i) ++hits[draw_destination(src, w, rng)];
	CHECK(hits[src] == 0);
	double chi2 = 0.0;
	const double rest = 1.0 - w.w[src];
	for (NodeId d = 0; d < 64; ++d) {
		if (d == src) continue;
		const double e = draws * w.w[d] / rest;
		chi2 += (hits[d] - e) * (hits[d] - e) / e;
	}
	CHECK(chi2 < 90.80);  // 62 dof, p = 0.01
}

TEST_CASE("Hurst estimator on reference series")
{
	Rng rng(21);
	std::bernoulli_distribution coin(0.3);
	std::vector<double> iid(1u << 18);
	for (auto& x : iid) x = coin(rng);
	CHECK(estimate_hurst(iid) == doctest::Approx(0.5).epsilon(0.1));

	CHECK_THROWS(estimate_hurst(std::vector<double>(1u << 16, 1.0)));
	CHECK_THROWS(estimate_hurst(std::vector<double>(1u << 16, 0.0)));
	CHECK_THROWS(estimate_hurst(std::vector<double>(1000, 0.5)));
}

TEST_CASE("generator burstiness is visible to the estimator")
{
	const double h9 = estimate_hurst(aggregate_series(1u << 20, 8, 0.25, 0.9, 1));
	CHECK(h9 >= 0.8);
	CHECK(h9 <= 1.0);
	const double h5 = estimate_hurst(aggregate_series(1u << 20, 8, 0.25, 0.5, 1));
	CHECK(h5 == doctest::Approx(0.5).epsilon(0.2));
	CHECK(h9 > h5);
}

TEST_CASE("arrival trace parsing")
{
	std::istringstream ok("cycle,src,dst\n0,1,2\n0,2,1\n5,0,3\n");
	const auto a = parse_arrival_trace(ok, 4, 10);
	REQUIRE(a.size() == 3);
	CHECK(a[2].cycle == 5);
	CHECK(a[2].dst == 3);

	const auto bad = [](const char* text) {
		std::istringstream in(text);
		return parse_arrival_trace(in, 4, 10);
	};
	CHECK_THROWS_AS(bad("time,src,dst\n0,1,2\n"), ConfigError);
	CHECK_THROWS_AS(bad("cycle,src,dst\n3,1,2\n2,1,2\n"), ConfigError);
	CHECK_THROWS_AS(bad("cycle,src,dst\n10,1,2\n"), ConfigError);
	CHECK_THROWS_AS(bad("cycle,src,dst\n1,1,1\n"), ConfigError);
	CHECK_THROWS_AS(bad("cycle,src,dst\n1,1,9\n"), ConfigError);
	CHECK_THROWS_AS(bad("cycle,src,dst\n1,x,2\n"), ConfigError);
	CHECK_THROWS_AS(load_arrival_trace("/nonexistent/arrivals.csv", 4, 10), ConfigError);
}

TEST_CASE("generator is a pure function of config and seed")
{
	SimConfig c;
	c.num_nodes = 16;
	c.traffic.injection_rate = 0.05;
	c.traffic.hurst = 1.0;
	c.traffic.sigma = 0.5;
	TrafficGenerator g1(c), g2(c);
	std::vector<Arrival> a1, a2;
	for (Cycle t = 0; t < 20000; ++t) {
		g1.arrivals(t, a1);
		g2.arrivals(t, a2);
	}
	REQUIRE(a1.size() == a2.size());
	CHECK(!a1.empty());
	for (std::size_t i = 0; i < a1.size(); ++i) {
		CHECK(a1[i].cycle == a2[i].cycle);
		CHECK(a1[i].src == a2[i].src);
		CHECK(a1[i].dst == a2[i].dst);
		CHECK(a1[i].src != a1[i].dst);
	}
}

TEST_CASE("source-axis hotspot scales per-node injection")
{
	SimConfig c;
	c.num_nodes = 16;
	c.traffic.injection_rate = 0.02;
	c.traffic.hurst = 0.5;
	c.traffic.sigma = 1.5;
	c.traffic.hotspot_axis = HotspotAxis::Sources;
	TrafficGenerator g(c);
	std::vector<Arrival> a;
	const Cycle T = 400000;
	for (Cycle t = 0; t < T; ++t) g.arrivals(t, a);
	std::vector<double> per(16, 0.0);
	for (const auto& x : a) per[x.src] += 1.0;
	const auto& w = g.weights().w;
	for (NodeId n = 0; n < 16; ++n) {
		const double expect = std::min(1.0, 16.0 * w[n] * 0.02) * T;
		if (expect > 2000) CHECK(per[n] == doctest::Approx(expect).epsilon(0.1));
	}
}

}
