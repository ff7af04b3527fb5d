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
#include <string>
#include <vector>

#include "doctest.h"
#include "wnoc/core.hpp"

using namespace wnoc;

namespace {

std::string rejection(const SimConfig& c)
{
	try {
		validate_config(c);
	} catch (const ConfigError& e) {
		return e.what();
	}
	return {};
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("default 64-node npt=3 config is accepted")
{
	SimConfig c;
	c.num_nodes = 64;
	c.npt = 3;
	CHECK_NOTHROW(validate_config(c));
	CHECK(&validate_config(c) == &c);
	CHECK(c.epoch_len() == 6);
}

TEST_CASE("violations name the failing field")
{
	SimConfig c;
	c.num_nodes = 1;
	CHECK(rejection(c).find("num_nodes ≥ 2") != std::string::npos);

	c = SimConfig{};
	c.traffic.hurst = 1.2;
	CHECK(rejection(c).find("hurst ≤ 1.0") != std::string::npos);

	c = SimConfig{};
	c.npt = 0;
	CHECK(rejection(c).find("npt") != std::string::npos);

	c = SimConfig{};
	c.traffic.sigma = -0.1;
	CHECK(rejection(c).find("sigma") != std::string::npos);

	c = SimConfig{};
	c.data_cycles = 0;
	CHECK(rejection(c).find("data_cycles") != std::string::npos);
}

TEST_CASE("ack_cycles may be zero")
{
	SimConfig c;
	c.ack_cycles = 0;
	CHECK_NOTHROW(validate_config(c));
	CHECK(c.epoch_len() == 5);
}

TEST_CASE("assigned_channel is node modulo channel count")
{
	CHECK(assigned_channel(5, 2) == 1);
	CHECK(assigned_channel(0, 1) == 0);

	std::vector<int> per(4, 0);
	for (NodeId n = 0; n < 64; ++n) ++per[assigned_channel(n, 4)];
	CHECK(per == std::vector<int>{16, 16, 16, 16});

	// 65 nodes over 4 channels stay balanced within one.
	per.assign(4, 0);
	for (NodeId n = 0; n < 65; ++n) ++per[assigned_channel(n, 4)];
	CHECK(*std::max_element(per.begin(), per.end()) - *std::min_element(per.begin(), per.end()) <= 1);
}

TEST_CASE("protocol and axis names round-trip")
{
	for (auto p : {Protocol::TrMac, Protocol::Brs, Protocol::Token}) CHECK(parse_protocol(to_string(p)) == p);
	for (auto a : {HotspotAxis::Destinations, HotspotAxis::Sources}) CHECK(parse_hotspot_axis(to_string(a)) == a);
	CHECK_THROWS_AS(parse_protocol("ALOHA"), ConfigError);
	CHECK_THROWS_AS(parse_hotspot_axis("FLOWS"), ConfigError);
}

}
