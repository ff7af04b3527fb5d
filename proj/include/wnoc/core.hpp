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
 * @file core.hpp
 * @brief Domain types shared by every simulator module.
 *
 * A run is parameterized by a single SimConfig. Time is counted in global
 * clock cycles; every wireless transaction occupies one epoch of
 * preamble + ACK + data cycles starting on a cycle boundary.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wnoc {

using NodeId = std::uint32_t;
using ChannelId = std::uint32_t;
using Cycle = std::uint64_t;

/// Raised for configuration values that break a SimConfig invariant.
class ConfigError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

/// Raised when the simulation reaches a state the MAC rules forbid.
class IntegrityFault : public std::logic_error {
public:
	using std::logic_error::logic_error;
};

enum class Protocol { TrMac, Brs, Token };

/// Which side of the traffic matrix the hotspot weights shape.
enum class HotspotAxis { Destinations, Sources };

std::string_view to_string(Protocol p);
std::string_view to_string(HotspotAxis a);
Protocol parse_protocol(std::string_view s);
HotspotAxis parse_hotspot_axis(std::string_view s);

struct TrafficConfig {
	double injection_rate = 0.0;  // packets per node per cycle
	double hurst = 0.5;
	double sigma = 0.0;
	HotspotAxis hotspot_axis = HotspotAxis::Destinations;
	// When set, arrivals are replayed from this CSV instead of generated.
	std::string trace_file;
};

struct SimConfig {
	std::uint32_t num_nodes = 64;
	std::uint32_t num_freq_channels = 1;
	std::uint32_t npt = 1;
	std::uint32_t preamble_cycles = 1;
	std::uint32_t ack_cycles = 1;
	std::uint32_t data_cycles = 4;
	double link_rate_gbps = 30.0;
	std::uint32_t backoff_max_exponent = 6;
	Protocol protocol = Protocol::TrMac;
	TrafficConfig traffic;
	std::uint64_t seed = 1;
	Cycle warmup_cycles = 40000;
	Cycle measure_cycles = 200000;
	std::uint32_t queue_capacity = 16;

	// Token hold-off between ring neighbours.
	std::uint32_t token_pass_cycles = 1;
	// A receiver decodes independent preambles on distinct frequency
	// channels in the same cycle. When false its single front-end is
	// jammed by multi-channel contention.
	bool orthogonal_rx = true;
	// Optional clock for ns reporting; 0 disables the conversion.
	double clock_ghz = 0.0;

	Cycle epoch_len() const
	{
		return static_cast<Cycle>(preamble_cycles) + ack_cycles + data_cycles;
	}
	Cycle total_cycles() const { return warmup_cycles + measure_cycles; }
};

struct Packet {
	std::uint64_t id = 0;
	NodeId src = 0;
	NodeId dst = 0;
	Cycle created_at = 0;
	std::optional<Cycle> delivered_at;
};

/// Returns cfg unchanged or throws ConfigError naming the first bad field.
const SimConfig& validate_config(const SimConfig& cfg);

/// Static frequency channel of a node under the uniform round-robin split.
constexpr ChannelId assigned_channel(NodeId node, std::uint32_t num_freq_channels)
{
	return node % num_freq_channels;
}

}  // namespace wnoc
