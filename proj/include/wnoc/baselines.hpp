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
 * @file baselines.hpp
 * @brief Multi-channel comparison protocols: BRS random access and token passing.
 *
 * BRS: each node is bound to assigned_channel(node). A node with a packet
 * senses its channel every cycle; when idle it sends a preamble. A lone
 * contender owns the channel for preamble + data cycles. Two or more
 * contenders are detected within the preamble, a broadcast NACK takes one
 * more cycle and every collider backs off in epoch-long slots.
 *
 * Token passing: channel c circulates one token around the virtual ring of
 * nodes with node % C == c. The holder sends at most one packet per visit,
 * then hands the token on after token_pass_cycles.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wnoc/core.hpp"
#include "wnoc/trmac.hpp"

namespace wnoc {

// ---------------------------------------------------------------- BRS

enum class BrsVerdict { Idle, Deferred, Success, Collision };

struct BrsSlot {
	BrsVerdict verdict = BrsVerdict::Idle;
	std::optional<NodeId> winner;
	Cycle busy_cycles = 0;  // how long the channel stays held from this cycle
};

/// Outcome of one contention cycle on one channel.
BrsSlot brs_contend(std::span<const NodeId> contenders, bool channel_busy, const SimConfig& cfg);

/// Backoff countdown for one cycle; true when the node has a packet and may sense the channel.
bool brs_ready(NodeState& state);

/// Puts a collider into backoff: the NACK window plus k epoch-long slots.
void brs_collided(NodeState& state, const SimConfig& cfg);

// ---------------------------------------------------------------- Token

struct RingSlot {
	std::uint32_t ring = 0;
	std::uint32_t position = 0;
};

constexpr RingSlot token_ring_of(NodeId node, std::uint32_t num_channels, std::uint32_t /*num_nodes*/)
{
	return {node % num_channels, node / num_channels};
}

struct TokenRing {
	ChannelId channel = 0;
	std::vector<NodeId> members;  // ascending position
	std::size_t holder = 0;       // index into members
	Cycle next_at = 0;            // cycle the holder acts
};

struct TokenState {
	std::vector<TokenRing> rings;
	std::uint32_t pass_cost_cycles = 1;
};

TokenState make_token_state(const SimConfig& cfg);

struct TokenStep {
	NodeId holder = 0;
	std::optional<Packet> sent;  // removed from the holder's queue
	Cycle deliver_at = 0;
	NodeId next_holder = 0;
	Cycle next_at = 0;
};

/// Runs the ring's holder at cycle `now` (must equal ring.next_at) and moves the token on.
TokenStep token_advance(TokenRing& ring, std::span<NodeState> nodes, Cycle now, const SimConfig& cfg);

}  // namespace wnoc
