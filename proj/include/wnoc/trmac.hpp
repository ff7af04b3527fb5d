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
 * @file trmac.hpp
 * @brief Per-node TR-MAC state machine.
 *
 * IDLE/WAIT_CHANNEL --(packet, admissible channel)--> IN_EPOCH
 * IN_EPOCH --ACK_OK--> IDLE (head packet delivered)
 * IN_EPOCH --NO_ACK | ERRONEOUS_ACK--> BACKOFF(k) --> IDLE
 *
 * Backoff is drawn in epochs and served in cycles (k * epoch_len).
 */

#pragma once

#include <cstdint>
#include <deque>
#include <optional>

#include "wnoc/core.hpp"
#include "wnoc/phy.hpp"
#include "wnoc/rng.hpp"

namespace wnoc {

enum class Phase { Idle, WaitChannel, InEpoch, Backoff };

std::string_view to_string(Phase p);

struct NodeState {
	NodeId node = 0;
	std::deque<Packet> queue;
	Phase phase = Phase::Idle;
	Cycle backoff_remaining = 0;  // cycles
	std::uint32_t collision_count = 0;
	Rng rng;

	NodeState() = default;
	NodeState(NodeId id, std::uint64_t seed) : node(id), rng(seed) {}

	/// Appends to the queue; false (packet dropped) when full.
	bool enqueue(const Packet& p, std::uint32_t capacity);
};

/// Uniform integer in [0, 2^min(collision_count, max_exponent) - 1].
std::uint64_t backoff_epochs(std::uint32_t collision_count, std::uint32_t max_exponent, Rng& rng);

/// One boundary step. `radio_busy` marks a node whose radio is still locked
/// receiving data; it defers like a node facing full channels.
std::optional<StartAttempt> node_boundary(NodeState& state, const ChannelOccupancy& occupancy, const SimConfig& cfg,
					  bool radio_busy = false);

/// Applies the ACK verdict of the node's epoch. Returns the delivered packet
/// on ACK_OK.
std::optional<Packet> apply_outcome(NodeState& state, AckKind outcome, const SimConfig& cfg);

}  // namespace wnoc
