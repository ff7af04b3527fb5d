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

#include "wnoc/trmac.hpp"

#include <algorithm>
#include <vector>

namespace wnoc {

std::string_view to_string(Phase p)
{
	switch (p) {
	case Phase::Idle: return "IDLE";
	case Phase::WaitChannel: return "WAIT_CHANNEL";
	case Phase::InEpoch: return "IN_EPOCH";
	case Phase::Backoff: return "BACKOFF";
	}
	return "?";
}

bool NodeState::enqueue(const Packet& p, std::uint32_t capacity)
{
	if (queue.size() >= capacity) return false;
	queue.push_back(p);
	return true;
}

std::uint64_t backoff_epochs(std::uint32_t collision_count, std::uint32_t max_exponent, Rng& rng)
{
	const std::uint32_t e = std::min(collision_count, max_exponent);
	const std::uint64_t hi = (std::uint64_t{1} << e) - 1;
	return std::uniform_int_distribution<std::uint64_t>(0, hi)(rng);
}

std::optional<StartAttempt> node_boundary(NodeState& state, const ChannelOccupancy& occupancy, const SimConfig& cfg,
					  bool radio_busy)
{
	if (state.phase == Phase::InEpoch) return std::nullopt;
	if (state.phase == Phase::Backoff) {
		if (state.backoff_remaining > 0) {
			--state.backoff_remaining;
			return std::nullopt;
		}
		state.phase = Phase::Idle;
	}
	if (state.queue.empty()) {
		state.phase = Phase::Idle;
		return std::nullopt;
	}
	if (radio_busy) {
		state.phase = Phase::WaitChannel;
		return std::nullopt;
	}

	ChannelId channel = 0;
	if (cfg.num_freq_channels == 1) {
		if (!admit(occupancy, 0, cfg.npt)) {
			state.phase = Phase::WaitChannel;
			return std::nullopt;
		}
	} else {
		std::vector<ChannelId> open;
		for (ChannelId c = 0; c < cfg.num_freq_channels; ++c)
			if (admit(occupancy, c, cfg.npt)) open.push_back(c);
		if (open.empty()) {
			state.phase = Phase::WaitChannel;
			return std::nullopt;
		}
		channel = open.size() == 1 ? open.front()
					   : open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(state.rng)];
	}

	const Packet& head = state.queue.front();
	state.phase = Phase::InEpoch;
	return StartAttempt{state.node, head.dst, channel, head};
}

std::optional<Packet> apply_outcome(NodeState& state, AckKind outcome, const SimConfig& cfg)
{
	if (state.phase != Phase::InEpoch || state.queue.empty())
		throw IntegrityFault("ACK outcome for node " + std::to_string(state.node) + " which is not in an epoch");

	if (outcome == AckKind::AckOk) {
		Packet p = state.queue.front();
		state.queue.pop_front();
		state.collision_count = 0;
		state.phase = Phase::Idle;
		return p;
	}
	state.collision_count = std::min(state.collision_count + 1, cfg.backoff_max_exponent);
	state.backoff_remaining =
		backoff_epochs(state.collision_count, cfg.backoff_max_exponent, state.rng) * cfg.epoch_len();
	state.phase = Phase::Backoff;
	return std::nullopt;
}

}  // namespace wnoc
