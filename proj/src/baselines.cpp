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

#include "wnoc/baselines.hpp"

namespace wnoc {

namespace {

constexpr Cycle kNackCycles = 1;

}  // namespace

BrsSlot brs_contend(std::span<const NodeId> contenders, bool channel_busy, const SimConfig& cfg)
{
	if (contenders.empty()) return {};
	if (channel_busy) return {BrsVerdict::Deferred, std::nullopt, 0};
	if (contenders.size() == 1)
		return {BrsVerdict::Success, contenders.front(),
			static_cast<Cycle>(cfg.preamble_cycles) + cfg.data_cycles};
	return {BrsVerdict::Collision, std::nullopt, cfg.preamble_cycles + kNackCycles};
}

bool brs_ready(NodeState& state)
{
	if (state.phase == Phase::InEpoch) return false;
	if (state.phase == Phase::Backoff) {
		if (state.backoff_remaining > 0) {
			--state.backoff_remaining;
			return false;
		}
		state.phase = Phase::Idle;
	}
	if (state.queue.empty()) {
		state.phase = Phase::Idle;
		return false;
	}
	return true;
}

void brs_collided(NodeState& state, const SimConfig& cfg)
{
	state.collision_count = std::min(state.collision_count + 1, cfg.backoff_max_exponent);
	// Counting down starts next cycle; the node may sense again once the
	// preamble and NACK are over.
	state.backoff_remaining = (cfg.preamble_cycles + kNackCycles - 1) +
				  backoff_epochs(state.collision_count, cfg.backoff_max_exponent, state.rng) *
					  cfg.epoch_len();
	state.phase = Phase::Backoff;
}

TokenState make_token_state(const SimConfig& cfg)
{
	TokenState tok;
	tok.pass_cost_cycles = cfg.token_pass_cycles;
	tok.rings.resize(cfg.num_freq_channels);
	for (ChannelId c = 0; c < cfg.num_freq_channels; ++c) tok.rings[c].channel = c;
	for (NodeId n = 0; n < cfg.num_nodes; ++n) {
		const auto slot = token_ring_of(n, cfg.num_freq_channels, cfg.num_nodes);
		tok.rings[slot.ring].members.push_back(n);
	}
	return tok;
}

TokenStep token_advance(TokenRing& ring, std::span<NodeState> nodes, Cycle now, const SimConfig& cfg)
{
	if (ring.members.empty()) throw IntegrityFault("token ring " + std::to_string(ring.channel) + " is empty");
	if (now != ring.next_at)
		throw IntegrityFault("token on channel " + std::to_string(ring.channel) + " advanced at cycle " +
				     std::to_string(now) + ", expected " + std::to_string(ring.next_at));

	TokenStep step;
	step.holder = ring.members[ring.holder];
	NodeState& holder = nodes[step.holder];
	Cycle hold = 0;
	if (!holder.queue.empty() && holder.phase != Phase::InEpoch) {
		step.sent = holder.queue.front();
		holder.queue.pop_front();
		holder.phase = Phase::InEpoch;
		hold = static_cast<Cycle>(cfg.preamble_cycles) + cfg.data_cycles;
		step.deliver_at = now + hold;
		step.sent->delivered_at = step.deliver_at;
	}
	ring.holder = (ring.holder + 1) % ring.members.size();
	step.next_holder = ring.members[ring.holder];
	step.next_at = now + hold + cfg.token_pass_cycles;
	ring.next_at = step.next_at;
	return step;
}

}  // namespace wnoc
