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

#include "wnoc/phy.hpp"

#include <algorithm>
#include <sstream>

namespace wnoc {

namespace {

[[noreturn]] void fault(const std::string& what, Cycle start, ChannelId channel)
{
	std::ostringstream os;
	os << "integrity fault at cycle " << start << ", channel " << channel << ": " << what;
	throw IntegrityFault(os.str());
}

}  // namespace

bool admit(const ChannelOccupancy& occupancy, ChannelId channel, std::uint32_t npt)
{
	return occupancy.active.at(channel) < npt;
}

RadioState::RadioState(std::uint32_t num_nodes, std::uint32_t num_freq_channels)
    : channels_(num_freq_channels),
      tx_(num_nodes, 0),
      rx_(static_cast<std::size_t>(num_nodes) * num_freq_channels, 0),
      rx_any_(num_nodes, 0)
{
}

void RadioState::begin_rx(NodeId n, ChannelId c)
{
	++rx_[index(n, c)];
	++rx_any_[n];
}

void RadioState::end_rx(NodeId n, ChannelId c)
{
	--rx_[index(n, c)];
	--rx_any_[n];
}

ReceiverView::ReceiverView(std::span<const StartAttempt> cycle_attempts, std::uint32_t num_nodes,
			   std::uint32_t num_freq_channels, bool orthogonal_rx, const RadioState* carried)
    : channels_(num_freq_channels),
      orthogonal_rx_(orthogonal_rx),
      carried_(carried),
      transmitting_(num_nodes, 0),
      multi_channel_target_(num_nodes, 0)
{
	// first channel each rx is targeted on, +1 (0 = untargeted)
	std::vector<std::uint32_t> first_channel(num_nodes, 0);
	for (const auto& a : cycle_attempts) {
		transmitting_.at(a.tx) = 1;
		auto& fc = first_channel.at(a.rx);
		if (fc == 0)
			fc = a.channel + 1;
		else if (fc != a.channel + 1)
			multi_channel_target_[a.rx] = 1;
	}
	if (carried != nullptr) {
		for (NodeId n = 0; n < num_nodes; ++n)
			if (carried->transmitting(n)) transmitting_[n] = 1;
	}
}

bool ReceiverView::silent(NodeId rx, ChannelId c) const
{
	if (transmitting_[rx] != 0) return true;
	if (orthogonal_rx_) return carried_ != nullptr && carried_->receiving(rx, c);
	if (multi_channel_target_[rx] != 0) return true;
	return carried_ != nullptr && carried_->receiving_any(rx);
}

std::vector<DecodeResult> decode_preambles(std::span<const StartAttempt> attempts, const ReceiverView& view,
					   std::uint32_t npt, Rng& rng)
{
	std::vector<DecodeResult> out;
	if (attempts.empty()) return out;

	const ChannelId channel = attempts.front().channel;
	if (attempts.size() > npt) fault("more attempts than npt on one channel", 0, channel);

	const std::uint32_t n = view.num_nodes();
	std::vector<const StartAttempt*> by_rx;
	by_rx.reserve(attempts.size());
	for (const auto& a : attempts) {
		if (a.channel != channel) fault("mixed channels in one decode group", 0, channel);
		if (a.tx == a.rx || a.tx >= n || a.rx >= n) fault("malformed attempt", 0, channel);
		by_rx.push_back(&a);
	}
	std::stable_sort(by_rx.begin(), by_rx.end(),
			 [](const StartAttempt* l, const StartAttempt* r) { return l->rx < r->rx; });

	// Verdict per rx first; erroneous address pools depend on every verdict.
	struct Group {
		NodeId rx;
		std::size_t begin, end;
		DecodeKind kind;
	};
	std::vector<Group> groups;
	for (std::size_t i = 0; i < by_rx.size();) {
		std::size_t j = i;
		while (j < by_rx.size() && by_rx[j]->rx == by_rx[i]->rx) ++j;
		const NodeId rx = by_rx[i]->rx;
		DecodeKind kind = DecodeKind::Correct;
		if (view.silent(rx, channel))
			kind = DecodeKind::Silent;
		else if (j - i >= 2)
			kind = DecodeKind::Erroneous;
		groups.push_back({rx, i, j, kind});
		i = j;
	}

	// Transmitters of this group that will not hear their own ACK may not
	// absorb a stray one either.
	std::vector<std::uint8_t> failing_tx(n, 0);
	for (const auto& g : groups)
		if (g.kind != DecodeKind::Correct)
			for (std::size_t k = g.begin; k < g.end; ++k) failing_tx[by_rx[k]->tx] = 1;

	std::vector<NodeId> pool;
	for (const auto& g : groups) {
		DecodeResult r;
		r.rx = g.rx;
		r.channel = channel;
		r.kind = g.kind;
		if (g.kind == DecodeKind::Correct) {
			r.tx = by_rx[g.begin]->tx;
			r.ack_target = r.tx;
		} else if (g.kind == DecodeKind::Erroneous) {
			std::vector<std::uint8_t> excluded = failing_tx;
			excluded[g.rx] = 1;
			pool.clear();
			for (NodeId c = 0; c < n; ++c)
				if (excluded[c] == 0) pool.push_back(c);
			if (!pool.empty()) {
				std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
				r.decoded_addr = pool[pick(rng)];
				r.ack_target = r.decoded_addr;
			}
		}
		out.push_back(r);
	}
	return out;
}

std::vector<DecodeResult> decode_preambles(std::span<const StartAttempt> attempts, std::uint32_t num_nodes,
					   std::uint32_t npt, Rng& rng)
{
	ChannelId max_channel = 0;
	for (const auto& a : attempts) max_channel = std::max(max_channel, a.channel);
	ReceiverView view(attempts, num_nodes, max_channel + 1, true);
	return decode_preambles(attempts, view, npt, rng);
}

std::map<NodeId, std::uint32_t> route_acks(std::span<const DecodeResult> decodes)
{
	std::map<NodeId, std::uint32_t> quanta;
	for (const auto& d : decodes)
		if (d.kind != DecodeKind::Silent && d.ack_target) ++quanta[*d.ack_target];
	return quanta;
}

std::optional<AckKind> classify_ack(std::uint32_t quanta, bool awaiting)
{
	if (!awaiting) return std::nullopt;
	if (quanta == 0) return AckKind::NoAck;
	if (quanta == 1) return AckKind::AckOk;
	return AckKind::ErroneousAck;
}

EpochOutcome arbitrate_epoch(std::span<const StartAttempt> attempts, const SimConfig& cfg, Cycle start, Rng& rng,
			     const RadioState* carried)
{
	EpochOutcome out;
	out.acks.resize(attempts.size());

	std::vector<std::vector<std::size_t>> per_channel(cfg.num_freq_channels);
	std::vector<std::uint8_t> seen_tx(cfg.num_nodes, 0);
	for (std::size_t i = 0; i < attempts.size(); ++i) {
		const auto& a = attempts[i];
		if (a.channel >= cfg.num_freq_channels) fault("channel out of range", start, a.channel);
		if (a.tx >= cfg.num_nodes || a.rx >= cfg.num_nodes || a.tx == a.rx)
			fault("malformed attempt from node " + std::to_string(a.tx), start, a.channel);
		if (seen_tx[a.tx] != 0) fault("node " + std::to_string(a.tx) + " started twice", start, a.channel);
		if (carried != nullptr && carried->transmitting(a.tx))
			fault("node " + std::to_string(a.tx) + " started while transmitting", start, a.channel);
		seen_tx[a.tx] = 1;
		per_channel[a.channel].push_back(i);
	}
	for (ChannelId c = 0; c < cfg.num_freq_channels; ++c)
		if (per_channel[c].size() > cfg.npt)
			fault(std::to_string(per_channel[c].size()) + " attempts exceed npt=" + std::to_string(cfg.npt),
			      start, c);

	ReceiverView view(attempts, cfg.num_nodes, cfg.num_freq_channels, cfg.orthogonal_rx, carried);
	std::vector<StartAttempt> group;
	for (ChannelId c = 0; c < cfg.num_freq_channels; ++c) {
		if (per_channel[c].empty()) continue;
		group.clear();
		for (auto i : per_channel[c]) group.push_back(attempts[i]);
		auto decodes = decode_preambles(group, view, cfg.npt, rng);
		const auto quanta = route_acks(decodes);
		for (auto i : per_channel[c]) {
			const auto it = quanta.find(attempts[i].tx);
			const std::uint32_t q = it == quanta.end() ? 0 : it->second;
			const AckKind kind = *classify_ack(q, true);
			out.acks[i] = {attempts[i].tx, kind};
			if (kind == AckKind::AckOk) {
				Packet p = attempts[i].packet;
				p.delivered_at = start + cfg.epoch_len();
				out.delivered.push_back(p);
			}
		}
		out.decodes.insert(out.decodes.end(), decodes.begin(), decodes.end());
	}
	return out;
}

}  // namespace wnoc
