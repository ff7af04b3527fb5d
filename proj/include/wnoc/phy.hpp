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
 * @file phy.hpp
 * @brief Behavioral model of the time-reversal wireless medium.
 *
 * Transactions that start in the same cycle form one arbitration group per
 * frequency channel. Inside a group:
 *
 *  - a receiver targeted by exactly one preamble decodes the transmitter
 *    address and returns a one-quantum ACK to it (CORRECT);
 *  - a receiver targeted by two or more preambles decodes a wrong address
 *    and sends its ACK quantum there (ERRONEOUS);
 *  - a receiver whose radio is busy transmitting, or already locked on a
 *    transaction on that channel, hears nothing (SILENT).
 *
 * ACK energy is counted in quanta. The transmitter-side threshold sits
 * between one quantum (expected ACK) and two (erroneous ACK overlapping a
 * correct one).
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "wnoc/core.hpp"
#include "wnoc/rng.hpp"

namespace wnoc {

struct StartAttempt {
	NodeId tx = 0;
	NodeId rx = 0;
	ChannelId channel = 0;
	Packet packet;
};

enum class DecodeKind { Correct, Erroneous, Silent };

struct DecodeResult {
	NodeId rx = 0;
	ChannelId channel = 0;
	DecodeKind kind = DecodeKind::Silent;
	std::optional<NodeId> tx;            // CORRECT only
	std::optional<NodeId> decoded_addr;  // ERRONEOUS only; empty if no node can absorb it
	std::optional<NodeId> ack_target;
};

enum class AckKind { AckOk, NoAck, ErroneousAck };

struct AckOutcome {
	NodeId tx = 0;
	AckKind kind = AckKind::NoAck;
};

/// Busy-tone registry: transactions currently holding each frequency channel.
struct ChannelOccupancy {
	std::vector<std::uint32_t> active;

	explicit ChannelOccupancy(std::uint32_t num_freq_channels = 1) : active(num_freq_channels, 0) {}
};

bool admit(const ChannelOccupancy& occupancy, ChannelId channel, std::uint32_t npt);

/// Radio activity carried over from transactions that started in earlier cycles.
class RadioState {
public:
	RadioState(std::uint32_t num_nodes, std::uint32_t num_freq_channels);

	bool transmitting(NodeId n) const { return tx_[n] != 0; }
	bool receiving(NodeId n, ChannelId c) const { return rx_[index(n, c)] != 0; }
	bool receiving_any(NodeId n) const { return rx_any_[n] != 0; }

	void begin_tx(NodeId n) { ++tx_[n]; }
	void end_tx(NodeId n) { --tx_[n]; }
	void begin_rx(NodeId n, ChannelId c);
	void end_rx(NodeId n, ChannelId c);

	std::uint32_t num_nodes() const { return static_cast<std::uint32_t>(tx_.size()); }
	std::uint32_t num_channels() const { return channels_; }

private:
	std::size_t index(NodeId n, ChannelId c) const { return static_cast<std::size_t>(n) * channels_ + c; }

	std::uint32_t channels_;
	std::vector<std::uint16_t> tx_;
	std::vector<std::uint16_t> rx_;
	std::vector<std::uint16_t> rx_any_;
};

/// Which receivers can listen in one start cycle.
class ReceiverView {
public:
	/// Builds the view from every attempt starting this cycle (all channels).
	ReceiverView(std::span<const StartAttempt> cycle_attempts, std::uint32_t num_nodes,
		     std::uint32_t num_freq_channels, bool orthogonal_rx, const RadioState* carried = nullptr);

	bool transmitting(NodeId n) const { return transmitting_[n] != 0; }
	bool silent(NodeId rx, ChannelId c) const;
	std::uint32_t num_nodes() const { return static_cast<std::uint32_t>(transmitting_.size()); }

private:
	std::uint32_t channels_;
	bool orthogonal_rx_;
	const RadioState* carried_;
	std::vector<std::uint8_t> transmitting_;
	std::vector<std::uint8_t> multi_channel_target_;
};

/// Decodes the preambles of one channel group. Results are ordered by rx.
std::vector<DecodeResult> decode_preambles(std::span<const StartAttempt> attempts, const ReceiverView& view,
					   std::uint32_t npt, Rng& rng);

/// Single-channel convenience: the view is derived from the attempts alone.
std::vector<DecodeResult> decode_preambles(std::span<const StartAttempt> attempts, std::uint32_t num_nodes,
					   std::uint32_t npt, Rng& rng);

/// ACK quanta landing at each node. Every CORRECT or ERRONEOUS decode with a
/// target contributes one quantum.
std::map<NodeId, std::uint32_t> route_acks(std::span<const DecodeResult> decodes);

/// Energy-threshold verdict at a transmitter; empty when it is not waiting.
std::optional<AckKind> classify_ack(std::uint32_t quanta, bool awaiting);

struct EpochOutcome {
	std::vector<AckOutcome> acks;        // one per attempt, input order
	std::vector<DecodeResult> decodes;   // grouped by channel, then rx
	std::vector<Packet> delivered;       // ACK_OK packets, stamped with the epoch end
};

/// Arbitrates every transaction that starts in cycle `start`. Frequency
/// channels are independent. Throws IntegrityFault when a channel carries
/// more than npt attempts or an attempt is malformed.
EpochOutcome arbitrate_epoch(std::span<const StartAttempt> attempts, const SimConfig& cfg, Cycle start, Rng& rng,
			     const RadioState* carried = nullptr);

}  // namespace wnoc
