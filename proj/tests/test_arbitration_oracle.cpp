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

// Exhaustive check of epoch arbitration on 4-node networks against a
// brute-force restatement of the medium rules. The oracle takes the
// implementation's random erroneous addresses as given and verifies they
// come from the allowed pool; everything else it derives on its own.

#include <array>
#include <optional>
#include <set>
#include <vector>

#include "doctest.h"
#include "wnoc/phy.hpp"

using namespace wnoc;

namespace {

constexpr std::uint32_t N = 4;

enum class Carry { None, Tx, RxCh0 };

struct Scenario {
	std::vector<StartAttempt> attempts;
	std::array<Carry, N> carry{};
	std::uint32_t channels = 1;
	std::uint32_t npt = 4;
	bool orthogonal = true;
};

struct OracleResult {
	bool fault = false;
	std::vector<AckKind> acks;
	int checked_erroneous = 0;
};

bool oracle_transmitting(const Scenario& s, NodeId n)
{
	if (s.carry[n] == Carry::Tx) return true;
	for (const auto& a : s.attempts)
		if (a.tx == n) return true;
	return false;
}

// SILENT, or the number of same-channel preambles aimed at rx.
std::optional<int> oracle_hears(const Scenario& s, NodeId rx, ChannelId ch)
{
	if (oracle_transmitting(s, rx)) return std::nullopt;
	std::set<ChannelId> aimed_on;
	for (const auto& a : s.attempts)
		if (a.rx == rx) aimed_on.insert(a.channel);
	const bool busy_here = s.carry[rx] == Carry::RxCh0 && ch == 0;
	const bool busy_any = s.carry[rx] == Carry::RxCh0;
	if (s.orthogonal ? busy_here : (busy_any || aimed_on.size() > 1)) return std::nullopt;
	int count = 0;
	for (const auto& a : s.attempts)
		if (a.rx == rx && a.channel == ch) ++count;
	return count;
}

OracleResult oracle(const Scenario& s, const EpochOutcome& impl)
{
	OracleResult r;
	std::vector<int> per_channel(s.channels, 0);
	for (const auto& a : s.attempts) {
		if (++per_channel[a.channel] > static_cast<int>(s.npt)) r.fault = true;
		if (s.carry[a.tx] == Carry::Tx) r.fault = true;
	}
	if (r.fault) return r;

	for (const auto& a : s.attempts) {
		std::array<int, N> quanta{};
		// Own preamble heard alone: one quantum back.
		const auto own = oracle_hears(s, a.rx, a.channel);
		if (own && *own == 1) ++quanta[a.tx];

		// Nodes whose own attempt on this channel will not be acknowledged.
		std::set<NodeId> failing;
		for (const auto& b : s.attempts) {
			if (b.channel != a.channel) continue;
			const auto h = oracle_hears(s, b.rx, b.channel);
			if (!h || *h != 1) failing.insert(b.tx);
		}
		// Every collided receiver on this channel sends one stray quantum.
		std::set<NodeId> collided;
		for (const auto& b : s.attempts) {
			const auto h = oracle_hears(s, b.rx, b.channel);
			if (b.channel == a.channel && h && *h >= 2) collided.insert(b.rx);
		}
		for (NodeId rx : collided) {
			const DecodeResult* d = nullptr;
			for (const auto& x : impl.decodes)
				if (x.rx == rx && x.channel == a.channel) d = &x;
			REQUIRE(d != nullptr);
			CHECK(d->kind == DecodeKind::Erroneous);
			std::set<NodeId> banned = failing;
			banned.insert(rx);
			if (banned.size() == N) {
				CHECK_FALSE(d->decoded_addr);
				continue;
			}
			REQUIRE(d->decoded_addr);
			const NodeId addr = *d->decoded_addr;
			CHECK(addr < N);
			CHECK(banned.count(addr) == 0);
			for (const auto& b : s.attempts)
				if (b.rx == rx && b.channel == a.channel) CHECK(addr != b.tx);
			++r.checked_erroneous;
			++quanta[addr];
		}
		r.acks.push_back(quanta[a.tx] == 0 ? AckKind::NoAck
				 : quanta[a.tx] == 1 ? AckKind::AckOk
						      : AckKind::ErroneousAck);
	}
	return r;
}

struct Tally {
	int scenarios = 0, faults = 0, erroneous = 0, ok = 0;
};

void check_scenario(const Scenario& s, Tally& tally, std::uint64_t seed)
{
	SimConfig cfg;
	cfg.num_nodes = N;
	cfg.num_freq_channels = s.channels;
	cfg.npt = s.npt;
	cfg.orthogonal_rx = s.orthogonal;
	RadioState carried(N, s.channels);
	for (NodeId n = 0; n < N; ++n) {
		if (s.carry[n] == Carry::Tx) carried.begin_tx(n);
		if (s.carry[n] == Carry::RxCh0) carried.begin_rx(n, 0);
	}

	++tally.scenarios;
	Rng rng(seed);
	std::optional<EpochOutcome> impl;
	try {
		impl = arbitrate_epoch(s.attempts, cfg, 0, rng, &carried);
	} catch (const IntegrityFault&) {
	}
	const OracleResult want = oracle(s, impl ? *impl : EpochOutcome{});
	if (want.fault) {
		CHECK_FALSE(impl);
		++tally.faults;
		return;
	}
	REQUIRE(impl);
	REQUIRE(impl->acks.size() == want.acks.size());
	std::size_t ok = 0;
	for (std::size_t i = 0; i < want.acks.size(); ++i) {
		CHECK(impl->acks[i].tx == s.attempts[i].tx);
		CHECK(impl->acks[i].kind == want.acks[i]);
		if (want.acks[i] == AckKind::AckOk) {
			++ok;
			// A delivered packet's receiver heard exactly one preamble.
			CHECK(oracle_hears(s, s.attempts[i].rx, s.attempts[i].channel) == 1);
		}
	}
	CHECK(impl->delivered.size() == ok);
	tally.ok += static_cast<int>(ok);
	tally.erroneous += want.checked_erroneous;
}

// Each node either idles or sends to one of the other three nodes on one of
// the channels: (1 + 3C)^4 attempt sets.
template <typename Fn>
void for_each_attempt_set(std::uint32_t channels, Fn&& fn)
{
	const std::uint32_t choices = 1 + 3 * channels;
	std::uint32_t total = 1;
	for (std::uint32_t i = 0; i < N; ++i) total *= choices;
	for (std::uint32_t code = 0; code < total; ++code) {
		std::vector<StartAttempt> attempts;
		std::uint32_t x = code;
		for (NodeId tx = 0; tx < N; ++tx, x /= choices) {
			const std::uint32_t c = x % choices;
			if (c == 0) continue;
			const std::uint32_t k = c - 1;
			const NodeId rx = (tx + 1 + k % 3) % N;
			const ChannelId ch = k / 3;
			attempts.push_back({tx, rx, ch, Packet{tx, tx, rx, 0, std::nullopt}});
		}
		fn(code, attempts);
	}
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("single channel, every npt, every carried radio state")
{
	Tally tally;
	for (std::uint32_t npt = 1; npt <= 4; ++npt) {
		for_each_attempt_set(1, [&](std::uint32_t code, const std::vector<StartAttempt>& attempts) {
			for (std::uint32_t carry_code = 0; carry_code < 81; ++carry_code) {
				Scenario s{attempts, {}, 1, npt, true};
				for (NodeId n = 0, x = carry_code; n < N; ++n, x /= 3) s.carry[n] = static_cast<Carry>(x % 3);
				check_scenario(s, tally, code * 131 + carry_code);
			}
		});
	}
	CHECK(tally.scenarios == 4 * 256 * 81);
	CHECK(tally.faults > 0);
	CHECK(tally.erroneous > 0);
	CHECK(tally.ok > 0);
}

TEST_CASE("two channels, orthogonal and single front-end receivers")
{
	for (bool orth : {true, false}) {
		Tally tally;
		for (std::uint32_t npt : {1u, 2u, 4u}) {
			for_each_attempt_set(2, [&](std::uint32_t code, const std::vector<StartAttempt>& attempts) {
				for (std::uint32_t carry_code = 0; carry_code < 81; ++carry_code) {
					Scenario s{attempts, {}, 2, npt, orth};
					for (NodeId n = 0, x = carry_code; n < N; ++n, x /= 3)
						s.carry[n] = static_cast<Carry>(x % 3);
					check_scenario(s, tally, code * 7 + carry_code);
				}
			});
		}
		CHECK(tally.scenarios == 3 * 2401 * 81);
		CHECK(tally.erroneous > 0);
	}
}

TEST_CASE("hand-worked cases")
{
	Tally tally;
	const auto mk = [](NodeId tx, NodeId rx) { return StartAttempt{tx, rx, 0, Packet{tx, tx, rx, 0, std::nullopt}}; };
	// three parallel links, collision at a common receiver, busy receiver,
	// and a collision whose stray ACK can hit a third transmitter
	for (const auto& attempts : {std::vector{mk(0, 1), mk(2, 3)}, std::vector{mk(0, 2), mk(1, 2)},
				     std::vector{mk(0, 1), mk(1, 2)}, std::vector{mk(0, 2), mk(1, 2), mk(3, 0)}}) {
		for (std::uint64_t seed = 0; seed < 32; ++seed) check_scenario({attempts, {}, 1, 3, true}, tally, seed);
	}
	CHECK(tally.faults == 0);
}

}
