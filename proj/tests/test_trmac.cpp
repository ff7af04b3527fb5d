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

#include <set>

#include "doctest.h"
#include "wnoc/trmac.hpp"

using namespace wnoc;

namespace {

Packet pkt(std::uint64_t id, NodeId src = 0, NodeId dst = 1) { return {id, src, dst, 0, std::nullopt}; }

NodeState loaded(NodeId id = 0, std::uint64_t seed = 1)
{
	NodeState s(id, seed);
	s.enqueue(pkt(1, id, id == 1 ? 2 : 1), 16);
	return s;
}

}  // namespace

TEST_SUITE("trmac") {

TEST_CASE("idle node with an empty queue stays quiet")
{
	SimConfig c;
	NodeState s(0, 1);
	ChannelOccupancy occ(1);
	CHECK_FALSE(node_boundary(s, occ, c));
	CHECK(s.phase == Phase::Idle);
}

TEST_CASE("queued packet starts on channel 0 of a free single channel")
{
	SimConfig c;
	c.npt = 3;
	NodeState s = loaded();
	ChannelOccupancy occ(1);
	const auto a = node_boundary(s, occ, c);
	REQUIRE(a);
	CHECK(a->channel == 0);
	CHECK(a->tx == 0);
	CHECK(a->rx == 1);
	CHECK(a->packet.id == 1);
	CHECK(s.phase == Phase::InEpoch);
	CHECK_FALSE(node_boundary(s, occ, c));  // busy in its epoch
}

TEST_CASE("full channels make the node wait without penalty")
{
	SimConfig c;
	c.npt = 3;
	c.num_freq_channels = 2;
	NodeState s = loaded();
	ChannelOccupancy occ(2);
	occ.active = {3, 3};
	CHECK_FALSE(node_boundary(s, occ, c));
	CHECK(s.phase == Phase::WaitChannel);
	CHECK(s.collision_count == 0);
	occ.active = {3, 2};
	const auto a = node_boundary(s, occ, c);
	REQUIRE(a);
	CHECK(a->channel == 1);
}

TEST_CASE("a receiving radio defers")
{
	SimConfig c;
	NodeState s = loaded();
	ChannelOccupancy occ(1);
	CHECK_FALSE(node_boundary(s, occ, c, true));
	CHECK(s.phase == Phase::WaitChannel);
	CHECK(node_boundary(s, occ, c, false));
}

TEST_CASE("multi-channel choice is random among admissible channels")
{
	SimConfig c;
	c.npt = 3;
	c.num_freq_channels = 3;
	ChannelOccupancy occ(3);
	occ.active = {3, 0, 1};
	std::set<ChannelId> seen;
	for (std::uint64_t seed = 0; seed < 200; ++seed) {
		NodeState s = loaded(0, seed);
		seen.insert(node_boundary(s, occ, c)->channel);
	}
	CHECK(seen == std::set<ChannelId>{1, 2});
}

TEST_CASE("backoff draws stay in range")
{
	Rng rng(5);
	for (int i = 0; i < 1000; ++i) {
		CHECK(backoff_epochs(1, 6, rng) <= 1);
		CHECK(backoff_epochs(3, 6, rng) <= 7);
		CHECK(backoff_epochs(9, 6, rng) <= 63);
	}
	std::set<std::uint64_t> seen;
	for (int i = 0; i < 200; ++i) seen.insert(backoff_epochs(1, 6, rng));
	CHECK(seen == std::set<std::uint64_t>{0, 1});
}

TEST_CASE("backoff mean at count 3 is 3.5")
{
	Rng rng(11);
	double sum = 0.0;
	const int draws = 100000;
	for (int i = 0; i < draws; ++i) sum += static_cast<double>(backoff_epochs(3, 6, rng));
	CHECK(sum / draws == doctest::Approx(3.5).epsilon(0.1 / 3.5));
}

TEST_CASE("ACK_OK delivers the head packet and resets the count")
{
	SimConfig c;
	NodeState s = loaded();
	s.collision_count = 4;
	ChannelOccupancy occ(1);
	REQUIRE(node_boundary(s, occ, c));
	const auto p = apply_outcome(s, AckKind::AckOk, c);
	REQUIRE(p);
	CHECK(p->id == 1);
	CHECK(s.queue.empty());
	CHECK(s.collision_count == 0);
	CHECK(s.phase == Phase::Idle);
}

TEST_CASE("failed epochs keep the packet and back off in whole epochs")
{
	SimConfig c;
	std::set<Cycle> first, second;
	for (std::uint64_t seed = 0; seed < 300; ++seed) {
		NodeState s = loaded(0, seed);
		ChannelOccupancy occ(1);
		REQUIRE(node_boundary(s, occ, c));
		CHECK_FALSE(apply_outcome(s, AckKind::NoAck, c));
		CHECK(s.phase == Phase::Backoff);
		CHECK(s.collision_count == 1);
		CHECK(s.queue.size() == 1);
		first.insert(s.backoff_remaining);

		// serve the backoff, retry, fail again
		while (!node_boundary(s, occ, c)) {
		}
		CHECK_FALSE(apply_outcome(s, AckKind::ErroneousAck, c));
		CHECK(s.collision_count == 2);
		second.insert(s.backoff_remaining);
	}
	CHECK(first == std::set<Cycle>{0, 6});
	CHECK(second == std::set<Cycle>{0, 6, 12, 18});
}

TEST_CASE("collision count saturates at the max exponent")
{
	SimConfig c;
	c.backoff_max_exponent = 2;
	NodeState s = loaded();
	ChannelOccupancy occ(1);
	for (int i = 0; i < 5; ++i) {
		while (!node_boundary(s, occ, c)) {
		}
		apply_outcome(s, AckKind::NoAck, c);
		CHECK(s.collision_count <= 2);
		CHECK(s.backoff_remaining <= 3 * c.epoch_len());
	}
	CHECK(s.collision_count == 2);
}

TEST_CASE("a backoff of k cycles silences exactly k boundaries")
{
	SimConfig c;
	NodeState s = loaded();
	s.phase = Phase::Backoff;
	s.backoff_remaining = 12;
	ChannelOccupancy occ(1);
	for (int i = 0; i < 12; ++i) CHECK_FALSE(node_boundary(s, occ, c));
	CHECK(node_boundary(s, occ, c));
}

TEST_CASE("outcome for a node outside an epoch is an integrity fault")
{
	SimConfig c;
	NodeState s = loaded();
	CHECK_THROWS_AS(apply_outcome(s, AckKind::AckOk, c), IntegrityFault);
}

TEST_CASE("full queue drops")
{
	NodeState s(0, 1);
	CHECK(s.enqueue(pkt(1), 2));
	CHECK(s.enqueue(pkt(2), 2));
	CHECK_FALSE(s.enqueue(pkt(3), 2));
	CHECK(s.queue.size() == 2);
}

}
