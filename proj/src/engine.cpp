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

#include "wnoc/engine.hpp"

#include <deque>
#include <ostream>

#include "wnoc/baselines.hpp"
#include "wnoc/phy.hpp"
#include "wnoc/rng.hpp"
#include "wnoc/trmac.hpp"

namespace wnoc {

std::string_view to_string(TraceEvent e)
{
	switch (e) {
	case TraceEvent::Inject: return "INJECT";
	case TraceEvent::Drop: return "DROP";
	case TraceEvent::Start: return "START";
	case TraceEvent::AckOk: return "ACK_OK";
	case TraceEvent::NoAck: return "NO_ACK";
	case TraceEvent::ErrAck: return "ERR_ACK";
	case TraceEvent::Deliver: return "DELIVER";
	case TraceEvent::TokenPass: return "TOKEN_PASS";
	case TraceEvent::Nack: return "NACK";
	}
	return "?";
}

CsvTraceWriter::CsvTraceWriter(std::ostream& os) : os_(os)
{
	os_ << kTraceCsvHeader << '\n';
}

void CsvTraceWriter::record(Cycle cycle, TraceEvent event, NodeId node, std::optional<NodeId> peer,
			    std::optional<ChannelId> channel, std::optional<std::uint64_t> packet_id)
{
	os_ << cycle << ',' << to_string(event) << ',' << node << ',';
	if (peer) os_ << *peer;
	os_ << ',';
	if (channel) os_ << *channel;
	os_ << ',';
	if (packet_id) os_ << *packet_id;
	os_ << '\n';
}

namespace {

TraceEvent trace_event(AckKind k)
{
	switch (k) {
	case AckKind::AckOk: return TraceEvent::AckOk;
	case AckKind::NoAck: return TraceEvent::NoAck;
	case AckKind::ErroneousAck: return TraceEvent::ErrAck;
	}
	return TraceEvent::NoAck;
}

/// A transaction holding a channel until `end`.
struct Transaction {
	Cycle end = 0;
	NodeId tx = 0;
	NodeId rx = 0;
	ChannelId channel = 0;
	AckKind outcome = AckKind::AckOk;
	std::optional<Packet> packet;  // token passing: the packet left the queue at start
};

class Simulation {
public:
	Simulation(const SimConfig& cfg, TrafficGenerator traffic, TraceSink* trace)
	    : cfg_(validate_config(cfg)),
	      traffic_(std::move(traffic)),
	      trace_(trace),
	      metrics_(cfg.warmup_cycles, cfg.measure_cycles),
	      occupancy_(cfg.num_freq_channels),
	      radio_(cfg.num_nodes, cfg.num_freq_channels),
	      phy_rng_(make_rng(cfg.seed, Stream::Phy)),
	      brs_busy_until_(cfg.num_freq_channels, 0)
	{
		nodes_.reserve(cfg.num_nodes);
		for (NodeId i = 0; i < cfg.num_nodes; ++i)
			nodes_.emplace_back(i, derive_seed(cfg.seed, Stream::NodeMac, i));
		if (cfg.protocol == Protocol::Token) token_ = make_token_state(cfg);
	}

	MetricsReport run()
	{
		const Cycle horizon = cfg_.total_cycles();
		for (Cycle t = 0; t < horizon; ++t) {
			inject(t);
			complete(t);
			switch (cfg_.protocol) {
			case Protocol::TrMac: step_trmac(t); break;
			case Protocol::Brs: step_brs(t); break;
			case Protocol::Token: step_token(t); break;
			}
			sample(t);
		}
		std::uint64_t queued = 0;
		for (const auto& n : nodes_) queued += n.queue.size();
		for (const auto& tr : active_)
			if (tr.packet) ++queued;
		return summarize(metrics_, cfg_, queued);
	}

private:
	void emit(Cycle t, TraceEvent e, NodeId node, std::optional<NodeId> peer = {},
		  std::optional<ChannelId> channel = {}, std::optional<std::uint64_t> packet = {})
	{
		if (trace_ != nullptr) trace_->record(t, e, node, peer, channel, packet);
	}

	void inject(Cycle t)
	{
		arrivals_.clear();
		traffic_.arrivals(t, arrivals_);
		for (const auto& a : arrivals_) {
			Packet p{next_packet_id_++, a.src, a.dst, t, std::nullopt};
			metrics_.on_inject(t);
			if (nodes_[a.src].enqueue(p, cfg_.queue_capacity)) {
				emit(t, TraceEvent::Inject, a.src, a.dst, std::nullopt, p.id);
			} else {
				metrics_.on_drop(t);
				emit(t, TraceEvent::Drop, a.src, a.dst, std::nullopt, p.id);
			}
		}
	}

	void deliver(Cycle t, const Packet& p, ChannelId channel)
	{
		if (!p.delivered_at || *p.delivered_at != t || *p.delivered_at < p.created_at + min_latency_)
			throw IntegrityFault("packet " + std::to_string(p.id) + " delivered at inconsistent cycle " +
					     std::to_string(t));
		metrics_.on_deliver(p, t - min_latency_);
		emit(t, TraceEvent::Deliver, p.src, p.dst, channel, p.id);
	}

	// Transactions are appended in start order and share one duration per
	// protocol, so the ones ending now sit at the front.
	void complete(Cycle t)
	{
		while (!active_.empty() && active_.front().end == t) {
			Transaction tr = active_.front();
			active_.pop_front();
			NodeState& node = nodes_[tr.tx];
			switch (cfg_.protocol) {
			case Protocol::TrMac: {
				emit(t, trace_event(tr.outcome), tr.tx, tr.rx, tr.channel);
				auto delivered = apply_outcome(node, tr.outcome, cfg_);
				if (delivered) {
					delivered->delivered_at = t;
					deliver(t, *delivered, tr.channel);
				}
				--occupancy_.active[tr.channel];
				radio_.end_tx(tr.tx);
				if (tr.outcome == AckKind::AckOk) {
					radio_.end_rx(tr.rx, tr.channel);
					--data_in_flight_;
				}
				break;
			}
			case Protocol::Brs: {
				Packet p = node.queue.front();
				node.queue.pop_front();
				node.phase = Phase::Idle;
				node.collision_count = 0;
				p.delivered_at = t;
				deliver(t, p, tr.channel);
				--occupancy_.active[tr.channel];
				--data_in_flight_;
				break;
			}
			case Protocol::Token: {
				node.phase = Phase::Idle;
				deliver(t, *tr.packet, tr.channel);
				--occupancy_.active[tr.channel];
				--data_in_flight_;
				break;
			}
			}
		}
	}

	void step_trmac(Cycle t)
	{
		attempts_.clear();
		for (auto& node : nodes_) {
			auto attempt = node_boundary(node, occupancy_, cfg_, radio_.receiving_any(node.node));
			if (!attempt) continue;
			++occupancy_.active[attempt->channel];
			attempts_.push_back(*attempt);
		}
		if (attempts_.empty()) return;

		// Arbitrate against the radios of earlier transactions before
		// registering this cycle's.
		const EpochOutcome outcome = arbitrate_epoch(attempts_, cfg_, t, phy_rng_, &radio_);
		const Cycle end = t + cfg_.epoch_len();
		for (std::size_t i = 0; i < attempts_.size(); ++i) {
			const auto& a = attempts_[i];
			const AckKind kind = outcome.acks[i].kind;
			emit(t, TraceEvent::Start, a.tx, a.rx, a.channel, a.packet.id);
			metrics_.on_attempt(t, kind != AckKind::AckOk);
			radio_.begin_tx(a.tx);
			if (kind == AckKind::AckOk) {
				radio_.begin_rx(a.rx, a.channel);
				++data_in_flight_;
			}
			active_.push_back({end, a.tx, a.rx, a.channel, kind, std::nullopt});
		}
	}

	void step_brs(Cycle t)
	{
		contenders_.assign(cfg_.num_freq_channels, {});
		for (auto& node : nodes_) {
			if (!brs_ready(node)) continue;
			const ChannelId c = assigned_channel(node.node, cfg_.num_freq_channels);
			contenders_[c].push_back(node.node);
		}
		for (ChannelId c = 0; c < cfg_.num_freq_channels; ++c) {
			const auto& who = contenders_[c];
			const BrsSlot slot = brs_contend(who, brs_busy_until_[c] > t, cfg_);
			switch (slot.verdict) {
			case BrsVerdict::Idle: break;
			case BrsVerdict::Deferred:
				for (NodeId n : who) nodes_[n].phase = Phase::WaitChannel;
				break;
			case BrsVerdict::Success: {
				NodeState& node = nodes_[*slot.winner];
				const Packet& head = node.queue.front();
				node.phase = Phase::InEpoch;
				brs_busy_until_[c] = t + slot.busy_cycles;
				emit(t, TraceEvent::Start, node.node, head.dst, c, head.id);
				metrics_.on_attempt(t, false);
				++occupancy_.active[c];
				++data_in_flight_;
				active_.push_back({t + slot.busy_cycles, node.node, head.dst, c, AckKind::AckOk, std::nullopt});
				break;
			}
			case BrsVerdict::Collision:
				brs_busy_until_[c] = t + slot.busy_cycles;
				for (NodeId n : who) {
					NodeState& node = nodes_[n];
					const Packet& head = node.queue.front();
					emit(t, TraceEvent::Start, n, head.dst, c, head.id);
					emit(t, TraceEvent::Nack, n, std::nullopt, c, head.id);
					metrics_.on_attempt(t, true);
					brs_collided(node, cfg_);
				}
				break;
			}
		}
	}

	void step_token(Cycle t)
	{
		for (auto& ring : token_.rings) {
			if (ring.next_at != t) continue;
			const TokenStep step = token_advance(ring, nodes_, t, cfg_);
			if (step.sent) {
				emit(t, TraceEvent::Start, step.holder, step.sent->dst, ring.channel, step.sent->id);
				metrics_.on_attempt(t, false);
				++occupancy_.active[ring.channel];
				++data_in_flight_;
				active_.push_back({step.deliver_at, step.holder, step.sent->dst, ring.channel,
						   AckKind::AckOk, step.sent});
			}
			emit(t, TraceEvent::TokenPass, step.holder, step.next_holder, ring.channel);
		}
	}

	void sample(Cycle t)
	{
		for (ChannelId c = 0; c < cfg_.num_freq_channels; ++c) {
			const std::uint32_t load = occupancy_.active[c];
			const std::uint32_t cap = cfg_.protocol == Protocol::TrMac ? cfg_.npt : 1;
			if (load > cap)
				throw IntegrityFault("cycle " + std::to_string(t) + ", channel " + std::to_string(c) + ": " +
						     std::to_string(load) + " concurrent transmissions exceed cap " +
						     std::to_string(cap));
			metrics_.on_channel_load(load);
		}
		metrics_.on_cycle(t, data_in_flight_);
	}

	const SimConfig cfg_;
	TrafficGenerator traffic_;
	TraceSink* trace_;
	MetricsCollector metrics_;
	std::vector<NodeState> nodes_;
	ChannelOccupancy occupancy_;
	RadioState radio_;
	Rng phy_rng_;
	std::deque<Transaction> active_;
	std::vector<Cycle> brs_busy_until_;
	TokenState token_;
	std::vector<Arrival> arrivals_;
	std::vector<StartAttempt> attempts_;
	std::vector<std::vector<NodeId>> contenders_;
	std::uint64_t next_packet_id_ = 0;
	std::uint32_t data_in_flight_ = 0;
	Cycle min_latency_ = cfg_.protocol == Protocol::TrMac ? cfg_.epoch_len()
								: Cycle{cfg_.preamble_cycles} + cfg_.data_cycles;
};

}  // namespace

MetricsReport run(const SimConfig& cfg, TraceSink* trace)
{
	validate_config(cfg);
	if (!cfg.traffic.trace_file.empty())
		return run_with_arrivals(cfg, load_arrival_trace(cfg.traffic.trace_file, cfg.num_nodes, cfg.total_cycles()),
					 trace);
	Simulation sim(cfg, TrafficGenerator(cfg), trace);
	return sim.run();
}

MetricsReport run_with_arrivals(const SimConfig& cfg, std::vector<Arrival> arrivals, TraceSink* trace)
{
	validate_config(cfg);
	for (std::size_t i = 0; i < arrivals.size(); ++i) {
		const auto& a = arrivals[i];
		if (a.src >= cfg.num_nodes || a.dst >= cfg.num_nodes || a.src == a.dst)
			throw ConfigError("arrival " + std::to_string(i) + " has bad src/dst");
		if (a.cycle >= cfg.total_cycles()) throw ConfigError("arrival " + std::to_string(i) + " is past the horizon");
		if (i > 0 && a.cycle < arrivals[i - 1].cycle) throw ConfigError("arrivals must be sorted by cycle");
	}
	Simulation sim(cfg, TrafficGenerator(cfg, std::move(arrivals)), trace);
	return sim.run();
}

}  // namespace wnoc
