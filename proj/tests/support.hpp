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

// Shared helpers for the unit and acceptance tests.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wnoc/engine.hpp"

namespace wnoc::testing {

struct Event {
	Cycle cycle;
	TraceEvent event;
	NodeId node;
	std::optional<NodeId> peer;
	std::optional<ChannelId> channel;
	std::optional<std::uint64_t> packet;
};

class VectorTrace : public TraceSink {
public:
	std::vector<Event> events;

	void record(Cycle cycle, TraceEvent event, NodeId node, std::optional<NodeId> peer,
		    std::optional<ChannelId> channel, std::optional<std::uint64_t> packet_id) override
	{
		events.push_back({cycle, event, node, peer, channel, packet_id});
	}

	std::vector<Event> of(TraceEvent e) const
	{
		std::vector<Event> out;
		for (const auto& ev : events)
			if (ev.event == e) out.push_back(ev);
		return out;
	}
};

/// Peak number of transactions holding any one channel, rebuilt from a trace.
/// TR-MAC holds a channel for a whole epoch from every START; the baselines
/// hold it for preamble + data cycles ending at each DELIVER.
inline std::uint32_t peak_channel_load(const std::vector<Event>& events, const SimConfig& cfg)
{
	std::vector<std::vector<int>> delta(cfg.num_freq_channels, std::vector<int>(cfg.total_cycles() + 16, 0));
	const Cycle hold = cfg.preamble_cycles + cfg.data_cycles;
	for (const auto& e : events) {
		if (cfg.protocol == Protocol::TrMac && e.event == TraceEvent::Start) {
			delta[*e.channel][e.cycle] += 1;
			delta[*e.channel][e.cycle + cfg.epoch_len()] -= 1;
		} else if (cfg.protocol != Protocol::TrMac && e.event == TraceEvent::Deliver) {
			delta[*e.channel][e.cycle - hold] += 1;
			delta[*e.channel][e.cycle] -= 1;
		}
	}
	int peak = 0;
	for (const auto& d : delta) {
		int load = 0;
		for (int v : d) peak = std::max(peak, load += v);
	}
	return static_cast<std::uint32_t>(peak);
}

inline bool conserved(const MetricsReport& r)
{
	return r.total_injected == r.total_delivered + r.queued_at_end + r.total_dropped;
}

inline std::string trace_csv(const SimConfig& cfg)
{
	std::ostringstream os;
	CsvTraceWriter w(os);
	run(cfg, &w);
	return os.str();
}

}  // namespace wnoc::testing
