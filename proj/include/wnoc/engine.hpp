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
 * @file engine.hpp
 * @brief Cycle-driven simulation kernel.
 *
 * Each cycle, in order:
 *  1. traffic arrivals are queued (dropped when the queue is full);
 *  2. transactions whose epoch ends this cycle resolve (delivery or backoff);
 *  3. nodes are stepped in ascending id and start new transactions subject
 *     to the per-channel caps; the phy arbitrates everything that started;
 *  4. statistics are sampled.
 *
 * Every random draw comes from a stream derived from cfg.seed, so a run is
 * a pure function of its configuration.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "wnoc/core.hpp"
#include "wnoc/metrics.hpp"
#include "wnoc/traffic.hpp"

namespace wnoc {

enum class TraceEvent { Inject, Drop, Start, AckOk, NoAck, ErrAck, Deliver, TokenPass, Nack };

std::string_view to_string(TraceEvent e);

inline constexpr const char* kTraceCsvHeader = "cycle,event,node,peer,channel,packet_id";

/// Receives per-event records; optional fields are empty in the CSV.
class TraceSink {
public:
	virtual ~TraceSink() = default;
	virtual void record(Cycle cycle, TraceEvent event, NodeId node, std::optional<NodeId> peer,
			    std::optional<ChannelId> channel, std::optional<std::uint64_t> packet_id) = 0;
};

class CsvTraceWriter : public TraceSink {
public:
	explicit CsvTraceWriter(std::ostream& os);
	void record(Cycle cycle, TraceEvent event, NodeId node, std::optional<NodeId> peer,
		    std::optional<ChannelId> channel, std::optional<std::uint64_t> packet_id) override;

private:
	std::ostream& os_;
};

/// Runs one simulation. Arrivals come from cfg.traffic.trace_file when set.
MetricsReport run(const SimConfig& cfg, TraceSink* trace = nullptr);

/// Runs with an explicit arrival list instead of the configured traffic.
MetricsReport run_with_arrivals(const SimConfig& cfg, std::vector<Arrival> arrivals, TraceSink* trace = nullptr);

}  // namespace wnoc
