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

#include "wnoc/core.hpp"

#include <cmath>

namespace wnoc {

std::string_view to_string(Protocol p)
{
	switch (p) {
	case Protocol::TrMac: return "TRMAC";
	case Protocol::Brs: return "BRS";
	case Protocol::Token: return "TOKEN";
	}
	return "?";
}

std::string_view to_string(HotspotAxis a)
{
	return a == HotspotAxis::Destinations ? "DESTINATIONS" : "SOURCES";
}

Protocol parse_protocol(std::string_view s)
{
	if (s == "TRMAC" || s == "TR-MAC") return Protocol::TrMac;
	if (s == "BRS") return Protocol::Brs;
	if (s == "TOKEN") return Protocol::Token;
	throw ConfigError("protocol must be one of TRMAC, BRS, TOKEN (got '" + std::string(s) + "')");
}

HotspotAxis parse_hotspot_axis(std::string_view s)
{
	if (s == "DESTINATIONS") return HotspotAxis::Destinations;
	if (s == "SOURCES") return HotspotAxis::Sources;
	throw ConfigError("hotspot_axis must be DESTINATIONS or SOURCES (got '" + std::string(s) + "')");
}

const SimConfig& validate_config(const SimConfig& cfg)
{
	auto require = [](bool ok, const char* what) {
		if (!ok) throw ConfigError(std::string("invalid config: ") + what);
	};
	require(cfg.num_nodes >= 2, "num_nodes ≥ 2");
	require(cfg.num_freq_channels >= 1, "num_freq_channels ≥ 1");
	require(cfg.npt >= 1, "npt ≥ 1");
	require(cfg.preamble_cycles >= 1, "preamble_cycles ≥ 1");
	require(cfg.data_cycles >= 1, "data_cycles ≥ 1");
	require(std::isfinite(cfg.link_rate_gbps) && cfg.link_rate_gbps >= 0.0, "link_rate_gbps ≥ 0");
	require(cfg.backoff_max_exponent <= 62, "backoff_max_exponent ≤ 62");
	require(cfg.measure_cycles >= 1, "measure_cycles ≥ 1");
	require(cfg.queue_capacity >= 1, "queue_capacity ≥ 1");
	require(cfg.token_pass_cycles >= 1, "token_pass_cycles ≥ 1");
	require(std::isfinite(cfg.clock_ghz) && cfg.clock_ghz >= 0.0, "clock_ghz ≥ 0");

	const auto& t = cfg.traffic;
	require(std::isfinite(t.injection_rate) && t.injection_rate >= 0.0, "injection_rate ≥ 0");
	require(t.hurst >= 0.5, "hurst ≥ 0.5");
	require(t.hurst <= 1.0, "hurst ≤ 1.0");
	require(std::isfinite(t.sigma) && t.sigma >= 0.0, "sigma ≥ 0");
	return cfg;
}

}  // namespace wnoc
