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

#include "wnoc/config_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "toml.hpp"

namespace wnoc {
namespace {

[[noreturn]] void fail(std::string_view source, const std::string& msg)
{
	throw ConfigError(fmt::format("{}: {}", source, msg));
}

void reject_unknown(const toml::table& t, std::initializer_list<std::string_view> known, std::string_view where,
		    std::string_view source)
{
	for (const auto& [key, _] : t) {
		if (std::find(known.begin(), known.end(), key.str()) == known.end())
			fail(source, fmt::format("unknown key '{}{}'", where, key.str()));
	}
}

template <typename T>
void read_uint(const toml::table& t, std::string_view key, T& out, std::string_view source)
{
	const toml::node* n = t.get(key);
	if (!n) return;
	const auto v = n->value_exact<std::int64_t>();
	if (!v) fail(source, fmt::format("'{}' must be an integer", key));
	if (*v < 0 || static_cast<std::uint64_t>(*v) > std::numeric_limits<T>::max())
		fail(source, fmt::format("'{}' out of range ({})", key, *v));
	out = static_cast<T>(*v);
}

void read_double(const toml::table& t, std::string_view key, double& out, std::string_view source)
{
	const toml::node* n = t.get(key);
	if (!n) return;
	// Integers are accepted for real-valued keys ("rate = 1" is fine).
	const auto v = n->value<double>();
	if (!v || !(n->is_floating_point() || n->is_integer())) fail(source, fmt::format("'{}' must be a number", key));
	out = *v;
}

void read_bool(const toml::table& t, std::string_view key, bool& out, std::string_view source)
{
	const toml::node* n = t.get(key);
	if (!n) return;
	const auto v = n->value_exact<bool>();
	if (!v) fail(source, fmt::format("'{}' must be a boolean", key));
	out = *v;
}

std::optional<std::string> read_string(const toml::table& t, std::string_view key, std::string_view source)
{
	const toml::node* n = t.get(key);
	if (!n) return std::nullopt;
	const auto v = n->value_exact<std::string>();
	if (!v) fail(source, fmt::format("'{}' must be a string", key));
	return v;
}

SimConfig config_from_table(const toml::table& t, std::string_view source)
{
	reject_unknown(t,
		       {"num_nodes", "num_freq_channels", "npt", "preamble_cycles", "ack_cycles", "data_cycles",
			"link_rate_gbps", "backoff_max_exponent", "protocol", "traffic", "seed", "warmup_cycles",
			"measure_cycles", "queue_capacity", "token_pass_cycles", "orthogonal_rx", "clock_ghz"},
		       "", source);

	SimConfig c;
	read_uint(t, "num_nodes", c.num_nodes, source);
	read_uint(t, "num_freq_channels", c.num_freq_channels, source);
	read_uint(t, "npt", c.npt, source);
	read_uint(t, "preamble_cycles", c.preamble_cycles, source);
	read_uint(t, "ack_cycles", c.ack_cycles, source);
	read_uint(t, "data_cycles", c.data_cycles, source);
	read_double(t, "link_rate_gbps", c.link_rate_gbps, source);
	read_uint(t, "backoff_max_exponent", c.backoff_max_exponent, source);
	if (auto p = read_string(t, "protocol", source)) c.protocol = parse_protocol(*p);
	read_uint(t, "seed", c.seed, source);
	read_uint(t, "measure_cycles", c.measure_cycles, source);
	c.warmup_cycles = c.measure_cycles / 5;
	read_uint(t, "warmup_cycles", c.warmup_cycles, source);
	read_uint(t, "queue_capacity", c.queue_capacity, source);
	read_uint(t, "token_pass_cycles", c.token_pass_cycles, source);
	read_bool(t, "orthogonal_rx", c.orthogonal_rx, source);
	read_double(t, "clock_ghz", c.clock_ghz, source);

	if (const toml::node* n = t.get("traffic")) {
		const toml::table* tt = n->as_table();
		if (!tt) fail(source, "'traffic' must be a table");
		reject_unknown(*tt, {"injection_rate", "hurst", "sigma", "hotspot_axis", "trace_file"}, "traffic.",
			       source);
		read_double(*tt, "injection_rate", c.traffic.injection_rate, source);
		read_double(*tt, "hurst", c.traffic.hurst, source);
		read_double(*tt, "sigma", c.traffic.sigma, source);
		if (auto a = read_string(*tt, "hotspot_axis", source)) c.traffic.hotspot_axis = parse_hotspot_axis(*a);
		if (auto f = read_string(*tt, "trace_file", source)) c.traffic.trace_file = *f;
	}
	return c;
}

toml::table parse_toml(std::string_view text, std::string_view source)
{
	try {
		return toml::parse(text, source);
	} catch (const toml::parse_error& e) {
		std::ostringstream os;
		os << e.description() << " (line " << e.source().begin.line << ")";
		fail(source, os.str());
	}
}

std::string read_file(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in) throw ConfigError("config not found: " + path);
	std::ostringstream os;
	os << in.rdbuf();
	return os.str();
}

// Relative trace paths resolve against the directory of the config file.
void anchor_trace_path(SimConfig& c, const std::string& config_path)
{
	if (c.traffic.trace_file.empty()) return;
	std::filesystem::path p(c.traffic.trace_file);
	if (p.is_relative()) c.traffic.trace_file = (std::filesystem::path(config_path).parent_path() / p).string();
}

}  // namespace

SimConfig parse_config_toml(std::string_view text, std::string_view source)
{
	SimConfig c = config_from_table(parse_toml(text, source), source);
	validate_config(c);
	return c;
}

SimConfig load_config(const std::string& path)
{
	SimConfig c = config_from_table(parse_toml(read_file(path), path), path);
	anchor_trace_path(c, path);
	validate_config(c);
	return c;
}

std::string to_toml(const SimConfig& c)
{
	toml::table traffic{
		{"injection_rate", c.traffic.injection_rate},
		{"hurst", c.traffic.hurst},
		{"sigma", c.traffic.sigma},
		{"hotspot_axis", std::string(to_string(c.traffic.hotspot_axis))},
	};
	if (!c.traffic.trace_file.empty()) traffic.insert("trace_file", c.traffic.trace_file);

	const auto i64 = [](std::uint64_t v) { return static_cast<std::int64_t>(v); };
	toml::table t{
		{"num_nodes", i64(c.num_nodes)},
		{"num_freq_channels", i64(c.num_freq_channels)},
		{"npt", i64(c.npt)},
		{"preamble_cycles", i64(c.preamble_cycles)},
		{"ack_cycles", i64(c.ack_cycles)},
		{"data_cycles", i64(c.data_cycles)},
		{"link_rate_gbps", c.link_rate_gbps},
		{"backoff_max_exponent", i64(c.backoff_max_exponent)},
		{"protocol", std::string(to_string(c.protocol))},
		{"seed", i64(c.seed)},
		{"warmup_cycles", i64(c.warmup_cycles)},
		{"measure_cycles", i64(c.measure_cycles)},
		{"queue_capacity", i64(c.queue_capacity)},
		{"token_pass_cycles", i64(c.token_pass_cycles)},
		{"orthogonal_rx", c.orthogonal_rx},
		{"clock_ghz", c.clock_ghz},
		{"traffic", std::move(traffic)},
	};
	std::ostringstream os;
	os << t << '\n';
	return os.str();
}

namespace {

ExperimentSpec experiment_from_table(const toml::table& root, std::string_view source)
{
	reject_unknown(root, {"experiment", "base"}, "", source);
	const toml::table* ex = root["experiment"].as_table();
	if (!ex) fail(source, "missing [experiment] table");
	reject_unknown(*ex, {"name", "rates", "repetitions", "output_dir", "nodes", "protocols", "series"},
		       "experiment.", source);

	ExperimentSpec spec;
	if (const toml::table* base = root["base"].as_table()) spec.base = config_from_table(*base, source);
	if (auto s = read_string(*ex, "name", source)) spec.name = *s;
	if (auto s = read_string(*ex, "output_dir", source)) spec.output_dir = *s;
	read_uint(*ex, "repetitions", spec.repetitions, source);
	if (spec.repetitions == 0) fail(source, "'repetitions' must be at least 1");

	const toml::array* rates = (*ex)["rates"].as_array();
	if (!rates || rates->empty()) fail(source, "'experiment.rates' must be a non-empty array");
	for (const auto& r : *rates) {
		const auto v = r.value<double>();
		if (!v || !(r.is_floating_point() || r.is_integer()) || *v < 0.0)
			fail(source, "'experiment.rates' entries must be non-negative numbers");
		spec.sweep_rates.push_back(*v);
	}
	if (!std::is_sorted(spec.sweep_rates.begin(), spec.sweep_rates.end()))
		fail(source, "'experiment.rates' must be ascending");

	if (const toml::node* n = ex->get("nodes")) {
		const toml::array* a = n->as_array();
		if (!a) fail(source, "'experiment.nodes' must be an array");
		for (const auto& e : *a) {
			const auto v = e.value_exact<std::int64_t>();
			if (!v || *v < 2) fail(source, "'experiment.nodes' entries must be integers ≥ 2");
			spec.node_counts.push_back(static_cast<std::uint32_t>(*v));
		}
	}

	if (const toml::node* n = ex->get("protocols")) {
		const toml::array* a = n->as_array();
		if (!a) fail(source, "'experiment.protocols' must be an array");
		for (const auto& e : *a) {
			const auto v = e.value_exact<std::string>();
			if (!v) fail(source, "'experiment.protocols' entries must be strings");
			spec.series.push_back({*v, parse_protocol(*v), std::nullopt, std::nullopt});
		}
	}

	if (const toml::node* n = ex->get("series")) {
		const toml::array* a = n->as_array();
		if (!a) fail(source, "'experiment.series' must be an array of tables");
		for (const auto& e : *a) {
			const toml::table* st = e.as_table();
			if (!st) fail(source, "'experiment.series' must be an array of tables");
			reject_unknown(*st, {"label", "protocol", "num_freq_channels", "npt"}, "experiment.series.",
				       source);
			SeriesSpec s;
			const auto proto = read_string(*st, "protocol", source);
			if (!proto) fail(source, "every series needs a 'protocol'");
			s.protocol = parse_protocol(*proto);
			s.label = read_string(*st, "label", source).value_or(*proto);
			if (st->contains("num_freq_channels")) {
				std::uint32_t v = 0;
				read_uint(*st, "num_freq_channels", v, source);
				s.num_freq_channels = v;
			}
			if (st->contains("npt")) {
				std::uint32_t v = 0;
				read_uint(*st, "npt", v, source);
				s.npt = v;
			}
			spec.series.push_back(std::move(s));
		}
	}
	if (spec.series.empty()) fail(source, "experiment needs 'protocols' or at least one [[experiment.series]]");

	std::set<std::string> labels;
	for (const auto& s : spec.series)
		if (!labels.insert(s.label).second) fail(source, fmt::format("duplicate series label '{}'", s.label));

	for (const auto& s : spec.series)
		for (std::uint32_t nodes : spec.node_counts.empty() ? std::vector{spec.base.num_nodes} : spec.node_counts)
			validate_config(series_config(spec, s, nodes));
	return spec;
}

}  // namespace

ExperimentSpec parse_experiment_toml(std::string_view text, std::string_view source)
{
	return experiment_from_table(parse_toml(text, source), source);
}

ExperimentSpec load_experiment(const std::string& path)
{
	ExperimentSpec spec = experiment_from_table(parse_toml(read_file(path), path), path);
	anchor_trace_path(spec.base, path);
	return spec;
}

SimConfig series_config(const ExperimentSpec& spec, const SeriesSpec& series, std::uint32_t nodes)
{
	SimConfig c = spec.base;
	c.protocol = series.protocol;
	c.num_nodes = nodes;
	if (series.num_freq_channels) c.num_freq_channels = *series.num_freq_channels;
	if (series.npt) c.npt = *series.npt;
	return c;
}

}  // namespace wnoc
