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

// wnoc-sim: command-line front end for single runs, sweeps, comparisons
// and event traces.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "wnoc/chart.hpp"
#include "wnoc/config_io.hpp"
#include "wnoc/engine.hpp"
#include "wnoc/metrics.hpp"
#include "wnoc/sweep.hpp"

namespace {

using namespace wnoc;

struct Overrides {
	std::optional<std::uint32_t> npt, nodes, channels;
	std::optional<std::string> protocol;
	std::optional<double> rate;
	std::optional<std::uint64_t> seed;
	std::optional<std::uint64_t> measure, warmup;

	void attach(CLI::App* app)
	{
		app->add_option("--npt", npt, "Parallel transmissions per channel");
		app->add_option("--protocol", protocol, "TRMAC, BRS or TOKEN");
		app->add_option("--rate", rate, "Injection rate (packets/node/cycle)");
		app->add_option("--seed", seed, "Base random seed");
		app->add_option("--nodes", nodes, "Number of nodes");
		app->add_option("--channels", channels, "Number of frequency channels");
		app->add_option("--measure", measure, "Measurement window (cycles)");
		app->add_option("--warmup", warmup, "Warmup (cycles)");
	}

	SimConfig apply(SimConfig c) const
	{
		if (npt) c.npt = *npt;
		if (protocol) c.protocol = parse_protocol(*protocol);
		if (rate) c.traffic.injection_rate = *rate;
		if (seed) c.seed = *seed;
		if (nodes) c.num_nodes = *nodes;
		if (channels) c.num_freq_channels = *channels;
		if (measure) c.measure_cycles = *measure;
		if (warmup) c.warmup_cycles = *warmup;
		validate_config(c);
		return c;
	}
};

std::ofstream open_out(const std::string& path)
{
	const auto parent = std::filesystem::path(path).parent_path();
	if (!parent.empty()) std::filesystem::create_directories(parent);
	std::ofstream os(path, std::ios::binary);
	if (!os) throw std::runtime_error("cannot write " + path);
	return os;
}

std::string fmt_opt(const std::optional<double>& v)
{
	return v ? fmt::format("{:.4f}", *v) : std::string("n/a");
}

void print_summary(const MetricsReport& r, const SimConfig& cfg)
{
	fmt::print("protocol          {}\n", to_string(r.protocol));
	fmt::print("nodes/channels    {} / {} (npt {})\n", r.nodes, r.channels, r.npt);
	fmt::print("offered load      {:.6g} packets/node/cycle\n", r.offered_load);
	fmt::print("throughput        {:.6f} packets/cycle\n", r.throughput);
	fmt::print("aggregate rate    {:.3f} Gbps\n", aggregate_gbps(r, cfg));
	fmt::print("mean latency      {} cycles\n", fmt_opt(r.mean_latency));
	fmt::print("p99 latency       {} cycles\n", fmt_opt(r.p99_latency));
	if (r.mean_latency && cfg.clock_ghz > 0.0)
		fmt::print("mean latency      {:.4f} ns\n", *cycles_to_ns(*r.mean_latency, cfg));
	fmt::print("collision rate    {:.6f}\n", r.collision_rate);
	fmt::print("delivered/dropped {} / {}\n", r.delivered, r.dropped);
}

std::vector<double> parse_rates(const std::string& s)
{
	std::vector<double> out;
	std::size_t pos = 0;
	while (pos <= s.size()) {
		const std::size_t comma = std::min(s.find(',', pos), s.size());
		const std::string tok = s.substr(pos, comma - pos);
		std::size_t used = 0;
		double v = 0.0;
		try {
			v = std::stod(tok, &used);
		} catch (const std::exception&) {
			used = 0;
		}
		if (tok.empty() || used != tok.size()) throw ConfigError("bad rate '" + tok + "' in --rates");
		out.push_back(v);
		pos = comma + 1;
	}
	return out;
}

}  // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Cycle-level wireless NoC MAC simulator (TR-MAC, BRS, token passing)"};
	app.require_subcommand(1);

	std::string config_path, out_path, trace_path, svg_path, rates_arg, out_dir;
	std::uint32_t reps = 1;
	Overrides ov;

	auto* run_cmd = app.add_subcommand("run", "Run one configuration and write a results CSV");
	run_cmd->add_option("config", config_path, "TOML run config")->required();
	run_cmd->add_option("-o,--out", out_path, "Results CSV path")->default_val("results.csv");
	run_cmd->add_option("--trace", trace_path, "Also write the event trace CSV here");
	ov.attach(run_cmd);

	auto* sweep_cmd = app.add_subcommand("sweep", "Sweep the injection rate");
	sweep_cmd->add_option("config", config_path, "TOML run config")->required();
	sweep_cmd->add_option("--rates", rates_arg, "Comma-separated ascending rates")->required();
	sweep_cmd->add_option("--reps", reps, "Repetitions per rate")->default_val(1)->check(CLI::PositiveNumber);
	sweep_cmd->add_option("-o,--out", out_path, "Results CSV path")->default_val("sweep.csv");
	sweep_cmd->add_option("--svg", svg_path, "Latency/throughput chart path");
	ov.attach(sweep_cmd);

	auto* cmp_cmd = app.add_subcommand("compare", "Run a multi-protocol experiment");
	cmp_cmd->add_option("experiment", config_path, "TOML experiment file")->required();
	cmp_cmd->add_option("--out-dir", out_dir, "Override the experiment output directory");

	auto* trace_cmd = app.add_subcommand("trace", "Run one configuration and write its event trace");
	trace_cmd->add_option("config", config_path, "TOML run config")->required();
	trace_cmd->add_option("-o,--out", out_path, "Trace CSV path")->default_val("trace.csv");
	ov.attach(trace_cmd);

	CLI11_PARSE(app, argc, argv);

	try {
		if (*run_cmd) {
			const SimConfig cfg = ov.apply(load_config(config_path));
			std::optional<std::ofstream> trace_os;
			std::optional<CsvTraceWriter> writer;
			if (!trace_path.empty()) {
				trace_os = open_out(trace_path);
				writer.emplace(*trace_os);
			}
			const MetricsReport r = run(cfg, writer ? &*writer : nullptr);
			auto os = open_out(out_path);
			write_results_header(os);
			write_results_row(os, r, cfg.link_rate_gbps);
			print_summary(r, cfg);
		} else if (*sweep_cmd) {
			const SimConfig cfg = ov.apply(load_config(config_path));
			const auto rates = parse_rates(rates_arg);
			const auto rows = sweep(cfg, rates, reps);
			auto os = open_out(out_path);
			write_results_header(os);
			for (const auto& row : rows) write_results_row(os, row.report, cfg.link_rate_gbps);
			if (rows.size() >= 3) fmt::print("saturation throughput {:.6f} packets/cycle\n", saturation_point(rows));
			if (!svg_path.empty()) {
				const std::vector series{latency_throughput_series(rows, std::string(to_string(cfg.protocol)))};
				open_out(svg_path) << render_latency_throughput_svg(
					fmt::format("{} nodes, {} channel(s), npt {}", cfg.num_nodes, cfg.num_freq_channels, cfg.npt),
					series);
			}
			fmt::print("wrote {} rows to {}\n", rows.size(), out_path);
		} else if (*cmp_cmd) {
			ExperimentSpec spec = load_experiment(config_path);
			if (!out_dir.empty()) spec.output_dir = out_dir;
			const auto points = run_experiment(spec);
			const std::string csv = (std::filesystem::path(spec.output_dir) / (spec.name + ".csv")).string();
			{
				auto os = open_out(csv);
				write_experiment_csv(os, points);
			}
			std::set<std::uint32_t> node_counts;
			for (const auto& p : points) node_counts.insert(p.nodes);
			for (std::uint32_t n : node_counts) {
				const auto svg = (std::filesystem::path(spec.output_dir) /
						  fmt::format("{}_{}nodes.svg", spec.name, n)).string();
				const auto series = latency_throughput_series(points, n);
				open_out(svg) << render_latency_throughput_svg(fmt::format("{}: {} nodes", spec.name, n), series);
				fmt::print("wrote {}\n", svg);
			}
			fmt::print("wrote {}\n", csv);
			int failed = 0;
			for (const auto& p : points) {
				if (p.error.empty()) continue;
				++failed;
				fmt::print(stderr, "point failed: series={} nodes={} rate={:.6g} rep={}: {}\n", p.series, p.nodes,
					   p.rate, p.repetition, p.error);
			}
			if (failed) {
				fmt::print(stderr, "{} of {} points failed\n", failed, points.size());
				return 1;
			}
		} else if (*trace_cmd) {
			const SimConfig cfg = ov.apply(load_config(config_path));
			auto os = open_out(out_path);
			CsvTraceWriter writer(os);
			const MetricsReport r = run(cfg, &writer);
			fmt::print("wrote trace to {} ({} deliveries)\n", out_path, r.total_delivered);
		}
	} catch (const std::exception& e) {
		fmt::print(stderr, "error: {}\n", e.what());
		return 1;
	}
	return 0;
}
