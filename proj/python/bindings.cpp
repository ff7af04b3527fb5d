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

#include <fstream>
#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wnoc/config_io.hpp"
#include "wnoc/engine.hpp"
#include "wnoc/metrics.hpp"
#include "wnoc/rng.hpp"
#include "wnoc/sweep.hpp"
#include "wnoc/traffic.hpp"

namespace py = pybind11;
using namespace wnoc;

namespace {

MetricsReport run_py(const SimConfig& cfg, const std::optional<std::string>& trace_path)
{
	if (!trace_path) {
		py::gil_scoped_release release;
		return run(cfg);
	}
	std::ofstream os(*trace_path, std::ios::binary);
	if (!os) throw std::runtime_error("cannot write " + *trace_path);
	CsvTraceWriter writer(os);
	py::gil_scoped_release release;
	return run(cfg, &writer);
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
	m.doc() = "Cycle-level wireless NoC MAC simulator";

	py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
	py::register_exception<IntegrityFault>(m, "IntegrityFault", PyExc_RuntimeError);

	py::enum_<Protocol>(m, "Protocol")
		.value("TRMAC", Protocol::TrMac)
		.value("BRS", Protocol::Brs)
		.value("TOKEN", Protocol::Token);
	py::enum_<HotspotAxis>(m, "HotspotAxis")
		.value("DESTINATIONS", HotspotAxis::Destinations)
		.value("SOURCES", HotspotAxis::Sources);

	py::class_<TrafficConfig>(m, "TrafficConfig")
		.def(py::init<>())
		.def_readwrite("injection_rate", &TrafficConfig::injection_rate)
		.def_readwrite("hurst", &TrafficConfig::hurst)
		.def_readwrite("sigma", &TrafficConfig::sigma)
		.def_readwrite("hotspot_axis", &TrafficConfig::hotspot_axis)
		.def_readwrite("trace_file", &TrafficConfig::trace_file);

	py::class_<SimConfig>(m, "SimConfig")
		.def(py::init<>())
		.def_readwrite("num_nodes", &SimConfig::num_nodes)
		.def_readwrite("num_freq_channels", &SimConfig::num_freq_channels)
		.def_readwrite("npt", &SimConfig::npt)
		.def_readwrite("preamble_cycles", &SimConfig::preamble_cycles)
		.def_readwrite("ack_cycles", &SimConfig::ack_cycles)
		.def_readwrite("data_cycles", &SimConfig::data_cycles)
		.def_readwrite("link_rate_gbps", &SimConfig::link_rate_gbps)
		.def_readwrite("backoff_max_exponent", &SimConfig::backoff_max_exponent)
		.def_readwrite("protocol", &SimConfig::protocol)
		.def_readwrite("traffic", &SimConfig::traffic)
		.def_readwrite("seed", &SimConfig::seed)
		.def_readwrite("warmup_cycles", &SimConfig::warmup_cycles)
		.def_readwrite("measure_cycles", &SimConfig::measure_cycles)
		.def_readwrite("queue_capacity", &SimConfig::queue_capacity)
		.def_readwrite("token_pass_cycles", &SimConfig::token_pass_cycles)
		.def_readwrite("orthogonal_rx", &SimConfig::orthogonal_rx)
		.def_readwrite("clock_ghz", &SimConfig::clock_ghz)
		.def_property_readonly("epoch_len", &SimConfig::epoch_len)
		.def("validate", [](const SimConfig& c) { validate_config(c); })
		.def("to_toml", [](const SimConfig& c) { return to_toml(c); });

	py::class_<MetricsReport>(m, "MetricsReport")
		.def_property_readonly("protocol", [](const MetricsReport& r) { return r.protocol; })
		.def_readonly("nodes", &MetricsReport::nodes)
		.def_readonly("channels", &MetricsReport::channels)
		.def_readonly("npt", &MetricsReport::npt)
		.def_readonly("seed", &MetricsReport::seed)
		.def_readonly("offered_load", &MetricsReport::offered_load)
		.def_readonly("delivered", &MetricsReport::delivered)
		.def_readonly("dropped", &MetricsReport::dropped)
		.def_readonly("mean_latency", &MetricsReport::mean_latency)
		.def_readonly("p99_latency", &MetricsReport::p99_latency)
		.def_readonly("throughput", &MetricsReport::throughput)
		.def_readonly("mean_concurrency", &MetricsReport::mean_concurrency)
		.def_readonly("collision_rate", &MetricsReport::collision_rate)
		.def_readonly("injected", &MetricsReport::injected)
		.def_readonly("total_injected", &MetricsReport::total_injected)
		.def_readonly("total_delivered", &MetricsReport::total_delivered)
		.def_readonly("total_dropped", &MetricsReport::total_dropped)
		.def_readonly("queued_at_end", &MetricsReport::queued_at_end)
		.def_readonly("peak_channel_concurrency", &MetricsReport::peak_channel_concurrency)
		.def("aggregate_gbps", [](const MetricsReport& r, double link) { return aggregate_gbps(r, link); },
		     py::arg("link_rate_gbps") = 30.0);

	py::class_<SweepRow>(m, "SweepRow")
		.def_readonly("rate", &SweepRow::rate)
		.def_readonly("repetition", &SweepRow::repetition)
		.def_readonly("report", &SweepRow::report);

	m.def("run", &run_py, py::arg("config"), py::arg("trace_path") = py::none(),
	      "Run one simulation; optionally write the event trace CSV.");
	m.def(
		"sweep",
		[](const SimConfig& cfg, const std::vector<double>& rates, std::uint32_t reps) {
			py::gil_scoped_release release;
			return sweep(cfg, rates, reps);
		},
		py::arg("config"), py::arg("rates"), py::arg("repetitions") = 1);
	m.def("saturation_point", [](const std::vector<SweepRow>& rows) { return saturation_point(rows); });
	m.def("load_config", &load_config, py::arg("path"));
	m.def("parse_config", [](const std::string& text) { return parse_config_toml(text); }, py::arg("text"));
	m.def("estimate_hurst", [](const std::vector<double>& series) { return estimate_hurst(series); },
	      py::arg("series"));
	m.def(
		"spatial_weights",
		[](std::uint32_t n, double sigma, std::uint64_t seed) {
			Rng rng = make_rng(seed, Stream::Hotspot);
			return spatial_weights(n, sigma, rng).w;
		},
		py::arg("num_nodes"), py::arg("sigma"), py::arg("seed") = 1);
}
