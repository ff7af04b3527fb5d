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

#include "wnoc/chart.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

namespace wnoc {
namespace {

struct Bucket {
	double tput_sum = 0.0;
	double lat_sum = 0.0;
	double lat_lo = 0.0, lat_hi = 0.0;
	int n = 0;

	void add(double tput, double lat)
	{
		lat_lo = n == 0 ? lat : std::min(lat_lo, lat);
		lat_hi = n == 0 ? lat : std::max(lat_hi, lat);
		tput_sum += tput;
		lat_sum += lat;
		++n;
	}
	ChartPoint point() const { return {tput_sum / n, lat_sum / n, lat_lo, lat_hi}; }
};

std::string escape(const std::string& s)
{
	std::string out;
	for (char c : s) {
		switch (c) {
		case '&': out += "&amp;"; break;
		case '<': out += "&lt;"; break;
		case '>': out += "&gt;"; break;
		case '"': out += "&quot;"; break;
		default: out += c;
		}
	}
	return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};

}  // namespace

std::vector<ChartSeries> latency_throughput_series(std::span<const ExperimentPoint> points, std::uint32_t nodes)
{
	std::vector<std::string> order;
	std::map<std::string, std::map<double, Bucket>> acc;
	for (const auto& p : points) {
		if (p.nodes != nodes) continue;
		if (!acc.contains(p.series)) order.push_back(p.series);
		auto& by_rate = acc[p.series];
		if (p.report && p.report->mean_latency) by_rate[p.rate].add(p.report->throughput, *p.report->mean_latency);
	}
	std::vector<ChartSeries> out;
	for (const auto& label : order) {
		ChartSeries s{label, {}};
		for (const auto& [rate, b] : acc[label]) s.points.push_back(b.point());
		out.push_back(std::move(s));
	}
	return out;
}

ChartSeries latency_throughput_series(std::span<const SweepRow> rows, std::string label)
{
	std::map<double, Bucket> by_rate;
	for (const auto& r : rows)
		if (r.report.mean_latency) by_rate[r.rate].add(r.report.throughput, *r.report.mean_latency);
	ChartSeries s{std::move(label), {}};
	for (const auto& [rate, b] : by_rate) s.points.push_back(b.point());
	return s;
}

std::string render_latency_throughput_svg(const std::string& title, std::span<const ChartSeries> series)
{
	constexpr double W = 720, H = 480, L = 80, R = 200, T = 50, B = 60;
	const double pw = W - L - R, ph = H - T - B;

	double xmax = 0.0, ymin = 1e300, ymax = 0.0;
	for (const auto& s : series)
		for (const auto& p : s.points) {
			xmax = std::max(xmax, p.x);
			ymin = std::min(ymin, p.y_lo);
			ymax = std::max(ymax, p.y_hi);
		}
	if (xmax <= 0.0) xmax = 1.0;
	if (ymax <= 0.0) ymin = 1.0, ymax = 10.0;
	ymin = std::max(ymin, 1e-3);
	const double lo = std::floor(std::log10(ymin)), hi = std::max(lo + 1, std::ceil(std::log10(ymax)));
	xmax *= 1.05;

	auto sx = [&](double x) { return L + x / xmax * pw; };
	auto sy = [&](double y) { return T + ph - (std::log10(std::max(y, 1e-3)) - lo) / (hi - lo) * ph; };

	std::string svg = fmt::format(
		"<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:g}\" height=\"{:g}\" viewBox=\"0 0 {:g} {:g}\" "
		"font-family=\"sans-serif\" font-size=\"12\">\n"
		"<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
		"<text x=\"{:g}\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
		W, H, W, H, L + pw / 2, escape(title));

	// axes and grid
	svg += fmt::format("<rect x=\"{:g}\" y=\"{:g}\" width=\"{:g}\" height=\"{:g}\" fill=\"none\" stroke=\"black\"/>\n",
			   L, T, pw, ph);
	for (double e = lo; e <= hi; e += 1.0) {
		const double y = sy(std::pow(10.0, e));
		svg += fmt::format("<line x1=\"{:g}\" y1=\"{:.2f}\" x2=\"{:g}\" y2=\"{:.2f}\" stroke=\"#ddd\"/>\n"
				   "<text x=\"{:g}\" y=\"{:.2f}\" text-anchor=\"end\">{:g}</text>\n",
				   L, y, L + pw, y, L - 6, y + 4, std::pow(10.0, e));
	}
	for (int i = 0; i <= 5; ++i) {
		const double v = xmax * i / 5, x = sx(v);
		svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{:g}\" x2=\"{:.2f}\" y2=\"{:g}\" stroke=\"#ddd\"/>\n"
				   "<text x=\"{:.2f}\" y=\"{:g}\" text-anchor=\"middle\">{:.3g}</text>\n",
				   x, T, x, T + ph, x, T + ph + 18, v);
	}
	svg += fmt::format("<text x=\"{:g}\" y=\"{:g}\" text-anchor=\"middle\">throughput (packets/cycle)</text>\n",
			   L + pw / 2, H - 15);
	svg += fmt::format("<text transform=\"translate(20 {:g}) rotate(-90)\" text-anchor=\"middle\">"
			   "mean latency (cycles)</text>\n",
			   T + ph / 2);

	for (std::size_t k = 0; k < series.size(); ++k) {
		const auto& s = series[k];
		const char* color = kPalette[k % std::size(kPalette)];
		std::string path;
		for (const auto& p : s.points) path += fmt::format("{}{:.2f},{:.2f}", path.empty() ? "" : " ", sx(p.x), sy(p.y));
		if (!path.empty())
			svg += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", path,
					   color);
		for (const auto& p : s.points) {
			const double x = sx(p.x);
			svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"{3}\"/>\n"
					   "<circle cx=\"{0:.2f}\" cy=\"{4:.2f}\" r=\"3\" fill=\"{3}\"/>\n",
					   x, sy(p.y_lo), sy(p.y_hi), color, sy(p.y));
		}
		const double ly = T + 10 + 20.0 * static_cast<double>(k);
		svg += fmt::format("<rect x=\"{:g}\" y=\"{:g}\" width=\"14\" height=\"4\" fill=\"{}\"/>\n"
				   "<text x=\"{:g}\" y=\"{:g}\">{}</text>\n",
				   L + pw + 15, ly, color, L + pw + 35, ly + 5, escape(s.label));
	}
	svg += "</svg>\n";
	return svg;
}

}  // namespace wnoc
