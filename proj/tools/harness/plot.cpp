#include "harness/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "harness/sweep.hpp"

namespace slsched::harness {

namespace {

constexpr double kWidth = 720, kHeight = 420;
constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2"};

std::string num(double v) {
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.1f", v);
	return buf;
}

std::string color(std::size_t k) {
	return kPalette[k % std::size(kPalette)];
}

std::string escape(const std::string& s) {
	std::string out;
	for (char c : s) {
		switch (c) {
		case '<': out += "&lt;"; break;
		case '>': out += "&gt;"; break;
		case '&': out += "&amp;"; break;
		default: out += c;
		}
	}
	return out;
}

double nice_step(double span) {
	if (span <= 0)
		return 1.0;
	const double raw = span / 5.0;
	const double mag = std::pow(10.0, std::floor(std::log10(raw)));
	for (double m : {1.0, 2.0, 5.0, 10.0})
		if (raw <= m * mag)
			return m * mag;
	return 10.0 * mag;
}

struct Axis {
	double lo = 0, hi = 1;

	double y(double v) const { return kTop + (hi - v) / (hi - lo) * (kHeight - kTop - kBottom); }
};

Axis make_axis(double lo, double hi) {
	lo = std::min(lo, 0.0);
	hi = std::max(hi, 0.0);
	if (hi - lo <= 0)
		hi = lo + 1;
	const double step = nice_step(hi - lo);
	return {std::floor(lo / step) * step, std::ceil(hi / step) * step};
}

class Svg {
public:
	Svg(const std::string& title, const std::string& ylabel) {
		os_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
		    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
		    << "\" viewBox=\"0 0 " << num(kWidth) << " " << num(kHeight) << "\" font-family=\"sans-serif\">\n"
		    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
		    << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
		    << escape(title) << "</text>\n"
		    << "<text transform=\"translate(16," << num((kHeight - kBottom + kTop) / 2)
		    << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" << escape(ylabel) << "</text>\n";
	}

	void axes(const Axis& a) {
		const double step = nice_step(a.hi - a.lo);
		const double x0 = kLeft, x1 = kWidth - kRight;
		for (double v = a.lo; v <= a.hi + step / 2; v += step) {
			os_ << "<line x1=\"" << num(x0) << "\" y1=\"" << num(a.y(v)) << "\" x2=\"" << num(x1) << "\" y2=\""
			    << num(a.y(v)) << "\" stroke=\"#dddddd\"/>\n"
			    << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(a.y(v) + 4)
			    << "\" text-anchor=\"end\" font-size=\"11\">" << num(v) << "</text>\n";
		}
		os_ << "<line x1=\"" << num(x0) << "\" y1=\"" << num(a.y(a.lo)) << "\" x2=\"" << num(x0) << "\" y2=\""
		    << num(a.y(a.hi)) << "\" stroke=\"black\"/>\n"
		    << "<line x1=\"" << num(x0) << "\" y1=\"" << num(a.y(0)) << "\" x2=\"" << num(x1) << "\" y2=\""
		    << num(a.y(0)) << "\" stroke=\"black\"/>\n";
	}

	void xlabel(double x, const std::string& text) {
		os_ << "<text x=\"" << num(x) << "\" y=\"" << num(kHeight - kBottom + 18)
		    << "\" text-anchor=\"middle\" font-size=\"11\">" << escape(text) << "</text>\n";
	}

	void xtitle(const std::string& text) {
		os_ << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << num(kHeight - 16)
		    << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(text) << "</text>\n";
	}

	void bar(double x, double w, double y0, double y1, const std::string& fill) {
		os_ << "<rect class=\"bar\" x=\"" << num(x) << "\" y=\"" << num(std::min(y0, y1)) << "\" width=\"" << num(w)
		    << "\" height=\"" << num(std::abs(y1 - y0)) << "\" fill=\"" << fill << "\"/>\n";
	}

	void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke) {
		os_ << "<polyline class=\"series\" fill=\"none\" stroke-width=\"2\" stroke=\"" << stroke << "\" points=\"";
		for (std::size_t k = 0; k < pts.size(); ++k)
			os_ << (k ? " " : "") << num(pts[k].first) << "," << num(pts[k].second);
		os_ << "\"/>\n";
		for (const auto& [x, y] : pts)
			os_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\" fill=\"" << stroke << "\"/>\n";
	}

	void legend(const std::vector<std::string>& names) {
		const double x = kWidth - kRight + 16;
		for (std::size_t k = 0; k < names.size(); ++k) {
			const double y = kTop + 10 + 20.0 * static_cast<double>(k);
			os_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 9) << "\" width=\"12\" height=\"12\" fill=\""
			    << color(k) << "\"/>\n"
			    << "<text x=\"" << num(x + 18) << "\" y=\"" << num(y + 1) << "\" font-size=\"12\">" << escape(names[k])
			    << "</text>\n";
		}
	}

	std::string finish() {
		os_ << "</svg>\n";
		return os_.str();
	}

private:
	std::ostringstream os_;
};

using Group = std::pair<std::size_t, std::size_t>;  // (J, I)

std::string group_label(const Group& g) {
	return "J=" + std::to_string(g.first) + " I=" + std::to_string(g.second);
}

std::vector<std::string> methods_in_order(const std::vector<CsvRow>& rows) {
	std::vector<std::string> out;
	for (const auto& r : rows)
		if (std::find(out.begin(), out.end(), r.method) == out.end())
			out.push_back(r.method);
	return out;
}

// Grouped bars: values[series][group], missing entries skipped.
std::string grouped_bars(const std::string& title, const std::string& ylabel, const std::vector<Group>& groups,
                         const std::vector<std::string>& series,
                         const std::map<std::pair<std::size_t, Group>, double>& values) {
	double lo = 0, hi = 0;
	for (const auto& [k, v] : values) {
		lo = std::min(lo, v);
		hi = std::max(hi, v);
	}
	const Axis axis = make_axis(lo, hi);
	Svg svg(title, ylabel);
	svg.axes(axis);
	const double plot_w = kWidth - kLeft - kRight;
	const double slot = plot_w / static_cast<double>(groups.size());
	const double bar_w = slot * 0.8 / static_cast<double>(series.size());
	for (std::size_t g = 0; g < groups.size(); ++g) {
		const double x0 = kLeft + slot * static_cast<double>(g) + slot * 0.1;
		for (std::size_t s = 0; s < series.size(); ++s) {
			auto it = values.find({s, groups[g]});
			if (it == values.end())
				continue;
			svg.bar(x0 + bar_w * static_cast<double>(s), bar_w, axis.y(0), axis.y(it->second), color(s));
		}
		svg.xlabel(kLeft + slot * (static_cast<double>(g) + 0.5), group_label(groups[g]));
	}
	svg.legend(series);
	return svg.finish();
}

std::string makespan_bars(const std::vector<CsvRow>& rows) {
	const auto series = methods_in_order(rows);
	std::map<std::pair<std::size_t, Group>, std::vector<double>> raw;
	std::vector<Group> groups;
	for (const auto& r : rows) {
		if (!r.makespan)
			continue;
		const Group g{r.clients, r.helpers};
		const std::size_t s = std::find(series.begin(), series.end(), r.method) - series.begin();
		raw[{s, g}].push_back(static_cast<double>(*r.makespan));
		if (std::find(groups.begin(), groups.end(), g) == groups.end())
			groups.push_back(g);
	}
	if (raw.empty())
		throw PlotError("makespan-bars: no row has a makespan");
	std::sort(groups.begin(), groups.end());
	std::map<std::pair<std::size_t, Group>, double> values;
	for (const auto& [k, v] : raw)
		values[k] = median(v);
	return grouped_bars("Median makespan by method", "makespan (slots)", groups, series, values);
}

std::string relative_diff(const std::vector<CsvRow>& rows) {
	std::map<std::string, double> equid;
	for (const auto& r : rows)
		if (r.method == "equid" && r.makespan && *r.makespan > 0)
			equid[r.instance_id] = static_cast<double>(*r.makespan);
	if (equid.empty())
		throw PlotError("relative-diff: column method has no equid rows with a positive makespan");
	std::vector<std::string> series;
	for (const auto& m : methods_in_order(rows))
		if (m != "equid")
			series.push_back(m);
	std::map<std::pair<std::size_t, Group>, std::vector<double>> raw;
	std::vector<Group> groups;
	for (const auto& r : rows) {
		auto e = equid.find(r.instance_id);
		if (r.method == "equid" || !r.makespan || e == equid.end())
			continue;
		const Group g{r.clients, r.helpers};
		const std::size_t s = std::find(series.begin(), series.end(), r.method) - series.begin();
		raw[{s, g}].push_back(100.0 * (static_cast<double>(*r.makespan) - e->second) / e->second);
		if (std::find(groups.begin(), groups.end(), g) == groups.end())
			groups.push_back(g);
	}
	if (raw.empty())
		throw PlotError("relative-diff: no other method shares an instance with equid");
	std::sort(groups.begin(), groups.end());
	std::map<std::pair<std::size_t, Group>, double> values;
	for (const auto& [k, v] : raw)
		values[k] = median(v);
	return grouped_bars("Relative difference to EquiD", "median (ALG - EquiD) / EquiD (%)", groups, series, values);
}

std::string helpers_curve(const std::vector<CsvRow>& rows) {
	const auto methods = methods_in_order(rows);
	if (methods.empty())
		throw PlotError("helpers-curve: no rows");
	const std::string method =
		std::find(methods.begin(), methods.end(), "equid") != methods.end() ? "equid" : methods.front();
	std::map<std::size_t, std::map<std::size_t, std::vector<double>>> by_helpers;  // I -> J -> makespans
	std::vector<std::size_t> xs;
	for (const auto& r : rows) {
		if (r.method != method || !r.makespan)
			continue;
		by_helpers[r.helpers][r.clients].push_back(static_cast<double>(*r.makespan));
		if (std::find(xs.begin(), xs.end(), r.clients) == xs.end())
			xs.push_back(r.clients);
	}
	if (by_helpers.empty())
		throw PlotError("helpers-curve: column makespan is empty for method " + method);
	std::sort(xs.begin(), xs.end());

	double hi = 0;
	std::map<std::size_t, std::map<std::size_t, double>> med;
	for (const auto& [I, per_j] : by_helpers)
		for (const auto& [J, v] : per_j) {
			med[I][J] = median(v);
			hi = std::max(hi, med[I][J]);
		}
	const Axis axis = make_axis(0, hi);
	Svg svg("Median " + method + " makespan by helper count", "makespan (slots)");
	svg.axes(axis);
	const double plot_w = kWidth - kLeft - kRight;
	auto x_of = [&](std::size_t J) {
		const std::size_t k = std::find(xs.begin(), xs.end(), J) - xs.begin();
		return xs.size() == 1 ? kLeft + plot_w / 2
		                      : kLeft + 20 + (plot_w - 40) * static_cast<double>(k) / static_cast<double>(xs.size() - 1);
	};
	std::vector<std::string> names;
	std::size_t s = 0;
	for (const auto& [I, per_j] : med) {
		std::vector<std::pair<double, double>> pts;
		for (const auto& [J, v] : per_j)
			pts.emplace_back(x_of(J), axis.y(v));
		svg.polyline(pts, color(s++));
		names.push_back("I=" + std::to_string(I));
	}
	for (std::size_t J : xs)
		svg.xlabel(x_of(J), std::to_string(J));
	svg.xtitle("clients J");
	svg.legend(names);
	return svg.finish();
}

}  // namespace

std::optional<PlotKind> parse_plot_kind(std::string_view name) {
	for (PlotKind k : {PlotKind::MakespanBars, PlotKind::RelativeDiff, PlotKind::HelpersCurve})
		if (name == to_string(k))
			return k;
	return std::nullopt;
}

const char* to_string(PlotKind k) {
	switch (k) {
	case PlotKind::MakespanBars: return "makespan-bars";
	case PlotKind::RelativeDiff: return "relative-diff";
	case PlotKind::HelpersCurve: return "helpers-curve";
	}
	return "unknown";
}

std::string render_plot(PlotKind kind, const std::vector<CsvRow>& rows) {
	if (rows.empty())
		throw PlotError("CSV has no data rows");
	switch (kind) {
	case PlotKind::MakespanBars: return makespan_bars(rows);
	case PlotKind::RelativeDiff: return relative_diff(rows);
	case PlotKind::HelpersCurve: return helpers_curve(rows);
	}
	throw PlotError("unknown plot kind");
}

}  // namespace slsched::harness
