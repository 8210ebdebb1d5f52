#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kdsim/engine.hpp"
#include "kdsim/errors.hpp"

namespace kdsim {

// Canonical number format for all metric files: decimal text, 12 significant
// digits. parse/format round-trip at this precision.
inline std::string format_value(double v) {
    if (v == 0.0)
        v = 0.0; // normalise -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline double parse_value(const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str())
        throw IoError("parse_value: not a number: '" + text + "'");
    return v;
}

struct RunMetadata {
    std::string config_digest;
    std::uint64_t seed = 0;
    std::string started_at; // informational only, never written into artifacts
};

// Per-step records of one run: StepReports plus competence means, indexed
// contiguously from 0.
class TimeSeriesLog {
public:
    TimeSeriesLog(std::vector<std::string> layer_labels, std::vector<std::string> competence_names,
                  RunMetadata meta = {})
        : layer_labels_(std::move(layer_labels)), competence_names_(std::move(competence_names)),
          meta_(std::move(meta)) {}

    void append(StepReport report, std::vector<double> competence_means) {
        if (report.step != static_cast<std::int64_t>(steps_.size()))
            throw InvalidParameter("TimeSeriesLog: step indices must be gap-free from 0");
        if (report.layer_count != layer_labels_.size())
            throw DimensionMismatch("TimeSeriesLog: report layer count mismatch");
        if (competence_means.size() != competence_names_.size())
            throw DimensionMismatch("TimeSeriesLog: competence mean count mismatch");
        steps_.push_back(std::move(report));
        competence_means_.push_back(std::move(competence_means));
    }

    bool empty() const { return steps_.empty(); }
    std::size_t step_count() const { return steps_.size(); }
    const std::vector<StepReport>& steps() const { return steps_; }
    const std::vector<std::vector<double>>& competence_means() const { return competence_means_; }
    const std::vector<std::string>& layer_labels() const { return layer_labels_; }
    const std::vector<std::string>& competence_names() const { return competence_names_; }
    const RunMetadata& metadata() const { return meta_; }

private:
    std::vector<std::string> layer_labels_;
    std::vector<std::string> competence_names_;
    RunMetadata meta_;
    std::vector<StepReport> steps_;
    std::vector<std::vector<double>> competence_means_;
};

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary); // \n endings everywhere
    if (!out)
        throw IoError("cannot open '" + file.string() + "' for writing");
    return out;
}

} // namespace detail

// Writes knowledge.csv, flows.csv and competence.csv into dir.
inline void export_csv(const TimeSeriesLog& log, const std::filesystem::path& dir) {
    if (log.empty())
        throw InvalidParameter("export_csv: log is empty");
    std::filesystem::create_directories(dir);
    const std::size_t layers = log.layer_labels().size();

    {
        auto out = detail::open_out(dir / "knowledge.csv");
        out << "step,layer,mean_knowledge\n";
        for (const StepReport& rep : log.steps())
            for (std::size_t j = 0; j < layers; ++j)
                out << rep.step << ',' << log.layer_labels()[j] << ','
                    << format_value(rep.layer_mean[j]) << '\n';
    }
    {
        auto out = detail::open_out(dir / "flows.csv");
        out << "step,source_layer,target_layer,inflow_gain,inflow_loss,floor_correction\n";
        for (const StepReport& rep : log.steps())
            for (std::size_t f = 0; f < layers; ++f)
                for (std::size_t t = 0; t < layers; ++t) {
                    if (f == t)
                        continue;
                    out << rep.step << ',' << log.layer_labels()[f] << ','
                        << log.layer_labels()[t] << ','
                        << format_value(rep.inflow_gain_at(f, t)) << ','
                        << format_value(rep.inflow_loss_at(f, t)) << ','
                        << format_value(rep.floor_correction_at(f, t)) << '\n';
                }
    }
    {
        auto out = detail::open_out(dir / "competence.csv");
        out << "step,competence,mean_value\n";
        for (std::size_t s = 0; s < log.step_count(); ++s)
            for (std::size_t a = 0; a < log.competence_names().size(); ++a)
                out << log.steps()[s].step << ',' << log.competence_names()[a] << ','
                    << format_value(log.competence_means()[s][a]) << '\n';
    }
}

// Plain comma-split CSV reader (fields in this project never contain commas).
inline std::vector<std::vector<std::string>> load_csv(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + file.string() + "' for reading");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

namespace detail {

struct Series {
    std::string name;
    std::vector<double> values;
};

inline std::vector<Series> metric_series(const TimeSeriesLog& log, const std::string& metric) {
    const std::size_t layers = log.layer_labels().size();
    std::vector<Series> series;
    if (metric == "knowledge") {
        for (std::size_t j = 0; j < layers; ++j) {
            Series s{log.layer_labels()[j], {}};
            for (const StepReport& rep : log.steps())
                s.values.push_back(rep.layer_mean[j]);
            series.push_back(std::move(s));
        }
    } else if (metric == "competence") {
        for (std::size_t a = 0; a < log.competence_names().size(); ++a) {
            Series s{log.competence_names()[a], {}};
            for (std::size_t t = 0; t < log.step_count(); ++t)
                s.values.push_back(log.competence_means()[t][a]);
            series.push_back(std::move(s));
        }
    } else if (metric == "vertical_inflow") {
        for (std::size_t j = 0; j < layers; ++j) {
            Series s{log.layer_labels()[j], {}};
            for (const StepReport& rep : log.steps())
                s.values.push_back(rep.layer_inflow_gain(j));
            series.push_back(std::move(s));
        }
    } else if (metric == "vertical_outflow") {
        for (std::size_t j = 0; j < layers; ++j) {
            Series s{log.layer_labels()[j], {}};
            for (const StepReport& rep : log.steps())
                s.values.push_back(rep.layer_outflow_gain(j));
            series.push_back(std::move(s));
        }
    } else {
        throw UnknownMetric("render_svg: unknown metric '" + metric + "'");
    }
    return series;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
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

inline std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace detail

// One line per layer/competence over steps, with axes and a legend. A single
// step degenerates to point markers. Output is standalone SVG 1.1.
inline void render_svg(const TimeSeriesLog& log, const std::string& metric,
                       const std::filesystem::path& file) {
    if (log.empty())
        throw InvalidParameter("render_svg: log is empty");
    const std::vector<detail::Series> series = detail::metric_series(log, metric);

    const double width = 960, height = 540;
    const double left = 70, right = 150, top = 40, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    const std::size_t n = log.step_count();

    double lo = 0.0, hi = 1e-12;
    for (const auto& s : series)
        for (double v : s.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (hi == lo)
        hi = lo + 1.0;

    auto x_of = [&](std::size_t i) {
        return n > 1 ? left + plot_w * static_cast<double>(i) / static_cast<double>(n - 1)
                     : left + plot_w / 2.0;
    };
    auto y_of = [&](double v) { return top + plot_h * (1.0 - (v - lo) / (hi - lo)); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#e377c2"};
    const std::size_t ncolors = sizeof palette / sizeof palette[0];

    auto out = detail::open_out(file);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
        << "<text x=\"" << detail::px(left) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
        << detail::xml_escape(metric) << "</text>\n";

    // axes
    out << "<line x1=\"" << detail::px(left) << "\" y1=\"" << detail::px(top + plot_h) << "\" x2=\""
        << detail::px(left + plot_w) << "\" y2=\"" << detail::px(top + plot_h)
        << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << detail::px(left) << "\" y1=\"" << detail::px(top) << "\" x2=\""
        << detail::px(left) << "\" y2=\"" << detail::px(top + plot_h) << "\" stroke=\"black\"/>\n";

    for (int tick = 0; tick <= 4; ++tick) {
        const double v = lo + (hi - lo) * tick / 4.0;
        const double y = y_of(v);
        out << "<line x1=\"" << detail::px(left - 4) << "\" y1=\"" << detail::px(y) << "\" x2=\""
            << detail::px(left) << "\" y2=\"" << detail::px(y) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << detail::px(left - 8) << "\" y=\"" << detail::px(y + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << format_value(v)
            << "</text>\n";
    }
    for (int tick = 0; tick <= 4; ++tick) {
        const std::size_t i = n > 1 ? (n - 1) * static_cast<std::size_t>(tick) / 4 : 0;
        const double x = x_of(i);
        out << "<line x1=\"" << detail::px(x) << "\" y1=\"" << detail::px(top + plot_h) << "\" x2=\""
            << detail::px(x) << "\" y2=\"" << detail::px(top + plot_h + 4) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << detail::px(x) << "\" y=\"" << detail::px(top + plot_h + 18)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << log.steps()[i].step << "</text>\n";
        if (n == 1)
            break;
    }
    out << "<text x=\"" << detail::px(left + plot_w / 2) << "\" y=\"" << detail::px(height - 12)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">step</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = palette[s % ncolors];
        if (n == 1) {
            out << "<circle cx=\"" << detail::px(x_of(0)) << "\" cy=\""
                << detail::px(y_of(series[s].values[0])) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < n; ++i) {
                if (i)
                    out << ' ';
                out << detail::px(x_of(i)) << ',' << detail::px(y_of(series[s].values[i]));
            }
            out << "\"/>\n";
        }
        const double ly = top + 16 + 18 * static_cast<double>(s);
        out << "<rect x=\"" << detail::px(left + plot_w + 14) << "\" y=\"" << detail::px(ly - 9)
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n"
            << "<text x=\"" << detail::px(left + plot_w + 32) << "\" y=\"" << detail::px(ly + 2)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << detail::xml_escape(series[s].name)
            << "</text>\n";
    }
    out << "</svg>\n";
}

// Per layer: final mean, peak and the trough after the peak; per competence:
// final mean. Structured text, stable across runs of the same configuration.
inline std::string summarize(const TimeSeriesLog& log) {
    if (log.empty())
        throw InvalidParameter("summarize: log is empty");
    std::ostringstream out;
    const std::size_t n = log.step_count();
    out << "run summary\n";
    out << "config " << log.metadata().config_digest << " seed " << log.metadata().seed << "\n";
    out << "steps " << n << "  layers " << log.layer_labels().size() << "  competences "
        << log.competence_names().size() << "  final_agents " << log.steps().back().agent_count
        << "\n";
    for (std::size_t j = 0; j < log.layer_labels().size(); ++j) {
        std::size_t peak_at = 0;
        for (std::size_t t = 1; t < n; ++t)
            if (log.steps()[t].layer_mean[j] > log.steps()[peak_at].layer_mean[j])
                peak_at = t;
        std::size_t trough_at = peak_at;
        for (std::size_t t = peak_at; t < n; ++t)
            if (log.steps()[t].layer_mean[j] < log.steps()[trough_at].layer_mean[j])
                trough_at = t;
        out << "layer " << log.layer_labels()[j] << ": final "
            << format_value(log.steps().back().layer_mean[j]) << " | peak "
            << format_value(log.steps()[peak_at].layer_mean[j]) << " @ step "
            << log.steps()[peak_at].step << " | trough_after_peak "
            << format_value(log.steps()[trough_at].layer_mean[j]) << " @ step "
            << log.steps()[trough_at].step << "\n";
    }
    for (std::size_t a = 0; a < log.competence_names().size(); ++a)
        out << "competence " << log.competence_names()[a] << ": final "
            << format_value(log.competence_means().back()[a]) << "\n";
    return out.str();
}

} // namespace kdsim
