#include "core/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "core/errors.hpp"
#include "core/gaussian.hpp"

namespace roughpath {

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& file, const std::string& header,
                     const std::vector<std::string>& metadata)
    : impl_(new Impl) {
    impl_->out.open(file);
    if (!impl_->out) {
        delete impl_;
        throw ParameterError("csv: cannot open " + file + " for writing");
    }
    for (const auto& m : metadata) impl_->out << "# " << m << "\n";
    impl_->out << header << "\n";
    impl_->out << std::setprecision(17);
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        impl_->out << (i ? "," : "") << values[i];
    impl_->out << "\n";
}

void CsvWriter::row(const std::string& raw) { impl_->out << raw << "\n"; }

void write_path_csv(const std::string& file, const PathSamples& path,
                    const std::vector<std::string>& metadata) {
    std::string header = "t";
    for (int c = 1; c <= path.dim(); ++c) header += ",x" + std::to_string(c);
    CsvWriter csv(file, header, metadata);
    for (int i = 0; i < path.points(); ++i) {
        std::vector<double> row{path.times[i]};
        row.insert(row.end(), path.values[i].begin(), path.values[i].end());
        csv.row(row);
    }
}

PathSamples read_path_csv(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ParameterError("csv: cannot open " + file);
    PathSamples p;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.rfind("t,", 0) != 0)
                throw ParameterError("csv: expected header starting with 't,' in " + file);
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() < 2) throw ParameterError("csv: short row in " + file);
        p.times.push_back(row[0]);
        p.values.emplace_back(row.begin() + 1, row.end());
    }
    if (p.times.size() < 2) throw ParameterError("csv: fewer than two samples in " + file);
    return p;
}

std::string content_hash(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

void write_svg_plot(const std::string& file, const std::vector<SvgSeries>& series,
                    const std::string& title, const std::string& xlabel,
                    const std::string& ylabel) {
    const int W = 640, H = 480, L = 70, R = 20, T = 40, B = 50;
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!std::isfinite(xmin)) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

    std::ofstream out(file);
    if (!out) throw ParameterError("svg: cannot open " + file);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << W / 2 << "' y='20' text-anchor='middle' font-size='14'>" << title
        << "</text>\n";
    out << "<line x1='" << L << "' y1='" << H - B << "' x2='" << W - R << "' y2='" << H - B
        << "' stroke='black'/>\n";
    out << "<line x1='" << L << "' y1='" << T << "' x2='" << L << "' y2='" << H - B
        << "' stroke='black'/>\n";
    out << "<text x='" << (L + W - R) / 2 << "' y='" << H - 12
        << "' text-anchor='middle' font-size='12'>" << xlabel << "</text>\n";
    out << "<text x='16' y='" << (T + H - B) / 2 << "' font-size='12' transform='rotate(-90 16 "
        << (T + H - B) / 2 << ")' text-anchor='middle'>" << ylabel << "</text>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double xv = xmin + (xmax - xmin) * tick / 4.0;
        const double yv = ymin + (ymax - ymin) * tick / 4.0;
        out << "<text x='" << px(xv) << "' y='" << H - B + 16
            << "' text-anchor='middle' font-size='10'>" << std::setprecision(3) << xv
            << "</text>\n";
        out << "<text x='" << L - 6 << "' y='" << py(yv) + 3
            << "' text-anchor='end' font-size='10'>" << std::setprecision(3) << yv << "</text>\n";
    }
    for (const auto& s : series) {
        if (s.line) {
            out << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5' points='";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                out << px(s.x[i]) << "," << py(s.y[i]) << " ";
            }
            out << "'/>\n";
        } else {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                out << "<circle cx='" << px(s.x[i]) << "' cy='" << py(s.y[i])
                    << "' r='3' fill='" << s.color << "'/>\n";
            }
        }
    }
    out << "</svg>\n";
}

}  // namespace roughpath
