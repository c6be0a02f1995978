#pragma once

#include <string>
#include <vector>

namespace roughpath {

struct PathSamples;

/// CSV writer with `# key = value` metadata header comments.
class CsvWriter {
public:
    CsvWriter(const std::string& file, const std::string& header,
              const std::vector<std::string>& metadata = {});
    ~CsvWriter();

    void row(const std::vector<double>& values);
    void row(const std::string& raw);

private:
    struct Impl;
    Impl* impl_;
};

void write_path_csv(const std::string& file, const PathSamples& path,
                    const std::vector<std::string>& metadata = {});
PathSamples read_path_csv(const std::string& file);

/// FNV-1a content hash of a string, hex-encoded; embedded in experiment
/// metadata so outputs are traceable to their inputs.
std::string content_hash(const std::string& data);

struct SvgSeries {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f6fb2";
    bool line = true;    // polyline, otherwise markers
};

/// Minimal polyline plot, no dependencies.
void write_svg_plot(const std::string& file, const std::vector<SvgSeries>& series,
                    const std::string& title, const std::string& xlabel,
                    const std::string& ylabel);

}  // namespace roughpath
