#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tce/tce_map.hpp"

namespace tce {

/// Shortest round-trip-exact decimal form of a double (17 significant digits).
std::string format_double(double x);

/// Flat key-value parameter file: `alpha` and `tau` as space-separated lists,
/// `lambda` and `eta` either GoldenRational literals ("a/b + c/d*phi") or
/// plain decimals, angles always decimal radians. `#` starts a comment.
struct ParamFile {
    TceParams params;
    std::uint64_t seed = 1;
    std::map<std::string, std::string> raw;
};

ParamFile load_params(const std::string& path);
ParamFile parse_params_text(const std::string& text);
void write_params(const std::string& path, const TceParams& params, std::uint64_t seed);

/// Minimal CSV writer with pinned formatting (17 significant digits, fixed
/// column order) so identical configs reproduce byte-identical files.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(std::vector<std::string> cells);
    void write(const std::string& path) const;
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Standalone SVG scatter of orbit points colored by itinerary symbol;
/// optional overlay segments (used for section lines and return profiles).
struct SvgScatter {
    struct Point {
        double x, y;
        int color_class;
        double radius = 1.2;
    };
    struct Segment {
        double x1, y1, x2, y2;
        std::string color = "#333333";
        double width = 0.8;
    };
    std::vector<Point> points;
    std::vector<Segment> segments;
    int width_px = 900, height_px = 700;
    std::string title;

    void write(const std::string& path) const;
};

}  // namespace tce
