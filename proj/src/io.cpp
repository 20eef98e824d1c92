#include "tce/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tce {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// lambda/eta cells: GoldenRational literal preferred, decimal accepted.
struct NumberCell {
    double value = 0;
    std::optional<GoldenRational> exact;
};

NumberCell parse_number_cell(const std::string& text, const std::string& key) {
    NumberCell out;
    if (auto g = GoldenRational::parse(text)) {
        out.exact = *g;
        out.value = g->to_double();
        return out;
    }
    try {
        size_t pos = 0;
        out.value = std::stod(text, &pos);
        if (trim(text.substr(pos)).empty()) return out;
    } catch (const std::exception&) {
    }
    throw std::domain_error("parameter '" + key + "': expected a GoldenRational literal or decimal, got '" +
                            text + "'");
}

}  // namespace

ParamFile parse_params_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::domain_error("parameter file: malformed line '" + line + "'");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    auto require = [&](const std::string& key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end()) throw std::domain_error("parameter file: missing key '" + key + "'");
        return it->second;
    };

    std::vector<double> alpha;
    for (const auto& tok : split_ws(require("alpha"))) alpha.push_back(std::stod(tok));
    std::vector<int> tau;
    for (const auto& tok : split_ws(require("tau"))) tau.push_back(std::stoi(tok) - 1);
    if (kv.count("d")) {
        const int d = std::stoi(kv.at("d"));
        if (d != static_cast<int>(alpha.size()))
            throw std::domain_error("parameter file: d disagrees with alpha length");
    }
    const NumberCell lam = parse_number_cell(require("lambda"), "lambda");
    const NumberCell eta = parse_number_cell(require("eta"), "eta");

    ParamFile out;
    out.raw = kv;
    if (lam.exact && eta.exact) {
        out.params = TceParams::create_exact(alpha, tau, *lam.exact, *eta.exact);
    } else {
        out.params = TceParams::create(alpha, tau, lam.value, eta.value);
    }
    if (kv.count("seed")) out.seed = std::stoull(kv.at("seed"));
    if (kv.count("guard")) out.params.boundary_guard = std::stod(kv.at("guard"));
    return out;
}

ParamFile load_params(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open parameter file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_params_text(ss.str());
}

void write_params(const std::string& path, const TceParams& p, std::uint64_t seed) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write parameter file: " + path);
    f << "d = " << p.d << "\n";
    f << "alpha =";
    for (const double a : p.alpha) f << ' ' << format_double(a);
    f << "\ntau =";
    for (const int t : p.tau) f << ' ' << (t + 1);
    f << "\n";
    if (p.lambda_exact)
        f << "lambda = " << p.lambda_exact->str() << "\n";
    else
        f << "lambda = " << format_double(p.lambda) << "\n";
    if (p.eta_exact)
        f << "eta = " << p.eta_exact->str() << "\n";
    else
        f << "eta = " << format_double(p.eta) << "\n";
    f << "seed = " << seed << "\n";
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size())
        throw std::domain_error("CsvWriter: row width disagrees with header");
    rows_.push_back(std::move(cells));
}

std::string CsvWriter::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < header_.size(); ++i) os << (i ? "," : "") << header_[i];
    os << "\n";
    for (const auto& row : rows_) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    return os.str();
}

void CsvWriter::write(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write file: " + path);
    f << str();
}

namespace {

const char* kPalette[] = {"#777777", "#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#bcbd22"};

}  // namespace

void SvgScatter::write(const std::string& path) const {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& p : points) {
        if (first) {
            xmin = xmax = p.x;
            ymin = ymax = p.y;
            first = false;
        }
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    for (const auto& s : segments) {
        for (const double x : {s.x1, s.x2}) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
        }
        for (const double y : {s.y1, s.y2}) {
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    const double spanx = std::max(xmax - xmin, 1e-12);
    const double spany = std::max(ymax - ymin, 1e-12);
    const double margin = 30;
    const double sx = (width_px - 2 * margin) / spanx;
    const double sy = (height_px - 2 * margin) / spany;
    const double s = std::min(sx, sy);
    auto px = [&](double x) { return margin + (x - xmin) * s; };
    auto py = [&](double y) { return height_px - margin - (y - ymin) * s; };

    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write file: " + path);
    f << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px << "\" height=\""
      << height_px << "\" viewBox=\"0 0 " << width_px << " " << height_px << "\">\n";
    f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
        f << "<text x=\"" << margin << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">"
          << title << "</text>\n";
    for (const auto& seg : segments) {
        f << "<line x1=\"" << px(seg.x1) << "\" y1=\"" << py(seg.y1) << "\" x2=\"" << px(seg.x2)
          << "\" y2=\"" << py(seg.y2) << "\" stroke=\"" << seg.color << "\" stroke-width=\""
          << seg.width << "\"/>\n";
    }
    for (const auto& p : points) {
        const char* color = kPalette[p.color_class % 10];
        f << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y) << "\" r=\"" << p.radius
          << "\" fill=\"" << color << "\" fill-opacity=\"0.75\"/>\n";
    }
    f << "</svg>\n";
}

}  // namespace tce
