#include "rpde/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rpde {

namespace {

std::string hex(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

double parse_hex(const std::string& tok) {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos == 0) throw std::runtime_error("io: malformed numeric token '" + tok + "'");
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("io: cannot write " + path);
    return f;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("io: cannot read " + path);
    return f;
}

void write_header(std::ofstream& f, const std::string& kind, const std::string& cfg_hash) {
    f << "# rpde-" << kind << " v1";
    if (!cfg_hash.empty()) f << " config=" << cfg_hash;
    f << "\n";
}

void lift_body(std::ofstream& f, const PathLift& lift) {
    f << "d,n,p,geometric,seed,refinement\n";
    f << lift.dim << ',' << lift.points() << ',' << hex(lift.pvar_exponent) << ','
      << (lift.geometric ? 1 : 0) << ',' << lift.seed << ',' << lift.refinement << "\n";
    for (std::size_t i = 0; i < lift.points(); ++i) {
        f << hex(lift.grid.points[i]);
        for (int a = 0; a < lift.dim; ++a) f << ',' << hex(lift.level1[i][a]);
        for (int a = 0; a < lift.dim; ++a)
            for (int b = 0; b < lift.dim; ++b) f << ',' << hex(lift.level2[i](a, b));
        f << "\n";
    }
}

PathLift lift_from_stream(std::ifstream& f) {
    std::string line;
    std::getline(f, line);  // column names
    std::getline(f, line);
    auto meta = split_csv(line);
    if (meta.size() != 6) throw std::runtime_error("io: malformed lift metadata");
    const int d = std::stoi(meta[0]);
    const std::size_t n = std::stoul(meta[1]);
    const double p = parse_hex(meta[2]);
    const bool geometric = meta[3] == "1";
    const std::uint64_t seed = std::stoull(meta[4]);
    const int refinement = std::stoi(meta[5]);

    std::vector<double> times(n);
    std::vector<Vec> level1(n, Vec::Zero(d));
    std::vector<Mat> level2(n, Mat::Zero(d, d));
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(f, line)) throw std::runtime_error("io: truncated lift file");
        auto toks = split_csv(line);
        if (toks.size() != 1 + static_cast<std::size_t>(d) + static_cast<std::size_t>(d) * d)
            throw std::runtime_error("io: malformed lift row");
        std::size_t c = 0;
        times[i] = parse_hex(toks[c++]);
        for (int a = 0; a < d; ++a) level1[i][a] = parse_hex(toks[c++]);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) level2[i](a, b) = parse_hex(toks[c++]);
    }
    PathLift lift;
    lift.dim = d;
    lift.grid = TimeGrid::from_points(times);
    lift.level1 = std::move(level1);
    lift.level2 = std::move(level2);
    lift.pvar_exponent = p;
    lift.geometric = geometric;
    lift.seed = seed;
    lift.refinement = refinement;
    return lift;
}

}  // namespace

std::string config_hash(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void save_lift_csv(const PathLift& lift, const std::string& path, const std::string& cfg_hash) {
    auto f = open_out(path);
    write_header(f, "lift", cfg_hash);
    lift_body(f, lift);
}

PathLift load_lift_csv(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    std::getline(f, line);  // header comment
    return lift_from_stream(f);
}

void save_scalar_driver_csv(const ScalarDriver& d, const std::string& path,
                            const std::string& cfg_hash) {
    auto f = open_out(path);
    write_header(f, "driver", cfg_hash);
    f << "space_dim,space_n,channels\n";
    f << d.grid.dim << ',' << d.grid.n << ',' << d.channels() << "\n";
    for (const auto& g : d.profiles) {
        f << "profile";
        for (double v : g) f << ',' << hex(v);
        f << "\n";
    }
    lift_body(f, d.base);
}

ScalarDriver load_scalar_driver_csv(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    std::getline(f, line);  // header
    std::getline(f, line);  // column names
    std::getline(f, line);
    auto meta = split_csv(line);
    if (meta.size() != 3) throw std::runtime_error("io: malformed driver metadata");
    ScalarDriver d;
    d.grid.dim = std::stoi(meta[0]);
    d.grid.n = std::stoi(meta[1]);
    const int channels = std::stoi(meta[2]);
    for (int c = 0; c < channels; ++c) {
        if (!std::getline(f, line)) throw std::runtime_error("io: truncated driver file");
        auto toks = split_csv(line);
        if (toks.empty() || toks[0] != "profile" || toks.size() != 1 + d.grid.total())
            throw std::runtime_error("io: malformed profile row");
        std::vector<double> g(d.grid.total());
        for (std::size_t j = 0; j < g.size(); ++j) g[j] = parse_hex(toks[j + 1]);
        d.profiles.push_back(std::move(g));
    }
    d.base = lift_from_stream(f);
    if (d.base.dim != channels) throw std::runtime_error("io: driver channel mismatch");
    d.chen_defect_recorded = driver_chen_defect(d);
    return d;
}

void save_field_csv(const Field& f, const std::string& path, const std::string& cfg_hash) {
    auto out = open_out(path);
    write_header(out, "field", cfg_hash);
    out << "t,node";
    for (int c = 0; c < f.components; ++c) out << ",u" << c;
    out << "\n";
    for (std::size_t k = 0; k < f.times.size(); ++k)
        for (std::size_t j = 0; j < f.grid.total(); ++j) {
            out << hex(f.times.points[k]) << ',' << j;
            for (int c = 0; c < f.components; ++c) out << ',' << hex(f.at(k, j, c));
            out << "\n";
        }
}

void save_report_json(const ConvergenceReport& r, const std::string& path,
                      const std::string& cfg_hash) {
    nlohmann::json j;
    j["config"] = cfg_hash;
    j["eps"] = r.eps;
    j["error"] = r.error;
    j["in_fit"] = std::vector<int>(r.in_fit.begin(), r.in_fit.end());
    j["slope"] = r.slope;
    j["intercept"] = r.intercept;
    j["max_residual"] = r.max_residual;
    j["degenerate"] = r.degenerate;
    auto f = open_out(path);
    f << j.dump(2) << "\n";
}

void save_report_csv(const ConvergenceReport& r, const std::string& path,
                     const std::string& cfg_hash) {
    auto f = open_out(path);
    write_header(f, "report", cfg_hash);
    f << "eps,error,in_fit\n";
    for (std::size_t k = 0; k < r.eps.size(); ++k)
        f << hex(r.eps[k]) << ',' << hex(r.error[k]) << ',' << int(r.in_fit[k]) << "\n";
}

void save_loglog_plot_data(const ConvergenceReport& r, const std::string& path,
                           const std::string& cfg_hash) {
    auto f = open_out(path);
    write_header(f, "plot", cfg_hash);
    for (std::size_t k = 0; k < r.eps.size(); ++k) {
        if (r.error[k] <= 0.0) continue;
        f << std::log(r.eps[k]) << ' ' << std::log(r.error[k]) << "\n";
    }
}

void save_loglog_svg(const ConvergenceReport& r, const std::string& path) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < r.eps.size(); ++k)
        if (r.error[k] > 0.0) pts.emplace_back(std::log(r.eps[k]), std::log(r.error[k]));
    auto f = open_out(path);
    const int w = 480, h = 320, pad = 40;
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\">\n";
    if (pts.size() >= 2) {
        double x0 = pts.front().first, x1 = pts.front().first;
        double y0 = pts.front().second, y1 = pts.front().second;
        for (auto& p : pts) {
            x0 = std::min(x0, p.first);
            x1 = std::max(x1, p.first);
            y0 = std::min(y0, p.second);
            y1 = std::max(y1, p.second);
        }
        if (x1 == x0) x1 = x0 + 1.0;
        if (y1 == y0) y1 = y0 + 1.0;
        f << "<polyline fill=\"none\" stroke=\"black\" points=\"";
        for (auto& p : pts) {
            const double px = pad + (p.first - x0) / (x1 - x0) * (w - 2 * pad);
            const double py = h - pad - (p.second - y0) / (y1 - y0) * (h - 2 * pad);
            f << px << ',' << py << ' ';
        }
        f << "\"/>\n";
    }
    f << "<text x=\"" << pad << "\" y=\"20\">log e(eps) vs log eps, slope " << r.slope
      << "</text>\n</svg>\n";
}

}  // namespace rpde
