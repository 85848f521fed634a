#include "hcontent/io.hpp"

#include "hcontent/errors.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hcontent {

using nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[40];
    // Prefer the shortest precision that round-trips.
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

void write_pbm(std::ostream& out, const DyadicMask& mask) {
    const std::size_t n = mask.grid().side();
    out << "P1\n" << n << ' ' << n << '\n';
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) out << (i ? " " : "") << (mask.test(i, j) ? '1' : '0');
        out << '\n';
    }
}

namespace {

// Next PBM token, skipping whitespace and comments.
bool next_token(std::istream& in, std::string& tok) {
    tok.clear();
    char c;
    while (in.get(c)) {
        if (c == '#') {
            std::string rest;
            std::getline(in, rest);
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            tok.push_back(c);
            return true;
        }
    }
    return false;
}

std::size_t parse_size(std::istream& in) {
    std::string tok;
    while (in.peek() != EOF && std::isspace(in.peek())) in.get();
    if (!(in >> tok)) throw InputError("truncated PBM header");
    try {
        return static_cast<std::size_t>(std::stoul(tok));
    } catch (const std::exception&) {
        throw InputError("bad PBM dimension '" + tok + "'");
    }
}

} // namespace

DyadicMask read_pbm(std::istream& in) {
    std::string magic;
    if (!(in >> magic) || magic != "P1") throw InputError("expected plain PBM (P1)");
    std::string line;
    // Skip comment lines between header fields.
    while (in >> std::ws && in.peek() == '#') std::getline(in, line);
    const std::size_t w = parse_size(in);
    while (in >> std::ws && in.peek() == '#') std::getline(in, line);
    const std::size_t h = parse_size(in);
    if (w != h) throw InputError("PBM mask must be square");
    int level = 0;
    while ((std::size_t{1} << level) < w) ++level;
    if ((std::size_t{1} << level) != w || level < DyadicGrid::kMinLevel || level > DyadicGrid::kMaxLevel) {
        throw InputError("PBM side must be a power of two between 2 and 4096");
    }
    DyadicMask mask{DyadicGrid(level)};
    std::string tok;
    std::size_t k = 0;
    while (k < w * h && next_token(in, tok)) {
        for (char c : tok) {
            if (k == w * h) throw InputError("PBM has too many pixels");
            if (c != '0' && c != '1') throw InputError("PBM pixel must be 0 or 1");
            mask.set_cell(k % w, k / w, c == '1');
            ++k;
        }
    }
    if (k != w * h) throw InputError("PBM has too few pixels");
    return mask;
}

void write_function_csv(std::ostream& out, const GridFunction& f, const DyadicMask& domain) {
    const DyadicGrid& grid = f.grid();
    out << "i,j,value,gradmag\n";
    for (std::size_t idx : domain.occupied()) {
        out << grid.col(idx) << ',' << grid.row(idx) << ',' << format_double(f.value(idx)) << ',';
        if (f.has_gradmag()) out << format_double(f.gradmag()[idx]);
        out << '\n';
    }
}

void write_step_csv(std::ostream& out, const StepFunction& step) {
    out << "t,h\n";
    for (const auto& b : step.breakpoints()) out << format_double(b.t) << ',' << format_double(b.h) << '\n';
}

void write_hedberg_csv(std::ostream& out, const HedbergReport& report) {
    out << "i,j,lhs,rhs,ratio,r_star\n";
    for (const auto& c : report.cells) {
        out << c.i << ',' << c.j << ',' << format_double(c.lhs) << ',' << format_double(c.rhs) << ','
            << format_double(c.ratio) << ',' << format_double(c.r_star) << '\n';
    }
}

void write_reports_csv(std::ostream& out, const std::vector<RatioReport>& rows) {
    out << "level,preset,p,delta,kappa,q,lhs,rhs,ratio,b_star\n";
    for (const auto& r : rows) {
        out << r.level << ',' << r.preset << ',' << format_double(r.params.p) << ',' << format_double(r.params.delta)
            << ',' << format_double(r.params.kappa) << ',' << format_double(r.params.exponent()) << ','
            << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << format_double(r.ratio) << ',';
        if (r.b_star) out << format_double(*r.b_star);
        out << '\n';
    }
}

std::string cover_json(const CoverSolution& cover) {
    ordered_json j;
    j["value"] = cover.value;
    j["cubes"] = ordered_json::array();
    for (const auto& c : cover.cubes) j["cubes"].push_back({{"level", c.level}, {"i", c.i}, {"j", c.j}});
    return j.dump(2) + "\n";
}

std::string domain_json(const Domain& d) {
    ordered_json j;
    j["preset"] = d.preset;
    j["level"] = d.mask.grid().level();
    j["alpha"] = d.alpha;
    j["beta"] = d.beta;
    j["john_center"] = {d.john_center.x, d.john_center.y};
    j["ref_ball_radius"] = d.ref_radius;
    return j.dump(2) + "\n";
}

std::string reports_json(const std::vector<RatioReport>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json j;
        j["level"] = r.level;
        j["preset"] = r.preset;
        j["p"] = r.params.p;
        j["delta"] = r.params.delta;
        j["kappa"] = r.params.kappa;
        j["q"] = r.params.exponent();
        j["lhs"] = r.lhs;
        j["rhs"] = r.rhs;
        j["ratio"] = r.ratio;
        j["b_star"] = r.b_star ? ordered_json(*r.b_star) : ordered_json(nullptr);
        if (r.lhs_ball_average) j["lhs_ball_average"] = *r.lhs_ball_average;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw IoError("cannot write to stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out.flush()) throw IoError("write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace hcontent
