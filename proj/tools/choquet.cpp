// Command-line front end for the content, Choquet integral and inequality
// harness. Exit codes: 0 ok, 1 I/O or bad input data, 2 bad parameters or
// usage, 3 a checked property failed.

#include "hcontent/content.hpp"
#include "hcontent/domains.hpp"
#include "hcontent/errors.hpp"
#include "hcontent/inequalities.hpp"
#include "hcontent/integral.hpp"
#include "hcontent/io.hpp"
#include "hcontent/operators.hpp"

#include <CLI11.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace hcontent;

namespace {

struct LevelRange {
    int lo = 8;
    int hi = 8;
};

LevelRange parse_levels(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int l = std::stoi(text);
            return {l, l};
        }
        LevelRange r{std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
        if (r.lo > r.hi) throw ParameterError("level range '" + text + "' is empty");
        return r;
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const ParameterError*>(&e)) throw;
        throw ParameterError("levels must look like 7 or 6..10, got '" + text + "'");
    }
}

std::vector<Point> parse_vertices(const std::string& text) {
    std::vector<Point> pts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        Point p;
        if (std::sscanf(item.c_str(), " %lf , %lf", &p.x, &p.y) != 2) {
            throw ParameterError("vertices must look like 'x,y;x,y;...', got '" + item + "'");
        }
        pts.push_back(p);
    }
    if (pts.size() < 3) throw ParameterError("a polygon needs at least three vertices");
    return pts;
}

struct Config {
    // geometry
    std::string preset = "ball";
    double radius = 0.4;
    double side = 0.8;
    std::string vertices;
    std::string mask_path;
    int level = 8;
    std::string levels = "8";
    // function
    std::string function = "trig";
    std::string family;
    std::size_t count = 20;
    double mu = -0.3;
    double bump_radius = 0.25;
    double outer_radius = 0.3;
    std::vector<double> linear{1.0, 0.0, 0.0};
    int modes = 4;
    // parameters
    double delta = 2.0;
    double p = 1.5;
    double kappa = 0.0;
    double q = 0.0;
    bool q_set = false;
    std::string variant = "a";
    std::string method = "dyadic";
    int budget = 100000;
    bool distribution = false;
    std::uint64_t seed = 0;
    // output
    std::string out;
    std::string format = "csv";
};

DomainSpec domain_spec(const Config& c) {
    switch (parse_domain_kind(c.preset)) {
    case DomainKind::ball: return DomainSpec::ball(c.radius);
    case DomainKind::square: return DomainSpec::square(c.side);
    case DomainKind::punctured_ball: return DomainSpec::punctured_ball(c.radius);
    case DomainKind::polygon: return DomainSpec::polygon(parse_vertices(c.vertices));
    }
    throw ParameterError("unknown domain preset");
}

DyadicMask geometry_mask(const Config& c) {
    if (!c.mask_path.empty()) {
        std::istringstream in(read_text(c.mask_path));
        return read_pbm(in);
    }
    return make_domain(domain_spec(c), DyadicGrid(c.level)).mask;
}

FunctionPreset single_function(const Config& c, Point center) {
    if (c.function == "trig") return TrigPreset{c.seed, c.modes};
    if (c.function == "bump") return BumpPreset{center, c.bump_radius};
    if (c.function == "power") return PowerPreset{c.mu, center};
    if (c.function == "linear") {
        if (c.linear.size() != 3) throw ParameterError("--linear takes three coefficients a,b,c");
        return LinearPreset{c.linear[0], c.linear[1], c.linear[2]};
    }
    throw ParameterError("unknown function preset '" + c.function + "'");
}

std::vector<FunctionPreset> functions(const Config& c, Point center) {
    if (c.family.empty()) return {single_function(c, center)};
    if (c.count == 0) throw ParameterError("--count must be positive");
    if (c.family == "trig") return trig_family(c.count, c.seed, c.modes);
    if (c.family == "bump") return bump_family(c.count, c.seed, center, c.outer_radius);
    throw ParameterError("unknown family '" + c.family + "'");
}

InequalityParams inequality_params(const Config& c) {
    InequalityParams ip{c.p, c.delta, c.kappa, std::nullopt};
    if (c.q_set) ip.q = c.q;
    return ip;
}

void require_format(const Config& c) {
    if (c.format != "csv" && c.format != "json") throw ParameterError("--format must be csv or json");
}

void emit_reports(const Config& c, const std::vector<RatioReport>& rows) {
    if (c.format == "json") {
        write_text(c.out, reports_json(rows));
    } else {
        std::ostringstream ss;
        write_reports_csv(ss, rows);
        write_text(c.out, ss.str());
    }
}

void emit_value(const Config& c, const char* name, double v) {
    if (c.format == "json") write_text(c.out, std::string("{\"") + name + "\": " + format_double(v) + "}\n");
    else write_text(c.out, format_double(v) + "\n");
}

// --- commands -----------------------------------------------------------------

void run_content(const Config& c) {
    const DyadicMask mask = geometry_mask(c);
    const ContentParams params{c.delta};
    params.validate();
    if (c.method == "ball") {
        try {
            emit_value(c, "value", ball_cover_upper(mask, params, c.budget));
        } catch (const IncompleteCoverError& e) {
            std::cerr << "partial value " << format_double(e.partial_value()) << '\n';
            throw;
        }
        return;
    }
    if (c.method != "dyadic") throw ParameterError("--method must be dyadic or ball");
    if (c.format == "json") write_text(c.out, cover_json(dyadic_optimal_cover(mask, params)));
    else emit_value(c, "value", dyadic_content(mask, params));
}

void run_choquet(const Config& c) {
    require_format(c);
    const DyadicMask mask = geometry_mask(c);
    const Domain shape = make_domain(domain_spec(c), mask.grid());
    const GridFunction f = eval_preset(single_function(c, shape.shape_center), mask.grid(), mask);
    const ContentParams params{c.delta};
    if (c.distribution) {
        std::ostringstream ss;
        write_step_csv(ss, distribution_function(f, mask, params));
        write_text(c.out, ss.str());
        return;
    }
    const double value = c.q_set ? choquet_norm(f, c.q, mask, params) : choquet_integral(f, mask, params);
    emit_value(c, "value", value);
}

void run_maximal(const Config& c) {
    const DyadicMask mask = geometry_mask(c);
    const Domain shape = make_domain(domain_spec(c), mask.grid());
    const GridFunction f = eval_preset(single_function(c, shape.shape_center), mask.grid(), mask);
    const GridFunction m = fractional_maximal(f, mask, MaximalParams{c.kappa});
    std::ostringstream ss;
    write_function_csv(ss, m, DyadicMask(mask.grid(), true));
    write_text(c.out, ss.str());
}

void run_riesz(const Config& c) {
    const DyadicMask mask = geometry_mask(c);
    const Domain shape = make_domain(domain_spec(c), mask.grid());
    const GridFunction f = eval_preset(single_function(c, shape.shape_center), mask.grid(), mask);
    const GridFunction i1 = riesz_potential(f.abs(), mask);
    std::ostringstream ss;
    write_function_csv(ss, i1, DyadicMask(mask.grid(), true));
    write_text(c.out, ss.str());
}

void run_verify(const Config& c, const std::string& kind) {
    require_format(c);
    const LevelRange range = parse_levels(c.levels);
    const InequalityParams ip = inequality_params(c);
    const DomainSpec spec = domain_spec(c);

    if (kind == "hedberg") {
        if (range.lo != range.hi) throw ParameterError("hedberg runs on a single level");
        const Domain d = make_domain(spec, DyadicGrid(range.lo));
        const GridFunction f = eval_preset(single_function(c, d.shape_center), d.mask.grid(), d.mask);
        const HedbergReport report = hedberg_bound(f, d.mask, c.p, c.delta, c.kappa);
        std::ostringstream ss;
        write_hedberg_csv(ss, report);
        write_text(c.out, ss.str());
        std::cerr << "max ratio " << format_double(report.max_ratio) << '\n';
        if (report.max_ratio > 1.0) throw ViolationError("pointwise bound exceeded");
        return;
    }

    std::vector<RatioReport> rows;
    for (int level = range.lo; level <= range.hi; ++level) {
        const Domain d = make_domain(spec, DyadicGrid(level));
        const auto family = functions(c, d.shape_center);
        for (std::size_t k = 0; k < family.size(); ++k) {
            const GridFunction u = eval_preset(family[k], d.mask.grid(), d.mask);
            RatioReport r;
            if (kind == "poincare") r = poincare_report(u, d, ip);
            else if (kind == "sobolev") r = sobolev_report(u, d, ip);
            else if (kind == "zero-boundary") {
                if (c.variant != "a" && c.variant != "b") throw ParameterError("--variant must be a or b");
                r = zero_boundary_report(u, d, ip, c.variant == "a" ? ZeroBoundaryVariant::a : ZeroBoundaryVariant::b);
            } else if (kind == "adams") r = adams_report(u, d);
            else throw ParameterError("unknown inequality '" + kind + "'");
            r.preset = k;
            rows.push_back(r);
        }
    }
    emit_reports(c, rows);
}

void run_sweep(const Config& c) {
    require_format(c);
    const LevelRange range = parse_levels(c.levels);
    const std::string family = c.family.empty() ? "trig" : c.family;
    if (c.count == 0) throw ParameterError("--count must be positive");
    const auto presets = family == "trig" ? trig_family(c.count, c.seed, c.modes)
                         : family == "bump" ? bump_family(c.count, c.seed, Point{0.5, 0.5}, c.outer_radius)
                                            : throw ParameterError("unknown family '" + family + "'");
    emit_reports(c, maximal_sweep(presets, inequality_params(c), range.lo, range.hi));
}

void run_sharpness(const Config& c) {
    require_format(c);
    if (!c.q_set) throw ParameterError("sharpness needs --q");
    const LevelRange range = parse_levels(c.levels);
    InequalityParams ip = inequality_params(c);
    ip.q.reset();
    emit_reports(c, sharpness_scan(c.q, c.mu, ip, range.lo, range.hi, c.radius));
}

// Quick end-to-end checks. Prints one line per check and throws
// ViolationError if any fails.
void run_selftest() {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << "  " << detail << '\n';
        if (!ok) ++failures;
    };

    {
        const DyadicGrid grid(4);
        const DyadicMask full(grid, true);
        const double h2 = dyadic_content(full, ContentParams{2.0});
        const double h1 = dyadic_content(full, ContentParams{1.0});
        check("content of the unit square", h2 == 1.0 && h1 == 1.0,
              "H^2 = " + format_double(h2) + ", H^1 = " + format_double(h1));
    }
    {
        const DyadicGrid grid(6);
        const Domain d = make_domain(DomainSpec::ball(0.4), grid);
        const GridFunction f = eval_preset(TrigPreset{7, 4}, grid, d.mask);
        const double a = choquet_integral(f, d.mask, ContentParams{2.0});
        const double b = lebesgue_integral(f, d.mask);
        check("choquet equals lebesgue at delta = 2", std::abs(a - b) <= 1e-12 * b,
              format_double(a) + " vs " + format_double(b));
        const double norm = choquet_norm(f, 1.5, d.mask, ContentParams{1.2});
        check("layer-cake power identity", std::isfinite(norm), "norm = " + format_double(norm));
    }

    // Tail integral: closed form against quadrature, and the two candidate
    // denominators of the Hedberg tail constant.
    {
        boost::math::quadrature::exp_sinh<double> integrator;
        const double r = 0.3;
        const double s = 3.5;
        const double closed = radial_tail_integral(r, s);
        const double quad =
            2.0 * std::numbers::pi * integrator.integrate([&](double t) { return std::pow(r + t, 1.0 - s); });
        check("radial tail closed form", std::abs(closed - quad) <= 1e-8 * quad,
              format_double(closed) + " vs quadrature " + format_double(quad));
    }
    for (const auto& [n, p, delta] : {std::tuple{2, 1.5, 2.0}, std::tuple{2, 1.0, 1.5}, std::tuple{3, 2.0, 3.0}}) {
        const TailDenominators t = tail_denominators(n, p, delta);
        char line[200];
        std::snprintf(line, sizeof line,
                      "tail denominators n=%d p=%g delta=%g: s=%.6g polar s-n=%.6g printed (n-1)s-n=%.6g%s", n, p,
                      delta, t.exponent, t.polar, t.alternative,
                      t.polar == t.alternative ? " (equal)" : " (differ)");
        std::cout << "info " << line << '\n';
    }

    if (failures) throw ViolationError(std::to_string(failures) + " selftest check(s) failed");
}

void add_geometry(CLI::App* cmd, Config& c) {
    cmd->add_option("--preset", c.preset, "ball, square, polygon or punctured_ball");
    cmd->add_option("--radius", c.radius, "ball radius");
    cmd->add_option("--side", c.side, "square side");
    cmd->add_option("--vertices", c.vertices, "polygon vertices 'x,y;x,y;...'");
}

void add_function(CLI::App* cmd, Config& c) {
    cmd->add_option("--function", c.function, "trig, bump, linear or power");
    cmd->add_option("--mu", c.mu, "power preset exponent");
    cmd->add_option("--bump-radius", c.bump_radius, "bump support radius");
    cmd->add_option("--linear", c.linear, "linear coefficients a b c")->expected(3)->delimiter(',');
    cmd->add_option("--modes", c.modes, "plane waves per trig preset");
    cmd->add_option("--seed", c.seed, "random seed");
}

void add_output(CLI::App* cmd, Config& c) {
    cmd->add_option("--out", c.out, "output file (stdout if omitted)");
    cmd->add_option("--format", c.format, "csv or json");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dyadic Hausdorff content, Choquet integrals and Poincare-type inequality checks"};
    app.require_subcommand(1);
    Config c;
    std::string verify_kind;

    auto* content = app.add_subcommand("content", "dyadic content of a shape or mask");
    add_geometry(content, c);
    content->add_option("--mask", c.mask_path, "PBM mask instead of a preset");
    content->add_option("--level", c.level, "grid level");
    content->add_option("--delta", c.delta, "content dimension");
    content->add_option("--method", c.method, "dyadic or ball");
    content->add_option("--budget", c.budget, "greedy ball cover iteration budget");
    add_output(content, c);

    auto* choquet = app.add_subcommand("choquet", "Choquet integral of a function preset");
    add_geometry(choquet, c);
    add_function(choquet, c);
    choquet->add_option("--level", c.level, "grid level");
    choquet->add_option("--delta", c.delta, "content dimension");
    choquet->add_option("--q", c.q, "return the L^q Choquet norm instead")->each([&](const std::string&) { c.q_set = true; });
    choquet->add_flag("--distribution", c.distribution, "emit the distribution function as t,h CSV");
    add_output(choquet, c);

    auto* maximal = app.add_subcommand("maximal", "fractional maximal function on the grid");
    add_geometry(maximal, c);
    add_function(maximal, c);
    maximal->add_option("--level", c.level, "grid level");
    maximal->add_option("--kappa", c.kappa, "fractional order in [0, 1)");
    add_output(maximal, c);

    auto* riesz = app.add_subcommand("riesz", "Riesz potential I_1 of |f|");
    add_geometry(riesz, c);
    add_function(riesz, c);
    riesz->add_option("--level", c.level, "grid level");
    add_output(riesz, c);

    auto* verify = app.add_subcommand("verify", "ratio reports for one inequality");
    verify->add_option("kind", verify_kind, "poincare, sobolev, zero-boundary, adams or hedberg")
        ->required()
        ->check(CLI::IsMember({"poincare", "sobolev", "zero-boundary", "adams", "hedberg"}));
    add_geometry(verify, c);
    add_function(verify, c);
    verify->add_option("--family", c.family, "trig or bump family instead of a single function");
    verify->add_option("--count", c.count, "family size");
    verify->add_option("--outer-radius", c.outer_radius, "bump family placement radius");
    verify->add_option("--levels", c.levels, "level or range a..b");
    verify->add_option("--p", c.p, "gradient exponent");
    verify->add_option("--delta", c.delta, "content dimension");
    verify->add_option("--kappa", c.kappa, "fractional order");
    verify->add_option("--q", c.q, "left-hand exponent")->each([&](const std::string&) { c.q_set = true; });
    verify->add_option("--variant", c.variant, "zero-boundary variant a or b");
    add_output(verify, c);

    auto* sweep = app.add_subcommand("sweep", "parameter sweeps");
    sweep->require_subcommand(1);
    auto* sweep_maximal = sweep->add_subcommand("maximal", "maximal-operator ratio over a function family");
    sweep_maximal->add_option("--family", c.family, "trig or bump");
    sweep_maximal->add_option("--count", c.count, "family size");
    sweep_maximal->add_option("--modes", c.modes, "plane waves per trig preset");
    sweep_maximal->add_option("--outer-radius", c.outer_radius, "bump family placement radius");
    sweep_maximal->add_option("--seed", c.seed, "random seed");
    sweep_maximal->add_option("--levels", c.levels, "level or range a..b");
    sweep_maximal->add_option("--p", c.p, "integrability exponent");
    sweep_maximal->add_option("--delta", c.delta, "content dimension");
    sweep_maximal->add_option("--kappa", c.kappa, "fractional order");
    add_output(sweep_maximal, c);

    auto* sharpness = app.add_subcommand("sharpness", "power-function scan on the punctured ball");
    sharpness->add_option("--q", c.q, "left-hand exponent")->required()->each([&](const std::string&) { c.q_set = true; });
    sharpness->add_option("--mu", c.mu, "power exponent");
    sharpness->add_option("--p", c.p, "gradient exponent");
    sharpness->add_option("--delta", c.delta, "content dimension");
    sharpness->add_option("--kappa", c.kappa, "fractional order");
    sharpness->add_option("--radius", c.radius, "punctured ball radius")->default_val(0.45);
    sharpness->add_option("--levels", c.levels, "level or range a..b");
    add_output(sharpness, c);

    auto* selftest = app.add_subcommand("selftest", "quick internal consistency checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (content->parsed()) run_content(c);
        else if (choquet->parsed()) run_choquet(c);
        else if (maximal->parsed()) run_maximal(c);
        else if (riesz->parsed()) run_riesz(c);
        else if (verify->parsed()) run_verify(c, verify_kind);
        else if (sweep_maximal->parsed()) run_sweep(c);
        else if (sharpness->parsed()) run_sharpness(c);
        else if (selftest->parsed()) run_selftest();
        return 0;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ResolutionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IncompleteCoverError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ViolationError& e) {
        std::cerr << "violation: " << e.what() << '\n';
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
