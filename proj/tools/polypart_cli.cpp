#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "polypart/area_partition.hpp"
#include "polypart/generate.hpp"
#include "polypart/io.hpp"
#include "polypart/partition.hpp"
#include "polypart/svg.hpp"
#include "polypart/verify.hpp"

using namespace polypart;

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitVerifyFail = 3;
constexpr int kExitBadConfig = 4;

struct Options {
    std::string input;
    std::string output;
    std::string svg_path;
    std::string type = "aligned-square";
    std::string areas;
    std::string family = "random";
    double bound = 1.0;
    double gamma = 0.0;
    double delta = 0.0;
    double tol_area = -1.0;
    double tol_size = 1e-6;
    std::uint64_t seed = 0x5EED;
    int n = 20;
    double rect_w = 3.0, rect_h = 1.0;
};

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

// returns the polygon ready for the pipeline, or exits with code 2
Polygon load_input_polygon(const std::string& path) {
    Polygon poly = read_polygon(load_json(path));
    poly = snapped(poly);
    if (poly.size() < 3) {
        std::fprintf(stderr, "error: polygon degenerates after snapping\n");
        std::exit(kExitBadInput);
    }
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            Segment a = poly.edge(i), b = poly.edge(j);
            if (segments_cross(a.a, a.b, b.a, b.b)) {
                Point x = crossing_point(a.a, a.b, b.a, b.b);
                std::fprintf(stderr,
                             "error: polygon is self-intersecting; edges %zu and %zu cross "
                             "at (%.17g, %.17g)\n",
                             i, j, x.x, x.y);
                std::exit(kExitBadInput);
            }
        }
    if (!is_simple(poly)) {
        std::fprintf(stderr, "error: polygon is not simple\n");
        std::exit(kExitBadInput);
    }
    if (!is_ccw(poly)) {
        std::fprintf(stderr, "warning: polygon is clockwise; reorienting\n");
        poly = reversed(poly);
    }
    return poly;
}

std::vector<double> parse_areas(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw std::invalid_argument("bad --areas entry: " + tok);
        }
    }
    return out;
}

SizeKind require_kind(const Options& opt) {
    SizeKind kind;
    if (!parse_size_kind(opt.type, kind)) {
        std::fprintf(stderr, "error: unknown --type %s\n", opt.type.c_str());
        std::exit(kExitBadConfig);
    }
    if (opt.bound <= 0.0) {
        std::fprintf(stderr, "error: --bound must be positive\n");
        std::exit(kExitBadConfig);
    }
    double gamma = opt.gamma > 0.0 ? opt.gamma : grid_gamma(kind);
    double delta = opt.delta > 0.0 ? opt.delta : fragment_delta(kind);
    if ((opt.gamma > 0.0 || opt.delta > 0.0) && kind != SizeKind::GeodesicDiameter &&
        kind != SizeKind::Perimeter && kind != SizeKind::Disk &&
        kind != SizeKind::StraightDiameter && kind != SizeKind::AlignedSquare &&
        kind != SizeKind::RotatedSquare) {
        std::exit(kExitBadConfig);
    }
    if (!interior_params_valid(kind, gamma, delta)) {
        std::fprintf(stderr, "error: gamma/delta violate the construction constraints\n");
        std::exit(kExitBadConfig);
    }
    return kind;
}

int cmd_partition(const Options& opt) {
    Polygon poly = load_input_polygon(opt.input);
    double area = polygon_area(poly);
    double tol_area = opt.tol_area > 0.0 ? opt.tol_area : 1e-9 * area;

    std::vector<Piece> pieces;
    std::string kind_name;
    Partition part;
    std::optional<SizeKind> kind;
    if (opt.type == "area") {
        kind_name = "area";
        std::vector<double> areas;
        try {
            areas = parse_areas(opt.areas);
            for (Polygon& g : area_partition(poly, areas))
                pieces.push_back({std::move(g), PieceClass::Boundary});
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return kExitBadConfig;
        }
    } else {
        kind = require_kind(opt);
        kind_name = size_kind_name(*kind);
        SizeConstraint c{*kind, opt.bound};
        InteriorParams params;
        params.gamma = opt.gamma;
        params.delta = opt.delta;
        params.seed = opt.seed;
        part = partition_polygon(poly, c, params);
        pieces = part.pieces;
    }

    VerificationReport rep = check_partition(poly, pieces, tol_area);
    if (kind) {
        check_sizes(*kind, opt.bound, pieces, rep, opt.tol_size);
        rep.lower_bound = lower_bound_count(*kind, area, opt.bound);
        rep.bound_checks = check_structure(part, *kind);
    }
    rep.finish(tol_area);

    json out = partition_json(poly, kind_name, pieces, rep);
    write_text(opt.output, out.dump(2) + "\n");
    if (!opt.svg_path.empty()) write_text(opt.svg_path, render_svg(poly, pieces));
    return rep.pass ? 0 : kExitVerifyFail;
}

int cmd_estimate(const Options& opt) {
    if (opt.type == "area") {
        std::fprintf(stderr, "error: estimate needs a size type\n");
        return kExitBadConfig;
    }
    SizeKind kind = require_kind(opt);
    Polygon poly = load_input_polygon(opt.input);
    SizeConstraint c{kind, opt.bound};
    InteriorParams params;
    params.gamma = opt.gamma;
    params.delta = opt.delta;
    params.seed = opt.seed;
    json out;
    out["estimate"] = estimate_count(poly, c, params);
    out["lower_bound"] = lower_bound_count(kind, polygon_area(poly), opt.bound);
    write_text(opt.output, out.dump(2) + "\n");
    return 0;
}

int cmd_verify(const Options& opt) {
    json doc;
    Polygon poly;
    std::vector<Piece> pieces;
    std::string kind_name;
    try {
        doc = load_json(opt.input);
        poly = read_polygon(doc);
        pieces = pieces_from_json(doc);
        kind_name = doc.value("kind", "area");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    }
    double area = polygon_area(poly);
    double tol_area = opt.tol_area > 0.0 ? opt.tol_area : 1e-9 * area;
    VerificationReport rep = check_partition(poly, pieces, tol_area);
    SizeKind kind;
    if (parse_size_kind(kind_name, kind)) {
        check_sizes(kind, opt.bound, pieces, rep, opt.tol_size);
        rep.lower_bound = lower_bound_count(kind, area, opt.bound);
    }
    rep.finish(tol_area);
    write_text(opt.output, report_json(rep).dump(2) + "\n");
    return rep.pass ? 0 : kExitVerifyFail;
}

int cmd_generate(const Options& opt) {
    Polygon poly;
    try {
        poly = generate_polygon(opt.family, opt.n, opt.seed, opt.rect_w, opt.rect_h);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadConfig;
    }
    json out;
    out["polygon"] = points_json(poly.vertices);
    write_text(opt.output, out.dump(2) + "\n");
    return 0;
}

int cmd_render(const Options& opt) {
    try {
        json doc = load_json(opt.input);
        Polygon poly = read_polygon(doc);
        std::vector<Piece> pieces = pieces_from_json(doc);
        write_text(opt.output, render_svg(poly, pieces));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"partition a simple polygon into size-bounded pieces"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input) cmd->add_option("input", opt.input, "input JSON file")->required();
        cmd->add_option("--out", opt.output, "output file (default stdout)");
        cmd->add_option("--tol-area", opt.tol_area, "area tolerance (default 1e-9*area)");
        cmd->add_option("--tol-size", opt.tol_size, "size tolerance (default 1e-6)");
    };
    auto add_sizing = [&](CLI::App* cmd) {
        cmd->add_option("--type", opt.type,
                        "aligned-square|rotated-square|disk|straight-diameter|"
                        "geodesic-diameter|perimeter|area");
        cmd->add_option("--bound", opt.bound, "size bound (default 1)");
        cmd->add_option("--seed", opt.seed, "grid offset seed");
        cmd->add_option("--gamma", opt.gamma, "grid cell side per unit bound");
        cmd->add_option("--delta", opt.delta, "fragment length per unit bound");
    };

    CLI::App* part = app.add_subcommand("partition", "partition a polygon");
    add_common(part, true);
    add_sizing(part);
    part->add_option("--areas", opt.areas, "comma-separated areas (type=area)");
    part->add_option("--svg", opt.svg_path, "also render the result to SVG");

    CLI::App* est = app.add_subcommand("estimate", "piece-count estimate without partitioning");
    add_common(est, true);
    add_sizing(est);

    CLI::App* ver = app.add_subcommand("verify", "re-verify a partition file");
    add_common(ver, true);
    ver->add_option("--bound", opt.bound, "size bound used for the partition");

    CLI::App* gen = app.add_subcommand("generate", "generate a test polygon");
    add_common(gen, false);
    gen->add_option("--family", opt.family, "random|spiral|comb|star|rect");
    gen->add_option("-n,--vertices", opt.n, "vertex count");
    gen->add_option("--seed", opt.seed, "random seed");
    gen->add_option("--rect-w", opt.rect_w, "rect family width");
    gen->add_option("--rect-h", opt.rect_h, "rect family height");

    CLI::App* ren = app.add_subcommand("render", "render a partition file to SVG");
    add_common(ren, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitBadConfig;
    }

    try {
        if (part->parsed()) return cmd_partition(opt);
        if (est->parsed()) return cmd_estimate(opt);
        if (ver->parsed()) return cmd_verify(opt);
        if (gen->parsed()) return cmd_generate(opt);
        if (ren->parsed()) return cmd_render(opt);
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadConfig;
    }
    return kExitBadConfig;
}
