#include "trigshear/io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace trigshear {

namespace {

using nlohmann::json;

FILE* open_or_throw(const std::string& path, const char* mode) {
    FILE* f = std::fopen(path.c_str(), mode);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return f;
}

void put_u32(FILE* f, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
    std::fwrite(b, 1, 4, f);
}

void put_i32(FILE* f, std::int32_t v) { put_u32(f, std::uint32_t(v)); }

void put_u64(FILE* f, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
    std::fwrite(b, 1, 8, f);
}

void put_f64(FILE* f, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(f, bits);
}

std::uint32_t get_u32(FILE* f) {
    unsigned char b[4];
    if (std::fread(b, 1, 4, f) != 4) throw std::runtime_error("truncated file");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(FILE* f) {
    unsigned char b[8];
    if (std::fread(b, 1, 8, f) != 8) throw std::runtime_error("truncated file");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
    return v;
}

double get_f64(FILE* f) {
    std::uint64_t bits = get_u64(f);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

} // namespace

void write_coefficient_csv(const std::string& path, const CoefficientGrid& grid) {
    FILE* f = open_or_throw(path, "w");
    std::fprintf(f, "cone,j,l,y1,y2,re,im,abs\n");
    std::vector<PatternPoint> pts = pattern(grid.cone, grid.j, grid.l);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::complex<double>& v = grid.values[i];
        std::fprintf(f, "%c,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", cone_char(grid.cone),
                     grid.j, grid.l, pts[i].y.x1, pts[i].y.x2, v.real(), v.imag(),
                     std::abs(v));
    }
    std::fclose(f);
}

void write_coefficient_binary(const std::string& path, const CoefficientGrid& grid) {
    FILE* f = open_or_throw(path, "wb");
    std::fwrite("TSHC", 1, 4, f);
    put_u32(f, 1);
    put_u32(f, grid.cone == Cone::Horizontal ? 0 : 1);
    put_i32(f, grid.j);
    put_i32(f, grid.l);
    put_u64(f, grid.values.size());
    for (const std::complex<double>& v : grid.values) {
        put_f64(f, v.real());
        put_f64(f, v.imag());
    }
    std::fclose(f);
}

CoefficientGrid read_coefficient_binary(const std::string& path) {
    FILE* f = open_or_throw(path, "rb");
    char magic[4];
    if (std::fread(magic, 1, 4, f) != 4 || std::memcmp(magic, "TSHC", 4) != 0) {
        std::fclose(f);
        throw std::runtime_error("'" + path + "' is not a coefficient dump");
    }
    std::uint32_t version = get_u32(f);
    if (version != 1) {
        std::fclose(f);
        throw std::runtime_error("unsupported coefficient dump version");
    }
    CoefficientGrid grid;
    grid.cone = get_u32(f) == 0 ? Cone::Horizontal : Cone::Vertical;
    grid.j = std::int32_t(get_u32(f));
    grid.l = std::int32_t(get_u32(f));
    std::uint64_t count = get_u64(f);
    grid.values.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        double re = get_f64(f), im = get_f64(f);
        grid.values[i] = {re, im};
    }
    std::fclose(f);
    return grid;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    FILE* f = open_or_throw(path, "w");
    std::fprintf(f, "cone,l,theta,hits,L_max,L_min,status\n");
    for (const SweepRow& r : rows) {
        if (r.skipped)
            std::fprintf(f, "%c,%d,%.17g,0,,,empty\n", cone_char(r.cone), r.l, r.theta);
        else
            std::fprintf(f, "%c,%d,%.17g,%zu,%.17g,%.17g,ok\n", cone_char(r.cone), r.l,
                         r.theta, r.hit_count, r.l_max, r.l_min);
    }
    std::fclose(f);
}

void write_sweep_dat(const std::string& path, const std::vector<SweepRow>& rows) {
    FILE* f = open_or_throw(path, "w");
    std::fprintf(f, "# theta  L_max  L_min   (per cone block, skipped shears omitted)\n");
    for (Cone cone : {Cone::Horizontal, Cone::Vertical}) {
        std::fprintf(f, "# cone %c\n", cone_char(cone));
        std::vector<SweepRow> block;
        for (const SweepRow& r : rows)
            if (r.cone == cone && !r.skipped) block.push_back(r);
        std::sort(block.begin(), block.end(),
                  [](const SweepRow& a, const SweepRow& b) { return a.theta < b.theta; });
        for (const SweepRow& r : block)
            std::fprintf(f, "%.17g %.17g %.17g\n", r.theta, r.l_max, r.l_min);
        std::fprintf(f, "\n\n");
    }
    std::fclose(f);
}

void write_decay_json(const std::string& path, const std::vector<DecayReportRow>& rows) {
    json out = json::array();
    for (const DecayReportRow& r : rows) {
        json points = json::array();
        for (auto [j, mag] : r.points) points.push_back({{"j", j}, {"magnitude", mag}});
        out.push_back({{"label", r.label},
                       {"cone", std::string(1, r.cone)},
                       {"points", points},
                       {"slope", r.slope},
                       {"intercept", r.intercept},
                       {"residual", r.residual},
                       {"n_hat", r.n_hat},
                       {"margin", r.margin},
                       {"indeterminate", r.indeterminate},
                       {"classification", r.classification}});
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    f << out.dump(2) << "\n";
}

void write_pgm(const std::string& path, const SampleGrid& grid) {
    double lo = 1e300, hi = -1e300;
    for (double v : grid.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double span = hi > lo ? hi - lo : 1.0;
    FILE* f = open_or_throw(path, "wb");
    std::fprintf(f, "P5\n%d %d\n255\n", grid.n, grid.n);
    std::vector<unsigned char> row(grid.n);
    for (int m2 = grid.n - 1; m2 >= 0; --m2) { // top row = largest x2
        for (int m1 = 0; m1 < grid.n; ++m1)
            row[m1] = (unsigned char)std::lround(255.0 * (grid.at(m1, m2) - lo) / span);
        std::fwrite(row.data(), 1, row.size(), f);
    }
    std::fclose(f);
}

void write_grid_binary(const std::string& path, const SampleGrid& grid) {
    FILE* f = open_or_throw(path, "wb");
    std::fwrite("TSGR", 1, 4, f);
    put_u32(f, 1);
    put_u32(f, std::uint32_t(grid.n));
    for (double v : grid.values) put_f64(f, v);
    std::fclose(f);
}

namespace {

SmoothBackground parse_background(const json& j) {
    if (j.is_null()) return SmoothBackground::zero();
    std::string preset = j.value("preset", "zero");
    if (preset == "zero") return SmoothBackground::zero();
    if (preset == "bump") {
        Vec2 c(0, 0);
        if (j.contains("center")) c = {j["center"][0].get<double>(), j["center"][1].get<double>()};
        return SmoothBackground::bump(j.value("amplitude", 1.0), c, j.value("radius", 1.0));
    }
    throw std::invalid_argument("unknown f0 preset '" + preset + "'");
}

} // namespace

CartoonSpec parse_cartoon_spec(const std::string& json_text) {
    json j = json::parse(json_text);
    CartoonSpec spec;
    if (j.contains("origin"))
        spec.origin = {j["origin"][0].get<double>(), j["origin"][1].get<double>()};
    if (j.contains("radius_series")) {
        const json& rs = j["radius_series"];
        spec.radius_const = rs.value("const", 2.0);
        if (rs.contains("cos")) spec.radius_cos = rs["cos"].get<std::vector<double>>();
        if (rs.contains("sin")) spec.radius_sin = rs["sin"].get<std::vector<double>>();
    }
    if (!j.contains("arcs")) throw std::invalid_argument("cartoon spec needs an arcs list");
    for (const json& a : j["arcs"]) {
        ArcSpec arc;
        arc.from = a.at("from").get<double>();
        arc.to = a.at("to").get<double>();
        arc.order = a.value("order", 0);
        arc.amplitude = a.value("amplitude", 1.0);
        spec.arcs.push_back(arc);
    }
    spec.blend = j.value("blend", 0.1);
    if (j.contains("f0")) spec.f0 = parse_background(j["f0"]);
    spec.smoothness = j.value("smoothness", "exp");
    std::string bump = j.value("bump", "tube");
    if (bump != "tube" && bump != "one")
        throw std::invalid_argument("bump mode must be 'tube' or 'one'");
    spec.bump_one = bump == "one";
    return spec;
}

CartoonSpec load_cartoon_spec(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open cartoon spec '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_cartoon_spec(text);
}

std::string cartoon_spec_to_json(const CartoonSpec& spec) {
    json arcs = json::array();
    for (const ArcSpec& a : spec.arcs)
        arcs.push_back({{"from", a.from}, {"to", a.to}, {"order", a.order},
                        {"amplitude", a.amplitude}});
    json f0;
    if (spec.f0.kind == SmoothBackground::Kind::Zero) {
        f0 = {{"preset", "zero"}};
    } else {
        f0 = {{"preset", "bump"},
              {"amplitude", spec.f0.amplitude},
              {"center", {spec.f0.center.x1, spec.f0.center.x2}},
              {"radius", spec.f0.radius}};
    }
    json j = {{"origin", {spec.origin.x1, spec.origin.x2}},
              {"radius_series",
               {{"const", spec.radius_const}, {"cos", spec.radius_cos}, {"sin", spec.radius_sin}}},
              {"arcs", arcs},
              {"blend", spec.blend},
              {"f0", f0},
              {"smoothness", spec.smoothness},
              {"bump", spec.bump_one ? "one" : "tube"}};
    return j.dump(2);
}

CartoonSpec preset_cartoon_spec(const std::string& name) {
    CartoonSpec spec;
    spec.origin = {0.0, 0.0};
    spec.radius_const = 2.0;
    if (name == "chi") {
        spec.arcs = {{0.0, two_pi, 0, 1.0}};
        spec.bump_one = true;
        return spec;
    }
    if (name == "fig1") {
        spec.arcs = {{pi / 3.0, pi, 0, 1.0},
                     {pi, 5.0 * pi / 3.0, 1, 1.0},
                     {5.0 * pi / 3.0, pi / 3.0, 2, 1.0}};
        return spec;
    }
    throw std::invalid_argument("unknown cartoon preset '" + name + "'");
}

CartoonFunction build_cartoon(const CartoonSpec& spec) {
    RadiusSeries rs;
    rs.constant = spec.radius_const;
    rs.cosine = spec.radius_cos;
    rs.sine = spec.radius_sin;
    StarSet star(spec.origin, rs);
    return CartoonFunction(std::move(star), spec.arcs, spec.f0, spec.blend,
                           spec.bump_one ? CartoonFunction::BumpMode::One
                                         : CartoonFunction::BumpMode::Tube,
                           StepSpec::parse(spec.smoothness));
}

} // namespace trigshear
