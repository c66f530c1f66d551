#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "trigshear/analysis.hpp"
#include "trigshear/io.hpp"
#include "trigshear/oracle.hpp"
#include "trigshear/transform.hpp"

namespace fs = std::filesystem;
using namespace trigshear;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitUsage = 2;

struct ProbeSpec {
    enum class Kind { Edge, Point };
    Kind kind = Kind::Edge;
    double t = 0.0;
    Vec2 x;
    std::string label;
};

struct Options {
    std::string config_path;
    std::string cartoon; // path or "preset:<name>"
    std::vector<int> scales = {6, 8, 10};
    std::string cones = "h,v";
    std::string shears = "all";
    double eps0 = 0.5;
    int oversample = 1;
    std::string out = "out";
    int threads = 0;
    int synth_n = 1024;
    bool force = false;
    double tol = 1e-8;
    int degree = 3;
    double probe_radius = 0.5;
    std::vector<std::string> probe_args;
    std::vector<ProbeSpec> probes;
};

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("TRIGSHEAR_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

std::vector<Cone> parse_cones(const std::string& s) {
    std::vector<Cone> cones;
    for (char c : s) {
        if (c == ',' || c == ' ') continue;
        cones.push_back(parse_cone(c));
    }
    if (cones.empty()) throw std::invalid_argument("no cones selected");
    return cones;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::size_t dots = s.find("..");
    if (dots != std::string::npos) {
        int lo = std::stoi(s.substr(0, dots)), hi = std::stoi(s.substr(dots + 2));
        for (int l = lo; l <= hi; ++l) out.push_back(l);
        return out;
    }
    std::size_t start = 0;
    while (start < s.size()) {
        std::size_t comma = s.find(',', start);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(std::stoi(s.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

std::vector<int> parse_shears(const std::string& s, int j) {
    std::int64_t half = pow2(j / 2);
    std::vector<int> out;
    if (s == "all") {
        for (std::int64_t l = -half + 1; l < half; ++l) out.push_back(int(l));
        return out;
    }
    out = parse_int_list(s);
    for (int l : out)
        if (std::abs(std::int64_t(l)) > half)
            throw std::invalid_argument("shear out of range for scale " + std::to_string(j));
    return out;
}

ProbeSpec parse_probe(const std::string& s) {
    ProbeSpec p;
    if (s.rfind("edge:", 0) == 0) {
        p.kind = ProbeSpec::Kind::Edge;
        p.t = std::stod(s.substr(5));
        p.label = "edge t=" + s.substr(5);
        return p;
    }
    if (s.rfind("point:", 0) == 0) {
        std::string rest = s.substr(6);
        std::size_t comma = rest.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("point probe needs x,y");
        p.kind = ProbeSpec::Kind::Point;
        p.x = {std::stod(rest.substr(0, comma)), std::stod(rest.substr(comma + 1))};
        p.label = "point (" + rest + ")";
        return p;
    }
    throw std::invalid_argument("probe must look like edge:T or point:X,Y");
}

void apply_config_file(Options& opt, const CLI::App& app) {
    if (opt.config_path.empty()) return;
    std::ifstream f(opt.config_path);
    if (!f) throw std::invalid_argument("cannot open config '" + opt.config_path + "'");
    json cfg = json::parse(f);
    if (cfg.value("version", 1) != 1)
        throw std::invalid_argument("unsupported config version");
    auto unset = [&](const char* flag) { return app.count(flag) == 0; };
    if (cfg.contains("cartoon") && unset("--cartoon")) opt.cartoon = cfg["cartoon"];
    if (cfg.contains("scales") && unset("--j")) opt.scales = cfg["scales"].get<std::vector<int>>();
    if (cfg.contains("cones") && unset("--cones")) opt.cones = cfg["cones"];
    if (cfg.contains("shears") && unset("--l")) opt.shears = cfg["shears"];
    if (cfg.contains("eps0") && unset("--eps0")) opt.eps0 = cfg["eps0"];
    if (cfg.contains("oversample") && unset("--oversample")) opt.oversample = cfg["oversample"];
    if (cfg.contains("out") && unset("--out")) opt.out = cfg["out"];
    if (cfg.contains("threads") && unset("--threads")) opt.threads = cfg["threads"];
    if (cfg.contains("probe_radius")) opt.probe_radius = cfg["probe_radius"];
    if (cfg.contains("probes") && opt.probe_args.empty()) {
        for (const json& pj : cfg["probes"]) {
            ProbeSpec p;
            std::string kind = pj.value("kind", "edge");
            if (kind == "edge") {
                p.kind = ProbeSpec::Kind::Edge;
                p.t = pj.value("t", 0.0);
                p.label = pj.value("label", "edge t=" + std::to_string(p.t));
            } else if (kind == "point") {
                p.kind = ProbeSpec::Kind::Point;
                p.x = {pj["x"][0].get<double>(), pj["x"][1].get<double>()};
                p.label = pj.value("label", "point");
            } else {
                throw std::invalid_argument("unknown probe kind '" + kind + "'");
            }
            opt.probes.push_back(p);
        }
    }
}

CartoonSpec resolve_cartoon(const Options& opt) {
    if (opt.cartoon.empty())
        throw std::invalid_argument("no cartoon given (use --cartoon PATH or preset:NAME)");
    if (opt.cartoon.rfind("preset:", 0) == 0)
        return preset_cartoon_spec(opt.cartoon.substr(7));
    if (!fs::exists(opt.cartoon))
        throw std::invalid_argument("cartoon spec file '" + opt.cartoon + "' not found");
    return load_cartoon_spec(opt.cartoon);
}

void validate_common(const Options& opt) {
    if (opt.scales.empty()) throw std::invalid_argument("empty scale list");
    for (std::size_t i = 0; i < opt.scales.size(); ++i) {
        int j = opt.scales[i];
        if (j < 2 || j % 2 != 0)
            throw std::invalid_argument("scales must be even and >= 2");
        if (i > 0 && opt.scales[i] <= opt.scales[i - 1])
            throw std::invalid_argument("scales must be sorted and distinct");
    }
    if (opt.eps0 <= 0.0 || opt.eps0 > 1.0)
        throw std::invalid_argument("eps0 must lie in (0, 1]");
}

std::string coeff_stem(const Options& opt, Cone cone, int j, int l) {
    return opt.out + "/coeffs_" + cone_char(cone) + std::to_string(j) + "_" +
           std::to_string(l);
}

// Grids for the requested (cone, j, l) tasks: reuse binary dumps when present
// (and not forced), compute the rest scale by scale.
std::map<PyramidKey, CoefficientGrid>
gather_grids(const Options& opt, const CartoonFunction& f, const ShearletSystem& system,
             const std::vector<std::tuple<Cone, int, int>>& tasks, bool write_dumps) {
    std::map<PyramidKey, CoefficientGrid> grids;
    std::map<int, PyramidRequest> to_compute;
    int threads = resolve_threads(opt.threads);
    for (auto [cone, j, l] : tasks) {
        if (grids.count({cone, j, l})) continue;
        std::string bin = coeff_stem(opt, cone, j, l) + ".bin";
        if (!opt.force && fs::exists(bin)) {
            CoefficientGrid g = read_coefficient_binary(bin);
            if (g.cone == cone && g.j == j && g.l == l &&
                g.values.size() == std::size_t(pattern_size(j))) {
                std::printf("  reusing %s\n", bin.c_str());
                grids[{cone, j, l}] = std::move(g);
                continue;
            }
        }
        PyramidRequest& req = to_compute[j];
        req.j = j;
        if (std::find(req.cones.begin(), req.cones.end(), cone) == req.cones.end())
            req.cones.push_back(cone);
        if (std::find(req.shears.begin(), req.shears.end(), l) == req.shears.end())
            req.shears.push_back(l);
    }
    if (!to_compute.empty()) {
        std::vector<PyramidRequest> reqs;
        for (auto& [j, req] : to_compute) reqs.push_back(req);
        std::map<PyramidKey, CoefficientGrid> fresh =
            coefficient_pyramid(f, system, reqs, opt.oversample, threads);
        for (auto& [key, grid] : fresh) {
            if (write_dumps) {
                // only write what was asked for (the pyramid computes the
                // cone x shear product per scale)
                bool wanted = false;
                for (auto [cone, j, l] : tasks)
                    wanted |= cone == key.cone && j == key.j && l == key.l;
                if (wanted) {
                    write_coefficient_binary(coeff_stem(opt, key.cone, key.j, key.l) + ".bin",
                                             grid);
                    write_coefficient_csv(coeff_stem(opt, key.cone, key.j, key.l) + ".csv",
                                          grid);
                }
            }
            grids[key] = std::move(grid);
        }
    }
    return grids;
}

int cmd_synth(const Options& opt) {
    CartoonSpec spec = resolve_cartoon(opt);
    CartoonFunction f = build_cartoon(spec);
    if (opt.synth_n <= 0 || (opt.synth_n & (opt.synth_n - 1)) != 0)
        throw std::invalid_argument("--n must be a power of two");
    fs::create_directories(opt.out);
    SampleGrid grid = f.sample(opt.synth_n, resolve_threads(opt.threads));
    write_pgm(opt.out + "/cartoon.pgm", grid);
    write_grid_binary(opt.out + "/cartoon.bin", grid);

    json meta = json::parse(cartoon_spec_to_json(spec));
    meta["n"] = opt.synth_n;
    meta["tube_width"] = f.tube_width();
    meta["grid_mean"] = grid.mean();
    std::ofstream mf(opt.out + "/cartoon_meta.json");
    mf << meta.dump(2) << "\n";
    std::printf("synth: wrote %s/cartoon.{pgm,bin} and cartoon_meta.json (n=%d)\n",
                opt.out.c_str(), opt.synth_n);
    return kExitOk;
}

int cmd_coeffs(const Options& opt) {
    validate_common(opt);
    CartoonFunction f = build_cartoon(resolve_cartoon(opt));
    ShearletSystem system;
    fs::create_directories(opt.out);
    std::vector<std::tuple<Cone, int, int>> tasks;
    for (int j : opt.scales)
        for (Cone cone : parse_cones(opt.cones))
            for (int l : parse_shears(opt.shears, j)) tasks.push_back({cone, j, l});
    std::map<PyramidKey, CoefficientGrid> grids = gather_grids(opt, f, system, tasks, true);
    std::printf("coeffs: %zu grids in %s\n", grids.size(), opt.out.c_str());
    return kExitOk;
}

int cmd_sweep(const Options& opt) {
    validate_common(opt);
    CartoonFunction f = build_cartoon(resolve_cartoon(opt));
    ShearletSystem system;
    BoundarySampling boundary(f.star());
    fs::create_directories(opt.out);

    for (int j : opt.scales) {
        std::vector<std::tuple<Cone, int, int>> tasks;
        std::map<PyramidKey, OrientationSet> sets;
        for (Cone cone : parse_cones(opt.cones))
            for (int l : parse_shears(opt.shears, j)) {
                if (std::abs(std::int64_t(l)) >= pow2(j / 2)) continue;
                tasks.push_back({cone, j, l});
                sets[{cone, j, l}] = orientation_set(boundary, cone, j, l, opt.eps0);
            }
        std::map<PyramidKey, CoefficientGrid> grids =
            gather_grids(opt, f, system, tasks, false);
        std::vector<SweepRow> rows = sweep(grids, sets);
        std::string base = opt.out + "/sweep_j" + std::to_string(j);
        write_sweep_csv(base + ".csv", rows);
        write_sweep_dat(base + ".dat", rows);
        std::size_t skipped = 0;
        for (const SweepRow& r : rows) skipped += r.skipped ? 1 : 0;
        std::printf("sweep: j=%d wrote %s.{csv,dat} (%zu rows, %zu skipped)\n", j,
                    base.c_str(), rows.size(), skipped);
    }
    return kExitOk;
}

int cmd_decay(const Options& opt) {
    validate_common(opt);
    if (opt.scales.size() < 3)
        throw std::invalid_argument("decay needs at least 3 scales");
    Options local = opt;
    if (local.probes.empty()) local.probes.push_back(ProbeSpec{});

    CartoonFunction f = build_cartoon(resolve_cartoon(local));
    ShearletSystem system;
    BoundarySampling boundary(f.star());
    fs::create_directories(local.out);

    // shears needed: the aligned shear per edge probe and scale, l = 0 for points
    std::vector<std::tuple<Cone, int, int>> tasks;
    for (int j : local.scales) {
        tasks.push_back({Cone::Horizontal, j, 0});
        tasks.push_back({Cone::Vertical, j, 0});
        for (const ProbeSpec& p : local.probes)
            if (p.kind == ProbeSpec::Kind::Edge) {
                double angle = boundary.star().boundary_point(p.t).normal_angle;
                auto [cone, l] = aligned_shear(angle, j);
                tasks.push_back({cone, j, l});
            }
    }
    std::map<PyramidKey, CoefficientGrid> grids = gather_grids(local, f, system, tasks, false);

    std::vector<DecayReportRow> rows;
    for (const ProbeSpec& p : local.probes) {
        DecayReportRow row;
        row.label = p.label.empty() ? "edge t=0" : p.label;
        std::vector<std::pair<int, double>> series;
        if (p.kind == ProbeSpec::Kind::Edge) {
            double angle = boundary.star().boundary_point(p.t).normal_angle;
            row.cone = cone_char(aligned_shear(angle, local.scales.back()).first);
            series = edge_probe_series(grids, boundary, p.t, local.eps0, local.probe_radius,
                                       local.scales);
        } else {
            row.cone = 'h';
            series = point_probe_series(grids, p.x, local.scales);
        }
        row.points = series;
        FitResult fit = decay_fit(series);
        row.slope = fit.slope;
        row.intercept = fit.intercept;
        row.residual = fit.residual;
        Classification cls = classify_order(fit.slope);
        row.n_hat = cls.n_hat;
        row.margin = cls.margin;
        row.indeterminate = cls.indeterminate;
        if (fit.slope <= -3.0)
            row.classification = "smooth";
        else if (cls.indeterminate)
            row.classification = "indeterminate";
        else
            row.classification = "order-" + std::to_string(cls.n_hat);
        rows.push_back(row);
        std::printf("decay: %-18s slope=%8.4f  n=%d  margin=%.3f  -> %s\n",
                    row.label.c_str(), row.slope, row.n_hat, row.margin,
                    row.classification.c_str());
    }
    write_decay_json(local.out + "/decay.json", rows);
    std::printf("decay: wrote %s/decay.json\n", local.out.c_str());
    return kExitOk;
}

int cmd_oracle_check(const Options& opt) {
    if (opt.degree < 0 || opt.degree > 3)
        throw std::invalid_argument("oracle-check supports polynomial degrees 0..3");
    if (opt.tol <= 0.0) throw std::invalid_argument("tolerance must be positive");

    RadiusSeries circle;
    circle.constant = 2.0;
    RadiusSeries lobed;
    lobed.constant = 1.6;
    lobed.cosine = {0.0, 0.0, 0.35};
    StarSet stars[] = {StarSet({0, 0}, circle), StarSet({0, 0}, lobed)};

    std::vector<PolynomialField> polys;
    polys.push_back(PolynomialField::constant(1.0));
    if (opt.degree >= 1)
        polys.push_back(PolynomialField::monomial(1, 0, 1.0).add(PolynomialField::constant(0.4)));
    if (opt.degree >= 2)
        polys.push_back(
            PolynomialField::monomial(1, 1, 0.8).add(PolynomialField::monomial(0, 2, -0.5)));
    if (opt.degree >= 3)
        polys.push_back(PolynomialField::monomial(3, 0, 0.3)
                            .add(PolynomialField::monomial(1, 2, 0.9))
                            .add(PolynomialField::constant(-0.2)));

    int failures = 0;
    auto report = [&](const char* name, double worst, double tol) {
        bool ok = worst <= tol;
        failures += ok ? 0 : 1;
        std::printf("[%s] %-34s worst=%.3e tol=%.1e\n", ok ? "PASS" : "FAIL", name, worst, tol);
    };

    // cross-oracle agreement over a deterministic (rho, theta) sample
    double worst = 0.0;
    for (const StarSet& star : stars)
        for (const PolynomialField& p : polys)
            for (int i = 0; i < 20; ++i) {
                double rho = 0.5 + 19.5 * double(i) / 19.0;
                double theta = two_pi * double(i) / 20.0 + 0.1;
                std::complex<double> a = ft_region_quadrature(p, star, rho * unit_dir(theta)).value;
                std::complex<double> b = ft_region_boundary(p, star, rho, theta).value;
                worst = std::max(worst, std::abs(a - b));
            }
    report("boundary vs region quadrature", worst, opt.tol);

    // disc indicator against the Bessel series
    worst = 0.0;
    for (Vec2 xi : {Vec2(1, 0), Vec2(2, 1), Vec2(0, 3), Vec2(3, 3), Vec2(5, 1)}) {
        std::complex<double> q = ft_region_quadrature(polys[0], stars[0], xi).value;
        worst = std::max(worst, std::abs(q - disc_indicator_transform(2.0, {0, 0}, xi)));
    }
    report("disc case vs Bessel series", worst, opt.tol);

    // Fourier differentiation identity
    SmoothBumpField bump = make_polynomial_bump(6, 2.0, {0.2, -0.4});
    worst = 0.0;
    for (int i = 0; i < 8; ++i) {
        double ang = two_pi * double(i) / 8.0;
        Vec2 xi = (2.0 + double(i)) * unit_dir(1.7 * ang + 0.3);
        worst = std::max(worst, directional_fourier_identity_check(bump, unit_dir(ang), 2, xi));
    }
    report("fourier differentiation identity", worst, std::max(opt.tol, 1e-7));

    if (failures > 0) {
        std::printf("oracle-check: %d check(s) outside tolerance\n", failures);
        return kExitTolerance;
    }
    std::printf("oracle-check: all checks within tolerance\n");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"trigonometric shearlet analysis of cartoon-like functions"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    std::string scales_arg;

    app.add_option("--config", opt.config_path, "JSON config file (flags override)");
    app.add_option("--cartoon", opt.cartoon, "cartoon spec path or preset:NAME");
    app.add_option("--j", scales_arg, "comma-separated even scales, e.g. 6,8,10");
    app.add_option("--cones", opt.cones, "cones to process (h, v or h,v)");
    app.add_option("--l", opt.shears, "shear list: all, LO..HI or comma list");
    app.add_option("--eps0", opt.eps0, "orientation-set radius factor in (0, 1]");
    app.add_option("--oversample", opt.oversample, "spectral oversampling factor (power of two)");
    app.add_option("--out", opt.out, "output directory");
    app.add_option("--threads", opt.threads, "worker threads (or TRIGSHEAR_THREADS)");
    app.add_flag("--force", opt.force, "recompute even when dumps exist");

    CLI::App* synth = app.add_subcommand("synth", "sample a cartoon and write grid + preview");
    synth->add_option("--preset", opt.cartoon, "cartoon preset (chi, fig1)")
        ->transform([](std::string s) { return "preset:" + s; });
    synth->add_option("--n", opt.synth_n, "grid size (power of two)");

    CLI::App* coeffs = app.add_subcommand("coeffs", "coefficient grids for (cone, j, l)");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "orientation sweep tables per scale");
    CLI::App* decay = app.add_subcommand("decay", "decay slopes and order classification");
    decay->add_option("--probe", opt.probe_args, "probe: edge:T or point:X,Y (repeatable)");
    decay->add_option("--probe-radius", opt.probe_radius,
                      "restrict edge-probe hits to this boundary distance");
    CLI::App* oracle = app.add_subcommand("oracle-check", "cross-validate the transform oracles");
    oracle->add_option("--tol", opt.tol, "absolute agreement tolerance");
    oracle->add_option("--degree", opt.degree, "max polynomial degree (0..3)");

    try {
        app.parse(argc, argv);
        apply_config_file(opt, app);
        if (app.count("--j") > 0) {
            opt.scales = parse_int_list(scales_arg);
            if (opt.scales.empty()) throw std::invalid_argument("empty scale list");
        }
        for (const std::string& s : opt.probe_args) opt.probes.push_back(parse_probe(s));

        if (synth->parsed()) return cmd_synth(opt);
        if (coeffs->parsed()) return cmd_coeffs(opt);
        if (sweep_cmd->parsed()) return cmd_sweep(opt);
        if (decay->parsed()) return cmd_decay(opt);
        if (oracle->parsed()) return cmd_oracle_check(opt);
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
}
