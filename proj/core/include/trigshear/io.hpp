#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trigshear/analysis.hpp"
#include "trigshear/cartoon.hpp"
#include "trigshear/grid.hpp"
#include "trigshear/transform.hpp"

namespace trigshear {

// ---- coefficient dumps -----------------------------------------------------

// CSV with columns cone,j,l,y1,y2,re,im,abs in pattern order
void write_coefficient_csv(const std::string& path, const CoefficientGrid& grid);

// Binary dump: magic "TSHC", u32 version, u32 cone (0=h, 1=v), i32 j, i32 l,
// u64 count, then count little-endian f64 pairs (re, im) in pattern order.
void write_coefficient_binary(const std::string& path, const CoefficientGrid& grid);
CoefficientGrid read_coefficient_binary(const std::string& path);

// ---- sweep and decay reports ----------------------------------------------

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);
// gnuplot-friendly: skipped rows omitted, columns theta l_max l_min per cone block
void write_sweep_dat(const std::string& path, const std::vector<SweepRow>& rows);

struct DecayReportRow {
    std::string label;
    char cone = 'h';
    std::vector<std::pair<int, double>> points;
    double slope = 0.0, intercept = 0.0, residual = 0.0;
    int n_hat = 0;
    double margin = 0.0;
    bool indeterminate = false;
    std::string classification; // "order-n", "indeterminate" or "smooth"
};

void write_decay_json(const std::string& path, const std::vector<DecayReportRow>& rows);

// ---- grids ------------------------------------------------------------------

// 8-bit binary PGM, min/max normalized
void write_pgm(const std::string& path, const SampleGrid& grid);
// magic "TSGR", u32 version, u32 n, then n*n little-endian f64, first
// coordinate fastest
void write_grid_binary(const std::string& path, const SampleGrid& grid);

// ---- cartoon specification files -------------------------------------------

struct CartoonSpec {
    Vec2 origin;
    double radius_const = 2.0;
    std::vector<double> radius_cos;
    std::vector<double> radius_sin;
    std::vector<ArcSpec> arcs;
    double blend = 0.1;
    SmoothBackground f0;
    std::string smoothness = "exp";
    bool bump_one = false; // true: bump factor identically 1 (plain indicator)
};

CartoonSpec parse_cartoon_spec(const std::string& json_text);
CartoonSpec load_cartoon_spec(const std::string& path);
std::string cartoon_spec_to_json(const CartoonSpec& spec);

// "chi" (characteristic function of the radius-2 circle) or "fig1" (three
// arcs of order 0, 1, 2 split at pi/3, pi, 5pi/3)
CartoonSpec preset_cartoon_spec(const std::string& name);

CartoonFunction build_cartoon(const CartoonSpec& spec);

} // namespace trigshear
