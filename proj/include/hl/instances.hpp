#pragma once

#include "hl/complex.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace hl {

// Seedable random source with portable output: raw draws come from
// std::mt19937_64 (whose output sequence the standard pins down) and every
// derived quantity uses a fixed transform of those draws, so the same seed
// gives the same samples on every platform.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : eng_(seed) {}

    static constexpr const char* algorithm = "mt19937_64";

    std::uint64_t bits() { return eng_(); }
    bool coin() { return bits() & 1u; }
    // top 53 bits scaled into [0,1)
    double uniform01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    // rejection sampling, uniform over [0, n)
    std::uint64_t below(std::uint64_t n);
    // Box-Muller using two draws: sqrt(-2 ln u1) * cos(2π u2), u1 in (0,1]
    double gaussian(double mean, double stddev);

private:
    std::mt19937_64 eng_;
};

// ---- deterministic families (unit weights everywhere) ----

// triangulated rows×cols grid, squares split along the (i,j)-(i+1,j+1) diagonal
SimplicialComplex gen_grid(int rows, int cols);

// grid of n rows wrapped around circumference m (column m identified with column 0)
SimplicialComplex gen_cylinder(int m, int n);

// both identifications: n rows and m columns wrap
SimplicialComplex gen_torus(int m, int n);

// k (d+1)-simplices sharing the common face {0..d}, apex i is vertex d+1+i
SimplicialComplex gen_kdk(int d, int k);

// Central circle on m vertices plus k strips (2×(m+1) grids). Strip i's first
// column is glued to circle vertices (c_{i mod m}, c_{(i+1) mod m}); its last
// column is identified with the first column of strip (i+t) mod k:
//
//        c2 --- c1          strip i:   col0   col1  ...  col m
//       /         \                     top *----*-- ... --* top   <- row 1
//      c3          c0                       |  / |         |
//       \         /                         | /  |         |
//        c4 --- c5          circle edge bottom *----*-- ... --* bottom
//
// (col 0 rides on a circle edge; col m rides on strip (i+t)'s col 0)
SimplicialComplex gen_mspace(int m, int k, int t);

// ---- Vietoris-Rips instances ----

struct PointCloud {
    std::vector<std::array<double, 3>> points;
};

// noisy circle: angle uniform, radius ~ N(1, 0.1), z ~ N(0, 0.1)
PointCloud sample_unfiltered(int n, std::uint64_t seed);
// sample n points, keep ceil(n/2) by max-min (farthest point) selection,
// starting from a uniformly chosen point
PointCloud sample_filtered(int n, std::uint64_t seed);
// `arcs` equal circle sectors with per_arc points each, angles stratified per sector
PointCloud sample_sector(int arcs, int per_arc, std::uint64_t seed);

double distance(const std::array<double, 3>& a, const std::array<double, 3>& b);

// smallest radius making the 1-skeleton connected, scaled by 1.1
double suggest_radius(const PointCloud& pc);

// 2-skeleton of the Vietoris-Rips complex at the given radius:
// vertices weight 0, edges weigh their length, triangles weight 0
SimplicialComplex vietoris_rips_2(const PointCloud& pc, double radius);

// ---- input cycles ----

enum class CycleMode { boundary_only, homology_rep };

// V = X △ ∂B where B ⊆ K_{d+1} picks each (d+1)-simplex by a fair coin in
// canonical order; X is empty (boundary_only) or a homology representative
// (homology_rep, error when H_d = 0)
Chain build_input_cycle(const SimplicialComplex& K, int d, std::uint64_t seed, CycleMode mode);

// ---- assembled instances ----

struct InstanceMeta {
    std::string generator;
    std::map<std::string, double> params; // named, deterministic order
    std::uint64_t seed = 0;
    std::string cycle_mode;
    std::string prng = RandomSource::algorithm;
};

struct Instance {
    SimplicialComplex complex;
    Chain cycle;
    int d = 1;
    InstanceMeta meta;
};

// Families: grid(rows,cols), cylinder(m,n), torus(m,n), mspace(m,k,t),
// kdk(d,k), vr_unfiltered(n), vr_filtered(n), vr_sector(arcs,per_arc).
// `radius` <= 0 means suggest_radius for the vr_* families (recorded in meta).
Instance make_instance(const std::string& family, const std::vector<int>& params,
                       std::uint64_t seed, CycleMode mode, double radius = 0.0);

std::string to_string(CycleMode mode);
CycleMode cycle_mode_from_string(const std::string& s);

} // namespace hl
