#include "hl/instances.hpp"

#include "hl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace hl {

std::uint64_t RandomSource::below(std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("RandomSource::below: n must be positive");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
        x = bits();
    } while (x >= limit);
    return x % n;
}

double RandomSource::gaussian(double mean, double stddev) {
    const double u1 = static_cast<double>((bits() >> 11) + 1) * 0x1.0p-53; // (0,1]
    const double u2 = uniform01();
    return mean + stddev * std::sqrt(-2.0 * std::log(u1)) *
                      std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

SimplicialComplex closure_of_tris(const std::vector<std::array<int, 3>>& tris) {
    std::vector<Simplex> tops;
    tops.reserve(tris.size());
    for (const auto& t : tris)
        tops.push_back(Simplex{t[0], t[1], t[2]});
    return closure(tops);
}

} // namespace

SimplicialComplex gen_grid(int rows, int cols) {
    if (rows < 2 || cols < 2)
        throw std::invalid_argument("gen_grid: needs at least a 2x2 grid");
    auto id = [cols](int i, int j) { return i * cols + j; };
    std::vector<std::array<int, 3>> tris;
    for (int i = 0; i + 1 < rows; ++i)
        for (int j = 0; j + 1 < cols; ++j) {
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
        }
    return closure_of_tris(tris);
}

SimplicialComplex gen_cylinder(int m, int n) {
    if (m < 3)
        throw std::invalid_argument("gen_cylinder: circumference must be at least 3");
    if (n < 2)
        throw std::invalid_argument("gen_cylinder: needs at least 2 rows");
    auto id = [m](int i, int j) { return i * m + (j % m); };
    std::vector<std::array<int, 3>> tris;
    for (int i = 0; i + 1 < n; ++i)
        for (int j = 0; j < m; ++j) {
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
        }
    return closure_of_tris(tris);
}

SimplicialComplex gen_torus(int m, int n) {
    if (m < 3 || n < 3)
        throw std::invalid_argument("gen_torus: both sides must be at least 3");
    auto id = [m, n](int i, int j) { return (i % n) * m + (j % m); };
    std::vector<std::array<int, 3>> tris;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
        }
    return closure_of_tris(tris);
}

SimplicialComplex gen_kdk(int d, int k) {
    if (d < 0 || k < 1)
        throw std::invalid_argument("gen_kdk: need d >= 0 and k >= 1");
    std::vector<Simplex> tops;
    for (int i = 0; i < k; ++i) {
        std::vector<int> vs(d + 1);
        std::iota(vs.begin(), vs.end(), 0);
        vs.push_back(d + 1 + i);
        tops.emplace_back(std::move(vs));
    }
    return closure(tops);
}

SimplicialComplex gen_mspace(int m, int k, int t) {
    if (m < 3)
        throw std::invalid_argument("gen_mspace: circle needs at least 3 vertices");
    if (k < 1)
        throw std::invalid_argument("gen_mspace: need at least one strip");
    t = ((t % k) + k) % k;

    const int interior_per_strip = 2 * (m - 1); // columns 1..m-1, two rows
    // vertex of strip i at (row r, column c); columns 0 and m live on the circle
    auto vertex = [&](int i, int r, int c) {
        if (c == 0)
            return (i % m + r) % m;
        if (c == m) {
            const int j = (i + t) % k;
            return (j % m + r) % m;
        }
        return m + i * interior_per_strip + (c - 1) * 2 + r;
    };

    std::vector<std::array<int, 3>> tris;
    for (int i = 0; i < k; ++i)
        for (int c = 0; c < m; ++c) {
            tris.push_back({vertex(i, 0, c), vertex(i, 1, c), vertex(i, 1, c + 1)});
            tris.push_back({vertex(i, 0, c), vertex(i, 0, c + 1), vertex(i, 1, c + 1)});
        }
    SimplicialComplex K = closure_of_tris(tris);
    // the central circle is part of the space, not only the glued edges
    for (int j = 0; j < m; ++j) {
        K.insert(Simplex{j}, 1.0);
        K.insert(Simplex{j, (j + 1) % m}, 1.0);
    }
    return K;
}

PointCloud sample_unfiltered(int n, std::uint64_t seed) {
    if (n < 0)
        throw std::invalid_argument("sample_unfiltered: n must be non-negative");
    RandomSource rng(seed);
    PointCloud pc;
    pc.points.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double r = rng.gaussian(1.0, 0.1);
        const double z = rng.gaussian(0.0, 0.1);
        pc.points.push_back({r * std::cos(theta), r * std::sin(theta), z});
    }
    return pc;
}

double distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

PointCloud sample_filtered(int n, std::uint64_t seed) {
    PointCloud all = sample_unfiltered(n, seed);
    if (n == 0)
        return all;
    RandomSource rng(seed + 1); // separate stream for the start pick
    const std::size_t keep = (static_cast<std::size_t>(n) + 1) / 2;

    std::vector<std::size_t> chosen{rng.below(static_cast<std::uint64_t>(n))};
    std::vector<double> dist_to_set(n, std::numeric_limits<double>::infinity());
    while (chosen.size() < keep) {
        const auto& last = all.points[chosen.back()];
        for (int i = 0; i < n; ++i)
            dist_to_set[i] = std::min(dist_to_set[i], distance(all.points[i], last));
        std::size_t far = 0;
        for (int i = 1; i < n; ++i)
            if (dist_to_set[i] > dist_to_set[far])
                far = i; // strict: ties keep the smallest index
        chosen.push_back(far);
    }
    PointCloud out;
    out.points.reserve(keep);
    for (std::size_t i : chosen)
        out.points.push_back(all.points[i]);
    return out;
}

PointCloud sample_sector(int arcs, int per_arc, std::uint64_t seed) {
    if (arcs < 1 || per_arc < 0)
        throw std::invalid_argument("sample_sector: need arcs >= 1 and per_arc >= 0");
    RandomSource rng(seed);
    PointCloud pc;
    pc.points.reserve(static_cast<std::size_t>(arcs) * per_arc);
    for (int a = 0; a < arcs; ++a) {
        const double lo = 2.0 * std::numbers::pi * a / arcs;
        const double hi = 2.0 * std::numbers::pi * (a + 1) / arcs;
        for (int i = 0; i < per_arc; ++i) {
            const double theta = rng.uniform(lo, hi);
            const double r = rng.gaussian(1.0, 0.1);
            const double z = rng.gaussian(0.0, 0.1);
            pc.points.push_back({r * std::cos(theta), r * std::sin(theta), z});
        }
    }
    return pc;
}

double suggest_radius(const PointCloud& pc) {
    const std::size_t n = pc.points.size();
    if (n < 2)
        return 1.0;
    struct Pair {
        double d;
        std::size_t i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pairs.push_back({distance(pc.points[i], pc.points[j]), i, j});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        return a.d != b.d ? a.d < b.d : std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = n;
    for (const Pair& p : pairs) {
        const auto a = find(p.i), b = find(p.j);
        if (a != b) {
            parent[a] = b;
            if (--components == 1)
                return p.d * 1.1;
        }
    }
    return 1.0; // unreachable for n >= 2
}

SimplicialComplex vietoris_rips_2(const PointCloud& pc, double radius) {
    if (!(radius >= 0.0))
        throw std::invalid_argument("vietoris_rips_2: radius must be non-negative");
    const int n = static_cast<int>(pc.points.size());
    SimplicialComplex K;
    for (int i = 0; i < n; ++i)
        K.insert(Simplex{i}, 0.0);
    std::vector<std::vector<char>> close(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = distance(pc.points[i], pc.points[j]);
            if (d <= radius) {
                close[i][j] = close[j][i] = 1;
                K.insert(Simplex{i, j}, d);
            }
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!close[i][j])
                continue;
            for (int l = j + 1; l < n; ++l)
                if (close[i][l] && close[j][l])
                    K.insert(Simplex{i, j, l}, 0.0);
        }
    return K;
}

Chain build_input_cycle(const SimplicialComplex& K, int d, std::uint64_t seed, CycleMode mode) {
    RandomSource rng(seed);
    std::vector<Simplex> b_elems;
    for (const Simplex& s : K.simplices_of_dim(d + 1))
        if (rng.coin())
            b_elems.push_back(s);
    const Chain b(d + 1, std::move(b_elems));

    Chain x;
    if (mode == CycleMode::homology_rep) {
        auto rep = representative_cycle(K, d);
        if (!rep)
            throw std::invalid_argument("build_input_cycle: homology_rep requested but H_d = 0");
        x = std::move(*rep);
    }
    Chain v = chain_add(x, boundary(b));
    if (v.dim() < 0)
        v = Chain(d); // keep the instance dimension on the empty cycle
    return v;
}

std::string to_string(CycleMode mode) {
    return mode == CycleMode::boundary_only ? "boundary_only" : "homology_rep";
}

CycleMode cycle_mode_from_string(const std::string& s) {
    if (s == "boundary_only")
        return CycleMode::boundary_only;
    if (s == "homology_rep")
        return CycleMode::homology_rep;
    throw std::invalid_argument("unknown cycle mode: " + s);
}

namespace {

void expect_params(const std::string& family, const std::vector<int>& params, std::size_t n) {
    if (params.size() != n)
        throw std::invalid_argument("family " + family + " expects " + std::to_string(n) +
                                    " parameters, got " + std::to_string(params.size()));
}

} // namespace

Instance make_instance(const std::string& family, const std::vector<int>& params,
                       std::uint64_t seed, CycleMode mode, double radius) {
    Instance inst;
    inst.meta.generator = family;
    inst.meta.seed = seed;
    inst.meta.cycle_mode = to_string(mode);
    inst.d = 1;

    if (family == "grid") {
        expect_params(family, params, 2);
        inst.complex = gen_grid(params[0], params[1]);
        inst.meta.params = {{"rows", double(params[0])}, {"cols", double(params[1])}};
    } else if (family == "cylinder") {
        expect_params(family, params, 2);
        inst.complex = gen_cylinder(params[0], params[1]);
        inst.meta.params = {{"m", double(params[0])}, {"n", double(params[1])}};
    } else if (family == "torus") {
        expect_params(family, params, 2);
        inst.complex = gen_torus(params[0], params[1]);
        inst.meta.params = {{"m", double(params[0])}, {"n", double(params[1])}};
    } else if (family == "mspace") {
        expect_params(family, params, 3);
        inst.complex = gen_mspace(params[0], params[1], params[2]);
        inst.meta.params = {{"m", double(params[0])},
                            {"k", double(params[1])},
                            {"t", double(params[2])}};
    } else if (family == "kdk") {
        expect_params(family, params, 2);
        inst.complex = gen_kdk(params[0], params[1]);
        inst.d = params[0];
        inst.meta.params = {{"d", double(params[0])}, {"k", double(params[1])}};
    } else if (family == "vr_unfiltered" || family == "vr_filtered") {
        expect_params(family, params, 1);
        PointCloud pc = family == "vr_unfiltered" ? sample_unfiltered(params[0], seed)
                                                  : sample_filtered(params[0], seed);
        if (radius <= 0.0)
            radius = suggest_radius(pc);
        inst.complex = vietoris_rips_2(pc, radius);
        inst.meta.params = {{"n", double(params[0])}, {"radius", radius}};
    } else if (family == "vr_sector") {
        expect_params(family, params, 2);
        PointCloud pc = sample_sector(params[0], params[1], seed);
        if (radius <= 0.0)
            radius = suggest_radius(pc);
        inst.complex = vietoris_rips_2(pc, radius);
        inst.meta.params = {{"arcs", double(params[0])},
                            {"per_arc", double(params[1])},
                            {"radius", radius}};
    } else {
        throw std::invalid_argument("unknown family: " + family);
    }

    inst.cycle = build_input_cycle(inst.complex, inst.d, seed, mode);
    return inst;
}

} // namespace hl
