#pragma once

#include "hl/complex.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hl::testsupport {

// 1-cycle visiting the given vertices in order, closing back to the start
inline Chain ring_cycle(const std::vector<int>& vs) {
    std::vector<Simplex> edges;
    const int n = static_cast<int>(vs.size());
    for (int i = 0; i < n; ++i)
        edges.push_back(Simplex{vs[i], vs[(i + 1) % n]});
    return Chain(1, std::move(edges));
}

inline std::vector<int> iota_ring(int start, int count) {
    std::vector<int> vs(count);
    for (int i = 0; i < count; ++i)
        vs[i] = start + i;
    return vs;
}

struct Annulus {
    SimplicialComplex complex;
    Chain outer; // the p outer boundary edges, vertices 0..p-1
    Chain inner; // the q inner boundary edges, vertices p..p+q-1
};

// Triangulated annulus: outer ring of p vertices, inner ring of q vertices,
// joined by a band of p+q triangles. Both rings are walked at matching
// angular speed, advancing whichever ring lags behind, so any p,q >= 3 work.
inline Annulus make_annulus(int p, int q) {
    if (p < 3 || q < 3)
        throw std::invalid_argument("make_annulus: both rings need at least 3 vertices");
    auto outer_v = [p](int i) { return i % p; };
    auto inner_v = [p, q](int j) { return p + (j % q); };

    std::vector<Simplex> tris;
    int i = 0, j = 0;
    while (i < p || j < q) {
        const bool advance_outer =
            j == q || (i < p && static_cast<std::int64_t>(i + 1) * q <=
                                    static_cast<std::int64_t>(j + 1) * p);
        if (advance_outer) {
            tris.push_back(Simplex{outer_v(i), outer_v(i + 1), inner_v(j)});
            ++i;
        } else {
            tris.push_back(Simplex{outer_v(i), inner_v(j), inner_v(j + 1)});
            ++j;
        }
    }

    Annulus a;
    a.complex = closure(tris);
    a.outer = ring_cycle(iota_ring(0, p));
    a.inner = ring_cycle(iota_ring(p, q));
    return a;
}

// meridian of gen_torus(m, n): the row-0 loop around the m direction
inline Chain torus_meridian(int m, int /*n*/) {
    return ring_cycle(iota_ring(0, m));
}

// longitude of gen_torus(m, n): the column-0 loop around the n direction
inline Chain torus_longitude(int m, int n) {
    std::vector<int> vs(n);
    for (int i = 0; i < n; ++i)
        vs[i] = i * m;
    return ring_cycle(vs);
}

} // namespace hl::testsupport
