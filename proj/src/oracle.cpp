#include "hl/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace hl {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

void set_bit(std::vector<std::uint64_t>& v, std::size_t i) {
    v[i / 64] ^= std::uint64_t{1} << (i % 64);
}

bool get_bit(const std::vector<std::uint64_t>& v, std::size_t i) {
    return (v[i / 64] >> (i % 64)) & 1u;
}

} // namespace

Z2Matrix::Z2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_(word_count(rows)),
      cols_data_(cols, std::vector<std::uint64_t>(word_count(rows), 0)) {}

void Z2Matrix::set(std::size_t r, std::size_t c) { set_bit(cols_data_[c], r); }

bool Z2Matrix::get(std::size_t r, std::size_t c) const { return get_bit(cols_data_[c], r); }

void Z2Matrix::xor_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] ^= src[i];
}

int Z2Matrix::leading_bit(const std::vector<std::uint64_t>& v) {
    for (std::size_t w = v.size(); w-- > 0;)
        if (v[w])
            return static_cast<int>(w * 64 + 63 - std::countl_zero(v[w]));
    return -1;
}

bool Z2Matrix::reduce(std::vector<std::uint64_t>& v,
                      const std::vector<std::vector<std::uint64_t>>& basis) {
    for (const auto& b : basis) {
        int lb = leading_bit(b);
        if (lb >= 0 && get_bit(v, static_cast<std::size_t>(lb)))
            xor_into(v, b);
    }
    return leading_bit(v) < 0;
}

std::vector<std::vector<std::uint64_t>> Z2Matrix::column_space_basis() const {
    std::vector<std::vector<std::uint64_t>> basis;
    for (std::size_t c = 0; c < cols_; ++c) {
        std::vector<std::uint64_t> v = cols_data_[c];
        if (!reduce(v, basis))
            basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t Z2Matrix::rank() const { return column_space_basis().size(); }

std::vector<std::vector<std::uint64_t>> Z2Matrix::kernel_basis() const {
    // eliminate columns left to right, tracking the combination that produced
    // each working column; columns that vanish give kernel vectors
    std::vector<std::vector<std::uint64_t>> basis, combos;
    std::vector<std::vector<std::uint64_t>> kernel;
    const std::size_t cwords = word_count(cols_);
    for (std::size_t c = 0; c < cols_; ++c) {
        std::vector<std::uint64_t> v = cols_data_[c];
        std::vector<std::uint64_t> combo(cwords, 0);
        set_bit(combo, c);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            int lb = leading_bit(basis[i]);
            if (lb >= 0 && get_bit(v, static_cast<std::size_t>(lb))) {
                xor_into(v, basis[i]);
                xor_into(combo, combos[i]);
            }
        }
        if (leading_bit(v) < 0) {
            kernel.push_back(std::move(combo));
        } else {
            basis.push_back(std::move(v));
            combos.push_back(std::move(combo));
        }
    }
    return kernel;
}

Z2Matrix boundary_matrix(const SimplicialComplex& K, int i) {
    if (i < 0)
        throw std::invalid_argument("boundary_matrix: dimension must be non-negative");
    auto rows = K.simplices_of_dim(i - 1);
    auto cols = K.simplices_of_dim(i);
    Z2Matrix m(rows.size(), cols.size());
    if (i == 0)
        return m; // ∂_0 is the zero map
    std::unordered_map<Simplex, std::size_t, SimplexHash> row_ix;
    for (std::size_t r = 0; r < rows.size(); ++r)
        row_ix.emplace(rows[r], r);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const Simplex& f : cols[c].facets()) {
            auto it = row_ix.find(f);
            if (it == row_ix.end())
                throw std::invalid_argument("boundary_matrix: complex is not face-closed");
            m.set(it->second, c);
        }
    return m;
}

namespace {

std::vector<std::uint64_t> chain_bits(const Chain& c, const std::vector<Simplex>& index) {
    std::vector<std::uint64_t> v(word_count(index.size()), 0);
    for (const Simplex& s : c.simplices()) {
        auto it = std::lower_bound(index.begin(), index.end(), s);
        if (it == index.end() || *it != s)
            throw std::invalid_argument("chain simplex not in complex: " + s.to_string());
        set_bit(v, static_cast<std::size_t>(it - index.begin()));
    }
    return v;
}

} // namespace

bool homologous(const SimplicialComplex& K, const Chain& u, const Chain& v, int d) {
    if (!is_cycle(u) || !is_cycle(v))
        throw std::invalid_argument("homologous: both chains must be cycles");
    auto d_simplices = K.simplices_of_dim(d);
    auto diff = chain_add(u, v);
    if (diff.dim() >= 0 && diff.dim() != d)
        throw std::invalid_argument("homologous: chains have wrong dimension");
    auto z = chain_bits(diff, d_simplices);
    auto basis = boundary_matrix(K, d + 1).column_space_basis();
    return Z2Matrix::reduce(z, basis);
}

int homology_rank(const SimplicialComplex& K, int d) {
    if (d < 0)
        throw std::invalid_argument("homology_rank: dimension must be non-negative");
    const std::size_t n_d = K.count_of_dim(d);
    const std::size_t rank_d = (d == 0) ? 0 : boundary_matrix(K, d).rank();
    const std::size_t rank_d1 = boundary_matrix(K, d + 1).rank();
    return static_cast<int>(n_d - rank_d - rank_d1);
}

std::optional<Chain> representative_cycle(const SimplicialComplex& K, int d) {
    if (d < 0)
        throw std::invalid_argument("representative_cycle: dimension must be non-negative");
    auto d_simplices = K.simplices_of_dim(d);
    auto image = boundary_matrix(K, d + 1).column_space_basis();

    auto make_chain = [&](const std::vector<std::uint64_t>& bits) {
        std::vector<Simplex> elems;
        for (std::size_t i = 0; i < d_simplices.size(); ++i)
            if (get_bit(bits, i))
                elems.push_back(d_simplices[i]);
        return Chain(d, std::move(elems));
    };

    if (d == 0) {
        // every vertex is a 0-cycle; the first one outside im ∂_1 represents H_0
        for (std::size_t i = 0; i < d_simplices.size(); ++i) {
            std::vector<std::uint64_t> e(word_count(d_simplices.size()), 0);
            set_bit(e, i);
            if (!Z2Matrix::reduce(e, image)) {
                std::vector<std::uint64_t> orig(word_count(d_simplices.size()), 0);
                set_bit(orig, i);
                return make_chain(orig);
            }
        }
        return std::nullopt;
    }

    for (const auto& kvec : boundary_matrix(K, d).kernel_basis()) {
        std::vector<std::uint64_t> probe = kvec;
        if (!Z2Matrix::reduce(probe, image))
            return make_chain(kvec);
    }
    return std::nullopt;
}

BruteForceResult brute_force_min(const SimplicialComplex& K, const Chain& v, int d,
                                 int max_dplus1) {
    if (!is_cycle(v))
        throw std::invalid_argument("brute_force_min: input chain is not a cycle");
    if (v.dim() >= 0 && v.dim() != d)
        throw std::invalid_argument("brute_force_min: cycle has wrong dimension");
    auto d_simplices = K.simplices_of_dim(d);
    auto d1_simplices = K.simplices_of_dim(d + 1);
    const std::size_t n1 = d1_simplices.size();
    if (static_cast<int>(n1) > max_dplus1)
        throw std::length_error("brute_force_min: too many (d+1)-simplices to enumerate");

    // face indices and weights of the d-simplices
    std::vector<std::vector<std::size_t>> faces(n1);
    std::vector<double> w(d_simplices.size());
    for (std::size_t i = 0; i < d_simplices.size(); ++i)
        w[i] = K.weight(d_simplices[i]);
    for (std::size_t c = 0; c < n1; ++c)
        for (const Simplex& f : d1_simplices[c].facets()) {
            auto it = std::lower_bound(d_simplices.begin(), d_simplices.end(), f);
            if (it == d_simplices.end() || *it != f)
                throw std::invalid_argument("brute_force_min: complex is not face-closed");
            faces[c].push_back(static_cast<std::size_t>(it - d_simplices.begin()));
        }

    std::vector<char> in_u(d_simplices.size(), 0);
    double running = 0.0;
    for (const Simplex& s : v.simplices()) {
        auto it = std::lower_bound(d_simplices.begin(), d_simplices.end(), s);
        if (it == d_simplices.end() || *it != s)
            throw std::invalid_argument("brute_force_min: cycle not supported on complex");
        std::size_t i = static_cast<std::size_t>(it - d_simplices.begin());
        in_u[i] = 1;
        running += w[i];
    }

    std::uint64_t best_w_mask = 0, w_mask = 0;
    double best = running;
    // Gray-code walk over all subsets W: step i flips element ctz(i).
    // The tracked cost is refreshed exactly for the winner at the end.
    const std::uint64_t total = std::uint64_t{1} << n1;
    for (std::uint64_t step = 1; step < total; ++step) {
        const int flip = std::countr_zero(step);
        w_mask ^= std::uint64_t{1} << flip;
        for (std::size_t f : faces[static_cast<std::size_t>(flip)]) {
            if (in_u[f]) {
                running -= w[f];
                in_u[f] = 0;
            } else {
                running += w[f];
                in_u[f] = 1;
            }
        }
        if (running < best) {
            best = running;
            best_w_mask = w_mask;
        }
    }

    BruteForceResult out;
    std::vector<Simplex> w_elems;
    for (std::size_t c = 0; c < n1; ++c)
        if ((best_w_mask >> c) & 1u)
            w_elems.push_back(d1_simplices[c]);
    out.chain = Chain(d + 1, std::move(w_elems));
    out.cycle = chain_add(v, boundary(out.chain));
    out.cost = cost(K, out.cycle); // exact recomputation in canonical order
    return out;
}

} // namespace hl
