#pragma once

#include "hl/complex.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hl {

// Bit-packed matrix over GF(2), stored column-major (each column is a bit
// vector over the rows). Used for boundary matrices: rows are (i-1)-simplices,
// columns are i-simplices, both in canonical order.
class Z2Matrix {
public:
    Z2Matrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    void set(std::size_t r, std::size_t c);
    bool get(std::size_t r, std::size_t c) const;
    const std::vector<std::uint64_t>& column(std::size_t c) const { return cols_data_[c]; }

    // rank via greedy column elimination (columns processed in canonical order)
    std::size_t rank() const;

    // column-space basis in echelon form: vectors with distinct leading rows
    std::vector<std::vector<std::uint64_t>> column_space_basis() const;

    // basis of {x : Mx = 0}; each kernel vector is a bit vector over the columns
    std::vector<std::vector<std::uint64_t>> kernel_basis() const;

    static void xor_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src);
    static int leading_bit(const std::vector<std::uint64_t>& v); // -1 if zero
    // reduce v by an echelon basis; returns true iff v reduces to zero
    static bool reduce(std::vector<std::uint64_t>& v,
                       const std::vector<std::vector<std::uint64_t>>& basis);

private:
    std::size_t rows_, cols_;
    std::size_t words_;
    std::vector<std::vector<std::uint64_t>> cols_data_;
};

// boundary operator ∂_i of K as a Z2 matrix (rows: K_{i-1}, cols: K_i)
Z2Matrix boundary_matrix(const SimplicialComplex& K, int i);

// U ~ V iff U △ V is a boundary of a (d+1)-chain in K
bool homologous(const SimplicialComplex& K, const Chain& u, const Chain& v, int d);

// rank of H_d(K; Z2) = nullity(∂_d) − rank(∂_{d+1})
int homology_rank(const SimplicialComplex& K, int d);

// a d-cycle that is not a boundary, deterministic given K; nullopt if H_d = 0
std::optional<Chain> representative_cycle(const SimplicialComplex& K, int d);

struct BruteForceResult {
    double cost = 0.0;
    Chain cycle; // the optimal homologous cycle U
    Chain chain; // a (d+1)-chain W with U = V △ ∂W
};

// Exhaustive minimum over all W ⊆ K_{d+1}, enumerated in Gray-code order with
// incremental updates of V △ ∂W. Throws if |K_{d+1}| exceeds max_dplus1.
BruteForceResult brute_force_min(const SimplicialComplex& K, const Chain& v, int d,
                                 int max_dplus1 = 24);

} // namespace hl
