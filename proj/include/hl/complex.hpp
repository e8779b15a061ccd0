#pragma once

#include "hl/simplex.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace hl {

// A Z2 chain: a set of simplices of one dimension. The default-constructed
// chain is the empty chain of dimension -1, which acts as the identity for
// chain_add regardless of the other operand's dimension.
class Chain {
public:
    Chain() = default;
    explicit Chain(int dim);
    Chain(int dim, std::vector<Simplex> simplices);

    int dim() const { return dim_; }
    bool empty() const { return elems_.empty(); }
    std::size_t size() const { return elems_.size(); }
    const std::vector<Simplex>& simplices() const { return elems_; }
    bool contains(const Simplex& s) const;

    bool operator==(const Chain&) const = default;

private:
    friend Chain chain_add(const Chain&, const Chain&);
    friend Chain boundary(const Chain&);
    int dim_ = -1;
    std::vector<Simplex> elems_; // sorted, unique, all of dimension dim_
};

// A finite simplicial complex with non-negative weights on every simplex.
// Simplices are kept in canonical (lexicographic) order.
class SimplicialComplex {
public:
    using Map = std::map<Simplex, double>;

    SimplicialComplex() = default;

    // insert or overwrite; rejects empty simplices and negative/non-finite weights
    void insert(const Simplex& s, double weight);

    bool contains(const Simplex& s) const;
    double weight(const Simplex& s) const; // throws if absent
    std::size_t size() const { return weights_.size(); }
    bool empty() const { return weights_.empty(); }
    int dim() const;        // max simplex dimension, -1 if empty
    int max_vertex() const; // -1 if empty

    std::vector<Simplex> simplices_of_dim(int d) const;
    std::size_t count_of_dim(int d) const;
    const Map& simplices() const { return weights_; }

    // every facet of every simplex is present
    bool is_face_closed(std::string* violation = nullptr) const;

private:
    Map weights_;
};

// symmetric difference; dimensions must agree (the dim -1 empty chain is neutral)
Chain chain_add(const Chain& u, const Chain& v);

// Z2 boundary; boundary of a 0-chain is the empty chain of dim -1
Chain boundary(const Chain& c);

bool is_cycle(const Chain& c);

// sum of weights of the chain's simplices, accumulated in canonical order
double cost(const SimplicialComplex& K, const Chain& c);

// all nonempty faces of the given simplices, as a unit-weight complex
SimplicialComplex closure(const std::vector<Simplex>& simplices);

struct Suspension {
    SimplicialComplex complex;
    int v_plus;
    int v_minus;
};

// S(K): two fresh cone points over K, unit weights
Suspension suspension(const SimplicialComplex& K);

// image of a cycle under the suspension: each σ becomes σ∪{v+} and σ∪{v−}
Chain suspend_cycle(const Chain& v, int v_plus, int v_minus);

} // namespace hl
