#include "hl/complex.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hl {

Chain::Chain(int dim) : dim_(dim) {
    if (dim < 0)
        throw std::invalid_argument("chain dimension must be non-negative");
}

Chain::Chain(int dim, std::vector<Simplex> simplices)
    : dim_(dim), elems_(std::move(simplices)) {
    if (dim < 0)
        throw std::invalid_argument("chain dimension must be non-negative");
    std::sort(elems_.begin(), elems_.end());
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        if (elems_[i].dim() != dim_)
            throw std::invalid_argument("chain element has wrong dimension");
        if (i > 0 && elems_[i] == elems_[i - 1])
            throw std::invalid_argument("duplicate simplex in chain");
    }
}

bool Chain::contains(const Simplex& s) const {
    return std::binary_search(elems_.begin(), elems_.end(), s);
}

Chain chain_add(const Chain& u, const Chain& v) {
    if (u.dim_ >= 0 && v.dim_ >= 0 && u.dim_ != v.dim_)
        throw std::invalid_argument("chain_add: dimension mismatch");
    Chain out;
    out.dim_ = std::max(u.dim_, v.dim_);
    out.elems_.reserve(u.elems_.size() + v.elems_.size());
    std::set_symmetric_difference(u.elems_.begin(), u.elems_.end(),
                                  v.elems_.begin(), v.elems_.end(),
                                  std::back_inserter(out.elems_));
    if (out.elems_.empty() && out.dim_ < 0)
        out.dim_ = -1;
    return out;
}

Chain boundary(const Chain& c) {
    Chain out;
    if (c.dim_ <= 0)
        return out; // boundary of a 0-chain (or empty chain) is the dim -1 empty chain
    out.dim_ = c.dim_ - 1;
    std::vector<Simplex> all;
    all.reserve(c.elems_.size() * (c.dim_ + 1));
    for (const Simplex& s : c.elems_)
        for (Simplex& f : s.facets())
            all.push_back(std::move(f));
    std::sort(all.begin(), all.end());
    // keep faces with odd multiplicity
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        while (j < all.size() && all[j] == all[i])
            ++j;
        if ((j - i) % 2 == 1)
            out.elems_.push_back(all[i]);
        i = j;
    }
    return out;
}

bool is_cycle(const Chain& c) {
    return boundary(c).empty();
}

double cost(const SimplicialComplex& K, const Chain& c) {
    double total = 0.0;
    for (const Simplex& s : c.simplices())
        total += K.weight(s); // throws if the chain leaves the complex
    return total;
}

void SimplicialComplex::insert(const Simplex& s, double weight) {
    if (s.empty())
        throw std::invalid_argument("cannot insert the empty simplex");
    if (!(weight >= 0.0) || !std::isfinite(weight))
        throw std::invalid_argument("simplex weight must be finite and non-negative");
    weights_[s] = weight;
}

bool SimplicialComplex::contains(const Simplex& s) const {
    return weights_.count(s) != 0;
}

double SimplicialComplex::weight(const Simplex& s) const {
    auto it = weights_.find(s);
    if (it == weights_.end())
        throw std::out_of_range("simplex not in complex: " + s.to_string());
    return it->second;
}

int SimplicialComplex::dim() const {
    int d = -1;
    for (const auto& [s, w] : weights_)
        d = std::max(d, s.dim());
    return d;
}

int SimplicialComplex::max_vertex() const {
    int m = -1;
    for (const auto& [s, w] : weights_)
        if (!s.empty())
            m = std::max(m, s.vertices().back());
    return m;
}

std::vector<Simplex> SimplicialComplex::simplices_of_dim(int d) const {
    std::vector<Simplex> out;
    for (const auto& [s, w] : weights_)
        if (s.dim() == d)
            out.push_back(s);
    return out; // map order is canonical already
}

std::size_t SimplicialComplex::count_of_dim(int d) const {
    std::size_t n = 0;
    for (const auto& [s, w] : weights_)
        if (s.dim() == d)
            ++n;
    return n;
}

bool SimplicialComplex::is_face_closed(std::string* violation) const {
    for (const auto& [s, w] : weights_) {
        if (s.dim() == 0)
            continue;
        for (const Simplex& f : s.facets()) {
            if (!contains(f)) {
                if (violation)
                    *violation = "missing face " + f.to_string() + " of " + s.to_string();
                return false;
            }
        }
    }
    return true;
}

SimplicialComplex closure(const std::vector<Simplex>& simplices) {
    std::set<Simplex> acc;
    for (const Simplex& s : simplices) {
        if (s.empty())
            throw std::invalid_argument("closure of the empty simplex is undefined");
        for (Simplex& f : s.faces())
            acc.insert(std::move(f));
    }
    SimplicialComplex K;
    for (const Simplex& s : acc)
        K.insert(s, 1.0);
    return K;
}

Suspension suspension(const SimplicialComplex& K) {
    const int vp = K.max_vertex() + 1;
    const int vm = vp + 1;
    Suspension out;
    out.v_plus = vp;
    out.v_minus = vm;
    out.complex.insert(Simplex{vp}, 1.0);
    out.complex.insert(Simplex{vm}, 1.0);
    for (const auto& [s, w] : K.simplices()) {
        out.complex.insert(s, 1.0);
        out.complex.insert(s.with_vertex(vp), 1.0);
        out.complex.insert(s.with_vertex(vm), 1.0);
    }
    return out;
}

Chain suspend_cycle(const Chain& v, int v_plus, int v_minus) {
    if (!is_cycle(v))
        throw std::invalid_argument("suspend_cycle: input chain is not a cycle");
    if (v.dim() < 0)
        return Chain{};
    std::vector<Simplex> elems;
    elems.reserve(2 * v.size());
    for (const Simplex& s : v.simplices()) {
        elems.push_back(s.with_vertex(v_plus));
        elems.push_back(s.with_vertex(v_minus));
    }
    return Chain(v.dim() + 1, std::move(elems));
}

} // namespace hl
