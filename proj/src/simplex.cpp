#include "hl/simplex.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hl {

Simplex::Simplex(std::vector<int> vertices) : verts_(std::move(vertices)) {
    std::sort(verts_.begin(), verts_.end());
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        if (verts_[i] < 0)
            throw std::invalid_argument("simplex vertex ids must be non-negative");
        if (i > 0 && verts_[i] == verts_[i - 1])
            throw std::invalid_argument("simplex vertices must be distinct");
    }
}

Simplex::Simplex(std::initializer_list<int> vertices)
    : Simplex(std::vector<int>(vertices)) {}

bool Simplex::has_vertex(int v) const {
    return std::binary_search(verts_.begin(), verts_.end(), v);
}

bool Simplex::has_face(const Simplex& other) const {
    return std::includes(verts_.begin(), verts_.end(),
                         other.verts_.begin(), other.verts_.end());
}

Simplex Simplex::with_vertex(int v) const {
    if (has_vertex(v))
        throw std::invalid_argument("vertex already present in simplex");
    std::vector<int> vs = verts_;
    vs.insert(std::upper_bound(vs.begin(), vs.end(), v), v);
    Simplex out;
    out.verts_ = std::move(vs); // already sorted and distinct
    return out;
}

std::vector<Simplex> Simplex::facets() const {
    std::vector<Simplex> out;
    if (verts_.empty())
        return out;
    out.reserve(verts_.size());
    // dropping verts_[i]: ascending i yields canonical (lexicographic) order
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        Simplex f;
        f.verts_.reserve(verts_.size() - 1);
        for (std::size_t j = 0; j < verts_.size(); ++j)
            if (j != i)
                f.verts_.push_back(verts_[j]);
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Simplex> Simplex::faces() const {
    const std::size_t k = verts_.size();
    if (k > 24)
        throw std::length_error("simplex too large for face enumeration");
    std::vector<Simplex> out;
    out.reserve((std::size_t{1} << k) - 1);
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        Simplex f;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::size_t{1} << i))
                f.verts_.push_back(verts_[i]);
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string Simplex::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        if (i)
            os << ',';
        os << verts_[i];
    }
    os << '}';
    return os.str();
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
    // FNV-1a over the vertex sequence
    std::size_t h = 1469598103934665603ull;
    for (int v : s.vertices()) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

std::ostream& operator<<(std::ostream& os, const Simplex& s) {
    return os << s.to_string();
}

} // namespace hl
