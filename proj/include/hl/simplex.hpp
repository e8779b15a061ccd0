#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace hl {

// An abstract simplex: a set of vertex ids kept strictly increasing.
// Dimension is |vertices| - 1; the empty simplex has dimension -1.
class Simplex {
public:
    Simplex() = default;
    explicit Simplex(std::vector<int> vertices);
    Simplex(std::initializer_list<int> vertices);

    int dim() const { return static_cast<int>(verts_.size()) - 1; }
    bool empty() const { return verts_.empty(); }
    std::size_t vertex_count() const { return verts_.size(); }
    const std::vector<int>& vertices() const { return verts_; }

    bool has_vertex(int v) const;
    // true iff `other` is a (not necessarily proper) face of this simplex
    bool has_face(const Simplex& other) const;

    Simplex with_vertex(int v) const;
    // the (dim-1)-faces, in canonical order
    std::vector<Simplex> facets() const;
    // all nonempty faces including the simplex itself, in canonical order
    std::vector<Simplex> faces() const;

    // canonical order: lexicographic on the vertex sequence
    auto operator<=>(const Simplex&) const = default;

    std::string to_string() const;

private:
    std::vector<int> verts_;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept;
};

std::ostream& operator<<(std::ostream& os, const Simplex& s);

} // namespace hl
