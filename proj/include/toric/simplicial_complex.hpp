/**
 * Finite abstract simplicial complexes with explicitly listed simplices.
 */

#ifndef TORIC_SIMPLICIAL_COMPLEX_HPP
#define TORIC_SIMPLICIAL_COMPLEX_HPP

#include <cstddef>
#include <vector>

namespace toric {

/// Vertex labels in ascending order.
using Simplex = std::vector<int>;

/**
 * Simplices are stored per dimension and sorted lexicographically, so the
 * position of a simplex in simplices(k) is a stable basis index for the
 * k-th cochain group.
 */
class SimplicialComplex
{
  public:
    SimplicialComplex() = default;

    /// Complex generated by the given simplices (all faces are added).
    static SimplicialComplex generated_by(std::vector<Simplex> simplices);
    /// The input must already be closed under taking nonempty faces.
    static SimplicialComplex from_closed(std::vector<Simplex> simplices);

    bool empty() const { return by_dim_.empty(); }
    /// -1 for the empty complex.
    int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
    const std::vector<Simplex>& simplices(std::size_t k) const;
    std::size_t count(std::size_t k) const { return k < by_dim_.size() ? by_dim_[k].size() : 0; }
    std::size_t size() const;
    std::vector<int> vertices() const;

    bool contains(const Simplex& s) const;
    bool is_subcomplex_of(const SimplicialComplex& other) const;
    /// Position of s within simplices(s.size() - 1); throws if absent.
    std::size_t index_of(const Simplex& s) const;

    long long euler_characteristic() const;

    friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

  private:
    std::vector<std::vector<Simplex>> by_dim_;
};

} // namespace toric

#endif
