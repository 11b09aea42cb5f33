/**
 * Face combinatorics of the polytope P_X, carried entirely by the fan.
 *
 * Facets F_i of P_X correspond to rays. A set S of facets has nonempty
 * common intersection iff S is contained in a single cone, so the
 * "common-cone complex" K (generated by the maximal cones' ray sets) is the
 * nerve of the full facet cover. Z(m, D) is recorded only by the set J of
 * facets it is made of.
 */

#ifndef TORIC_STRATA_HPP
#define TORIC_STRATA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "toric/fan.hpp"
#include "toric/simplicial_complex.hpp"

namespace toric {

/**
 * Subset of {0, ..., universe-1}, stored as a bitset.
 *
 * Sets over up to 64 rays fit in the inline buffer, which keeps per-weight
 * facet sets allocation free.
 */
class RaySet
{
  public:
    RaySet() = default;
    explicit RaySet(std::size_t universe);
    static RaySet from_indices(std::size_t universe, std::span<const std::size_t> idx);
    static RaySet full(std::size_t universe);

    std::size_t universe() const { return universe_; }
    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

    bool empty() const;
    std::size_t count() const;
    std::vector<std::size_t> indices() const;

    bool is_subset_of(const RaySet& other) const;
    bool intersects(const RaySet& other) const;
    RaySet operator&(const RaySet& other) const;
    RaySet operator|(const RaySet& other) const;
    RaySet complement() const;

    std::size_t hash() const;
    /// "{1,2,5}" with the given index offset (1 gives the usual 1-based labels).
    std::string to_string(std::size_t offset = 0) const;

    friend bool operator==(const RaySet& a, const RaySet& b) = default;
    friend std::strong_ordering operator<=>(const RaySet& a, const RaySet& b);

  private:
    std::size_t universe_ = 0;
    boost::container::small_vector<std::uint64_t, 1> words_;
};

/// The facets making up Z(m, D): { i : <m, e_i> < -d_i }.
using FacetSet = RaySet;

struct RaySetHash
{
    std::size_t operator()(const RaySet& s) const { return s.hash(); }
};

/**
 * The complex K of ray sets contained in a single cone.
 */
class FacetComplex
{
  public:
    FacetComplex() = default;
    explicit FacetComplex(const Fan& fan);

    std::size_t num_rays() const { return num_rays_; }
    /// Ray sets of the maximal cones.
    const std::vector<RaySet>& maximal_faces() const { return maximal_; }
    /// Every nonempty face, ordered by size then lexicographically by index list.
    const std::vector<RaySet>& faces() const { return faces_; }

    bool contains(const RaySet& s) const;
    bool contains(std::span<const std::size_t> s) const;

  private:
    std::size_t num_rays_ = 0;
    std::vector<RaySet> maximal_;
    std::vector<RaySet> faces_;
};

FacetComplex facet_complex(const Fan& fan);

FacetSet facet_set(const Fan& fan, const TorusDivisor& d, std::span<const long long> m);

/// { S subset of J : S in K, S nonempty }, vertices labelled by ray index.
SimplicialComplex nerve(const FacetComplex& k, const FacetSet& j);

/**
 * Barycentric subdivision of Z as a subcomplex of the boundary of P_X.
 *
 * Vertices are positions in k.faces() of the faces S with S meeting J;
 * simplices are chains under strict inclusion.
 */
SimplicialComplex order_complex(const FacetComplex& k, const FacetSet& j);

} // namespace toric

template <>
struct std::hash<toric::RaySet>
{
    std::size_t operator()(const toric::RaySet& s) const { return s.hash(); }
};

#endif
