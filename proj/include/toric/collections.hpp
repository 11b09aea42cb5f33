/**
 * Line bundle collections built from a quiver and the divisor class group,
 * and the strongly-exceptional test over their pairwise Ext groups.
 */

#ifndef TORIC_COLLECTIONS_HPP
#define TORIC_COLLECTIONS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric/cohomology.hpp"
#include "toric/fan.hpp"
#include "toric/picard.hpp"

namespace toric {

class QuiverError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct QuiverVertex
{
    std::string id;
    std::optional<long long> weight;
};

/// Arrow a : tail -> head, identified with the prime divisor E_ray.
struct QuiverArrow
{
    std::string id;
    std::size_t tail = 0;
    std::size_t head = 0;
    std::size_t ray = 0;
};

/**
 * A connected quiver whose arrows are in bijection with the rays of a fan.
 * The constructor checks both properties; `num_rays` is the fan's ray count.
 */
class Quiver
{
  public:
    Quiver(std::vector<QuiverVertex> vertices, std::vector<QuiverArrow> arrows, std::size_t num_rays,
           std::size_t base_vertex = 0);

    const std::vector<QuiverVertex>& vertices() const { return vertices_; }
    const std::vector<QuiverArrow>& arrows() const { return arrows_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_arrows() const { return arrows_.size(); }
    /// Vertex whose universal class is normalised to zero.
    std::size_t base_vertex() const { return base_; }

    std::optional<std::size_t> vertex_index(const std::string& id) const;

  private:
    std::vector<QuiverVertex> vertices_;
    std::vector<QuiverArrow> arrows_;
    std::size_t base_;
};

struct BundleClass
{
    DivisorClass cls;
    /// How the class was produced, e.g. "vertex e", "R={1,2} P=(1,1)", "m=(0,1/2)".
    std::string provenance;
};

/**
 * Class of L_v for every vertex v (indexed like q.vertices()).
 *
 * class(base) = 0 and class(h(a)) = class(t(a)) + [E_a]. Classes are
 * propagated along a breadth-first spanning tree that scans arrows in
 * `arrow_order` (default: input order); every remaining arrow is then
 * checked. Throws QuiverError("inconsistent quiver/ray dictionary") if one
 * fails.
 */
std::vector<BundleClass> universal_classes(const Quiver& q, const PicardGroup& pic,
                                           std::span<const std::size_t> arrow_order = {});

struct BuchsbaumRimResult
{
    /// Universal classes first, then new classes in enumeration order.
    std::vector<BundleClass> classes;
    /// Number of (R, P) pairs enumerated before deduplication.
    std::size_t raw_pairs = 0;
};

/**
 * For R : Q_1 -> {0,1} and P : Q_0 -> {1,2,...} with sum(P) + 1 = |R| and
 * |Q_0| + 1 <= |R| <= |Q_1|, the class sum_{R(a)=1} L_{h(a)} - sum_v P(v) L_v,
 * united with the universal classes and deduplicated.
 */
BuchsbaumRimResult buchsbaum_rim_classes(const Quiver& q, const PicardGroup& pic);

struct BondalResult
{
    std::vector<BundleClass> classes;
    /// The largest denominator contributed no new class.
    bool stabilized = false;
};

/**
 * Classes of sum_i floor(<e_i, m>) E_i for m on the grid {0, 1/l, ..., (l-1)/l}^n,
 * for each denominator l.
 */
BondalResult bondal_classes(const Fan& fan, const PicardGroup& pic, std::span<const unsigned> denominators);

/**
 * entry(p, q) = h^0..h^n of class(q) - class(p), i.e. dim Ext^k(L_p, L_q).
 */
class ExtTable
{
  public:
    ExtTable() = default;
    ExtTable(std::vector<DivisorClass> classes, std::vector<std::vector<std::uint64_t>> entries);

    std::size_t size() const { return classes_.size(); }
    const std::vector<DivisorClass>& classes() const { return classes_; }
    const std::vector<std::uint64_t>& at(std::size_t p, std::size_t q) const { return entries_.at(p * size() + q); }

    /// Sub-table on the listed indices (in the given order).
    ExtTable restrict(std::span<const std::size_t> subset) const;

  private:
    std::vector<DivisorClass> classes_;
    std::vector<std::vector<std::uint64_t>> entries_;
};

/// Differences are computed once each; `threads` = 0 uses all hardware threads.
ExtTable ext_table(const CohomologyEngine& engine, const PicardGroup& pic, std::span<const DivisorClass> classes,
                   unsigned threads = 1);

struct ExtWitness
{
    std::size_t p = 0;
    std::size_t q = 0;
    std::size_t degree = 0;
};

struct ExceptionalVerdict
{
    bool ok = false;
    std::optional<ExtWitness> witness;
    /// Informational: Hom(L_p, L_q) = 0 for p after q in some total order.
    bool has_admissible_order = false;
    std::vector<std::size_t> order;
};

/// ok iff every ordered pair (p = q included) has no higher Ext.
ExceptionalVerdict is_strongly_exceptional(const ExtTable& table);

std::vector<DivisorClass> class_list(std::span<const BundleClass> bundles);

} // namespace toric

#endif
