/**
 * Weight-space cohomology of torus-invariant line bundles.
 *
 * For a weight m the facet set J = { i : <m, e_i> < -d_i } determines
 * Z(m, D). Since P_X is contractible,
 *
 *     h^0(m) = [J empty],   h^p(m) = b~_{p-1}(Z)  for 1 <= p <= n,
 *
 * and Z is computed from the nerve of its facet cover. Two independent
 * routes reproduce the same numbers: the barycentric subdivision of Z, and
 * the M-graded Cech complex of the affine cover of X by maximal cones.
 */

#ifndef TORIC_COHOMOLOGY_HPP
#define TORIC_COHOMOLOGY_HPP

#include <cstddef>
#include <memory>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "toric/fan.hpp"
#include "toric/simplicial_complex.hpp"
#include "toric/strata.hpp"

namespace toric {

/// Reduced Betti numbers over Q. values[p] = b~_p; absent entries are zero.
struct BettiVector
{
    std::vector<std::size_t> values;
    bool empty = false;

    std::size_t at(std::size_t p) const { return p < values.size() ? values[p] : 0; }
    bool acyclic() const;
    friend bool operator==(const BettiVector&, const BettiVector&) = default;
};

BettiVector reduced_betti(const SimplicialComplex& c);

struct WeightCohomology
{
    Weight m;
    FacetSet facets;
    /// h^0 .. h^n
    std::vector<std::size_t> h;

    bool vanishes() const;
};

/// Which construction a weight's cohomology is computed from.
enum class Route
{
    nerve,
    order,
    cech,
};

const char* route_name(Route r);

/**
 * Per-fan context for weight computations.
 *
 * Betti numbers depend on the weight only through a ray subset, so each
 * route keeps a memo table keyed by that subset. Tables are guarded by a
 * shared mutex; lookups from concurrent weight scans are safe. Returned
 * references stay valid for the engine's lifetime.
 */
class CohomologyEngine
{
  public:
    /// Throws FanError unless the fan is complete and simplicial.
    explicit CohomologyEngine(Fan fan);
    ~CohomologyEngine();

    CohomologyEngine(const CohomologyEngine&) = delete;
    CohomologyEngine& operator=(const CohomologyEngine&) = delete;

    const Fan& fan() const { return fan_; }
    const FacetComplex& facets() const { return complex_; }
    std::size_t dim() const { return fan_.dim(); }

    FacetSet facet_set(const TorusDivisor& d, std::span<const long long> m) const;

    const BettiVector& nerve_betti(const FacetSet& j) const;
    const BettiVector& order_betti(const FacetSet& j) const;

    /// h^0..h^n from J via the nerve (route nerve) or the order complex (route order).
    const std::vector<std::size_t>& h_from_facets(const FacetSet& j, Route route = Route::nerve) const;

    /**
     * Cech cohomology h^0..h^{k-1} (k = number of maximal cones) of the
     * weight-m piece. `satisfied` holds the rays e with <m, e> >= -d_e; a
     * Cech term over cones i_0 < ... < i_p is nonzero iff all of their
     * common rays are satisfied.
     */
    const std::vector<std::size_t>& cech_all_degrees(const RaySet& satisfied) const;
    RaySet satisfied_rays(const TorusDivisor& d, std::span<const long long> m) const;

    WeightCohomology weight_cohomology(const TorusDivisor& d, const Weight& m, Route route = Route::nerve) const;

  private:
    struct CechLayout;

    Fan fan_;
    FacetComplex complex_;
    std::unique_ptr<CechLayout> cech_;

    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<FacetSet, BettiVector> nerve_cache_;
    mutable std::unordered_map<FacetSet, BettiVector> order_cache_;
    mutable std::unordered_map<FacetSet, std::vector<std::size_t>> h_nerve_cache_;
    mutable std::unordered_map<FacetSet, std::vector<std::size_t>> h_order_cache_;
    mutable std::unordered_map<RaySet, std::vector<std::size_t>> cech_cache_;
};

/// Throws FanError if D is not Cartier on the fan.
void require_cartier(const Fan& fan, const TorusDivisor& d);

WeightCohomology weight_cohomology(const Fan& fan, const TorusDivisor& d, const Weight& m);
WeightCohomology cech_weight_cohomology(const Fan& fan, const TorusDivisor& d, const Weight& m);
/// Same as weight_cohomology but Z is taken from its barycentric subdivision.
WeightCohomology order_weight_cohomology(const Fan& fan, const TorusDivisor& d, const Weight& m);

} // namespace toric

#endif
