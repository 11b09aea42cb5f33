/**
 * Total cohomology H^p(X, O(D)) as a sum over weight spaces.
 */

#ifndef TORIC_WEIGHTS_HPP
#define TORIC_WEIGHTS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "toric/cohomology.hpp"
#include "toric/fan.hpp"
#include "toric/strata.hpp"

namespace toric {

class BoxVerificationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Integer box [lower, upper] in M.
struct WeightBox
{
    Weight lower;
    Weight upper;

    std::uint64_t num_points() const;
    bool contains(const Weight& m) const;
    bool on_boundary(const Weight& m) const;
    /// Half-widths doubled around the (rounded-down) centre.
    WeightBox doubled() const;
    friend bool operator==(const WeightBox&, const WeightBox&) = default;
};

/// Weights sharing one facet set.
struct WeightClass
{
    FacetSet facets;
    std::uint64_t count = 0;
    BettiVector betti;
    std::vector<std::size_t> h;
};

struct CohomologyTable
{
    /// h^0 .. h^n
    std::vector<std::uint64_t> totals;
    /// Weights with nonzero cohomology, lexicographic by m.
    std::vector<WeightCohomology> weights;
    /// Every facet set met in the box, ordered by facet set; filled on request.
    std::vector<WeightClass> classes;
    WeightBox box;
};

struct ScanOptions
{
    Route route = Route::nerve;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 1;
    bool keep_weights = true;
    bool classify = false;
};

/**
 * Box around all arrangement vertices of D with margin 1, verified so that
 * every boundary weight has vanishing cohomology. On failure the box is
 * doubled (at most three times) before BoxVerificationError is thrown.
 */
WeightBox weight_box(const CohomologyEngine& engine, const TorusDivisor& d);
WeightBox weight_box(const Fan& fan, const TorusDivisor& d);

/// Throws FanError for non-Cartier D; BoxVerificationError when no box verifies.
CohomologyTable total_cohomology(const CohomologyEngine& engine, const TorusDivisor& d,
                                 const ScanOptions& opts = {});
CohomologyTable total_cohomology(const Fan& fan, const TorusDivisor& d);

/// Scan of an explicit box; no verification, no Cartier check.
CohomologyTable total_cohomology_in_box(const CohomologyEngine& engine, const TorusDivisor& d,
                                        const WeightBox& box, const ScanOptions& opts = {});

std::vector<WeightClass> classify_weights(const CohomologyEngine& engine, const TorusDivisor& d);
std::vector<WeightClass> classify_weights(const Fan& fan, const TorusDivisor& d);

} // namespace toric

#endif
