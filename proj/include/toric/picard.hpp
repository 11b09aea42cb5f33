/**
 * Divisor classes: Pic(X) as the cokernel of M -> Z^rays, m -> (<m, e_i>)_i.
 */

#ifndef TORIC_PICARD_HPP
#define TORIC_PICARD_HPP

#include <compare>
#include <optional>
#include <vector>

#include "toric/exactlin.hpp"
#include "toric/fan.hpp"

namespace toric {

/**
 * A divisor class.
 *
 * Equality and ordering look at the normal form only; the representative
 * is whatever divisor the class was built from, canonicalized by the
 * PicardGroup that produced it.
 */
struct DivisorClass
{
    IntVector normal_form;
    TorusDivisor representative;

    friend bool operator==(const DivisorClass& a, const DivisorClass& b)
    {
        return a.normal_form == b.normal_form;
    }
    friend std::strong_ordering operator<=>(const DivisorClass& a, const DivisorClass& b);
};

class PicardGroup
{
  public:
    /**
     * The basis used for canonical representatives is the fan's pic_basis
     * hint when present, else the lexicographically first set of
     * rays-minus-dim rays whose complement is a Z-basis of N. Fans without
     * such a set (singular cases) keep representatives as given.
     */
    explicit PicardGroup(const Fan& fan);

    std::size_t free_rank() const { return coker_.free_rank(); }
    const IntVector& torsion() const { return coker_.torsion(); }
    std::size_t num_rays() const { return num_rays_; }

    /// Rays whose classes generate Pic (empty when no unimodular complement exists).
    const std::vector<std::size_t>& basis() const { return basis_; }

    DivisorClass classify(const TorusDivisor& d) const;
    /// D + div(chi^m) with zero coefficients off the basis rays.
    TorusDivisor canonical_representative(const TorusDivisor& d) const;
    /// Coefficients of the canonical representative on basis().
    std::vector<long long> basis_coordinates(const DivisorClass& c) const;
    DivisorClass from_basis_coordinates(const std::vector<long long>& coords) const;

    DivisorClass zero() const;
    DivisorClass ray_class(std::size_t i) const;
    DivisorClass add(const DivisorClass& a, const DivisorClass& b) const;
    DivisorClass subtract(const DivisorClass& a, const DivisorClass& b) const;
    DivisorClass scale(long long k, const DivisorClass& a) const;

  private:
    std::size_t num_rays_;
    std::vector<LatticeVector> rays_;
    CokernelPresentation coker_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> complement_;
    // Inverse of the complement's ray matrix (rows = complement rays).
    std::optional<IntMatrix> complement_inv_;
};

DivisorClass divisor_class(const Fan& fan, const TorusDivisor& d);

} // namespace toric

#endif
