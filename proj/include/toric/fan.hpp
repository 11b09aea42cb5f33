/**
 * Complete fans, torus-invariant divisors and their support functions.
 *
 * Conventions: N = Z^n holds the rays, M = Z^n the weights, and the pairing
 * <m, e> is the ordinary dot product of a weight row with a ray column.
 */

#ifndef TORIC_FAN_HPP
#define TORIC_FAN_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric/exactlin.hpp"

namespace toric {

using LatticeVector = std::vector<long long>;
/// A character of the torus, i.e. a point of M.
using Weight = LatticeVector;

class FanError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/**
 * A fan given by primitive rays and its maximal cones (ray index sets).
 *
 * The constructor enforces the structural invariants: rays are nonzero,
 * primitive and pairwise distinct, cone indices are valid, every maximal
 * cone is full dimensional, and every ray lies in some maximal cone.
 * Completeness and properness of the cone intersections are the job of
 * validate().
 */
class Fan
{
  public:
    Fan(std::size_t dim, std::vector<LatticeVector> rays,
        std::vector<std::vector<std::size_t>> max_cones,
        std::optional<std::vector<std::size_t>> pic_basis = std::nullopt);

    std::size_t dim() const { return dim_; }
    std::size_t num_rays() const { return rays_.size(); }
    std::size_t num_cones() const { return cones_.size(); }

    const std::vector<LatticeVector>& rays() const { return rays_; }
    const LatticeVector& ray(std::size_t i) const { return rays_.at(i); }
    const std::vector<std::vector<std::size_t>>& max_cones() const { return cones_; }
    /// Sorted ray indices of maximal cone c.
    const std::vector<std::size_t>& cone(std::size_t c) const { return cones_.at(c); }

    /// Preferred rays generating Pic, if the input named them.
    const std::optional<std::vector<std::size_t>>& pic_basis_hint() const { return pic_hint_; }

    long long pairing(std::span<const long long> m, std::size_t ray) const;

    /// r x n matrix whose rows are the rays; as a map M -> Z^r it is m -> (<m, e_i>)_i.
    IntMatrix ray_matrix() const;
    /// Matrix whose rows are the rays with the listed indices.
    IntMatrix rows_of(std::span<const std::size_t> rays) const;

  private:
    std::size_t dim_;
    std::vector<LatticeVector> rays_;
    std::vector<std::vector<std::size_t>> cones_;
    std::optional<std::vector<std::size_t>> pic_hint_;
};

struct FanReport
{
    bool complete = false;
    bool simplicial = false;
    bool smooth = false;
    std::vector<std::string> notes;

    /// The fan is usable by the cohomology machinery.
    bool usable() const { return complete && simplicial; }
};

/**
 * Checks simpliciality, smoothness and completeness.
 *
 * Completeness is decided for simplicial fans only: every wall of a maximal
 * cone must be shared by exactly two maximal cones and the wall adjacency
 * graph must be connected. Non-simplicial fans are reported as not
 * complete. Throws FanError when two listed cones overlap improperly.
 */
FanReport validate(const Fan& fan);

/// Throws FanError unless validate() reports a complete simplicial fan.
void require_usable(const Fan& fan);

/// D = sum_i d_i E_i.
struct TorusDivisor
{
    std::vector<long long> coeffs;

    std::size_t size() const { return coeffs.size(); }
    long long operator[](std::size_t i) const { return coeffs[i]; }

    friend TorusDivisor operator+(const TorusDivisor& a, const TorusDivisor& b);
    friend TorusDivisor operator-(const TorusDivisor& a, const TorusDivisor& b);
    friend TorusDivisor operator-(const TorusDivisor& a);
    friend TorusDivisor operator*(long long k, const TorusDivisor& a);
    friend bool operator==(const TorusDivisor&, const TorusDivisor&) = default;
    friend auto operator<=>(const TorusDivisor&, const TorusDivisor&) = default;

    std::string to_string() const;
};

/// Per maximal cone sigma, the weight m_sigma with <m_sigma, e_i> = -d_i on the rays of sigma.
struct CartierData
{
    std::vector<Weight> m;
};

std::optional<CartierData> cartier_data(const Fan& fan, const TorusDivisor& d);

/**
 * psi_D(v) for a rational point v of N_R.
 *
 * Evaluated through every maximal cone containing v; throws
 * std::logic_error if two of them disagree (which would mean the data is
 * not a support function).
 */
Rational support_value(const CartierData& cd, const Fan& fan, const RatVector& v);

/// Strict convexity of psi_D across every wall. Throws FanError for non-Cartier D.
bool is_ample(const Fan& fan, const TorusDivisor& d);

/// K = -sum E_i.
TorusDivisor canonical_divisor(const Fan& fan);

/// div(chi^m) = sum <m, e_i> E_i.
TorusDivisor principal_divisor(const Fan& fan, std::span<const long long> m);

/**
 * Rational solutions of <m, e_i> = -d_i over all n-subsets of linearly
 * independent rays: the vertices of the hyperplane arrangement of D.
 */
std::vector<RatVector> arrangement_vertices(const Fan& fan, const TorusDivisor& d);

/// Lattice points of P_D = { m : <m, e_i> >= -d_i for all i }, lexicographically sorted.
std::vector<Weight> polytope_lattice_points(const Fan& fan, const TorusDivisor& d);

} // namespace toric

#endif
