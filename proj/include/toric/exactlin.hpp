/**
 * Exact integer and rational linear algebra.
 *
 * Everything in this header works over arbitrary-precision integers
 * (boost::multiprecision::cpp_int). Matrices are small, dense and row-major;
 * the operations favour exactness and reproducibility over speed.
 */

#ifndef TORIC_EXACTLIN_HPP
#define TORIC_EXACTLIN_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace toric {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/**
 * Dense integer matrix with row-major storage.
 */
class IntMatrix
{
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols);
    /// Builds a matrix from nested row vectors; all rows must have equal length.
    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transpose() const;
    IntVector row(std::size_t i) const;
    IntVector col(std::size_t j) const;
    /// Submatrix made of the listed rows (in the given order).
    IntMatrix select_rows(std::span<const std::size_t> which) const;

    IntVector apply(const IntVector& x) const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

    std::string to_string() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/**
 * Smith normal form A = U * D * V.
 *
 * D has the shape of A, its nonzero entries sit on the leading diagonal,
 * are positive and satisfy d_1 | d_2 | ... . U (rows x rows) and V
 * (cols x cols) are unimodular; their inverses are carried along because
 * both the cokernel projection and the integral solver need them.
 */
struct SNFResult
{
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    IntMatrix U_inv;
    IntMatrix V_inv;

    std::size_t rank() const;
    /// The nonzero diagonal entries d_1 | d_2 | ... .
    IntVector invariants() const;
};

SNFResult snf(const IntMatrix& a);

/// Rank over the rationals by fraction-free elimination.
std::size_t rank_q(const IntMatrix& a);

/// Exact determinant of a square matrix (Bareiss).
Integer determinant(const IntMatrix& a);

/**
 * Some integral x with A x = b, or nullopt when none exists.
 *
 * Rank-deficient systems are handled; free coordinates are set to zero in
 * the Smith basis. When the rational solution is unique it is returned
 * exactly, provided it is integral.
 */
std::optional<IntVector> solve_integral(const IntMatrix& a, const IntVector& b);

/// Unique rational solution of a square nonsingular system, else nullopt.
std::optional<RatVector> solve_rational(const IntMatrix& a, const RatVector& b);

/**
 * Presentation of Z^rows / column-span(A).
 *
 * The quotient is Z^free_rank (+) torsion; normal-form coordinates list the
 * torsion residues first (each reduced into [0, t)), then the free part.
 */
class CokernelPresentation
{
  public:
    explicit CokernelPresentation(const IntMatrix& a);

    std::size_t ambient_rank() const { return ambient_; }
    std::size_t free_rank() const { return free_rank_; }
    const IntVector& torsion() const { return torsion_; }

    /// Normal form of v; equal iff the two vectors differ by A * w.
    IntVector project(const IntVector& v) const;

  private:
    std::size_t ambient_ = 0;
    std::size_t free_rank_ = 0;
    std::size_t rank_ = 0;
    IntVector torsion_;
    // Indices of Smith invariants > 1, in order.
    std::vector<std::size_t> torsion_rows_;
    IntMatrix u_inv_;
};

CokernelPresentation cokernel_map(const IntMatrix& a);

/// Floor division for Integers (rounds toward -infinity).
Integer floor_div(const Integer& a, const Integer& b);
/// Nonnegative remainder in [0, |b|).
Integer mod_floor(const Integer& a, const Integer& b);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Narrowing to long long; throws std::overflow_error when out of range.
long long to_ll(const Integer& v);

} // namespace toric

#endif
