#include "toric/exactlin.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace toric {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols)
{
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows)
    {
        if (r.size() != cols_)
            throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long long v : r)
            data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::zero(std::size_t rows, std::size_t cols)
{
    return IntMatrix(rows, cols);
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols)
{
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        if (rows[i].size() != cols)
            throw std::invalid_argument("IntMatrix::from_rows: row " + std::to_string(i) +
                                        " has wrong length");
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntVector IntMatrix::row(std::size_t i) const
{
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t j) const
{
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        c[i] = (*this)(i, j);
    return c;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> which) const
{
    IntMatrix m(which.size(), cols_);
    for (std::size_t k = 0; k < which.size(); ++k)
        for (std::size_t j = 0; j < cols_; ++j)
            m(k, j) = (*this)(which[k], j);
    return m;
}

IntVector IntMatrix::apply(const IntVector& x) const
{
    if (x.size() != cols_)
        throw std::invalid_argument("IntMatrix::apply: dimension mismatch");
    IntVector y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!x[j].is_zero())
                y[i] += (*this)(i, j) * x[j];
    return y;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("IntMatrix product: dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
        {
            const Integer& aik = a(i, k);
            if (aik.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

std::string IntMatrix::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i)
    {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? ", " : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

Integer floor_div(const Integer& a, const Integer& b)
{
    if (b.is_zero())
        throw std::domain_error("floor_div: division by zero");
    Integer q = a / b; // truncates toward zero
    Integer r = a - q * b;
    if (!r.is_zero() && ((r < 0) != (b < 0)))
        --q;
    return q;
}

Integer mod_floor(const Integer& a, const Integer& b)
{
    Integer m = abs(b);
    Integer r = a % m;
    if (r < 0)
        r += m;
    return r;
}

Integer floor(const Rational& q)
{
    return floor_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

Integer ceil(const Rational& q)
{
    return -floor(Rational(-q));
}

long long to_ll(const Integer& v)
{
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error("integer does not fit in 64 bits: " + v.str());
    return v.convert_to<long long>();
}

namespace {

// Tracks A = U * D * V while elementary operations are applied to D.
struct SmithState
{
    IntMatrix D, U, U_inv, V, V_inv;

    explicit SmithState(const IntMatrix& a)
        : D(a), U(IntMatrix::identity(a.rows())), U_inv(IntMatrix::identity(a.rows())),
          V(IntMatrix::identity(a.cols())), V_inv(IntMatrix::identity(a.cols()))
    {
    }

    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t k = 0; k < D.cols(); ++k)
            std::swap(D(i, k), D(j, k));
        for (std::size_t k = 0; k < U.rows(); ++k)
            std::swap(U(k, i), U(k, j));
        for (std::size_t k = 0; k < U_inv.cols(); ++k)
            std::swap(U_inv(i, k), U_inv(j, k));
    }

    // row_i += k * row_j
    void add_row(std::size_t i, std::size_t j, const Integer& k)
    {
        if (k.is_zero())
            return;
        for (std::size_t c = 0; c < D.cols(); ++c)
            D(i, c) += k * D(j, c);
        for (std::size_t r = 0; r < U.rows(); ++r)
            U(r, j) -= k * U(r, i);
        for (std::size_t c = 0; c < U_inv.cols(); ++c)
            U_inv(i, c) += k * U_inv(j, c);
    }

    void negate_row(std::size_t i)
    {
        for (std::size_t c = 0; c < D.cols(); ++c)
            D(i, c) = -D(i, c);
        for (std::size_t r = 0; r < U.rows(); ++r)
            U(r, i) = -U(r, i);
        for (std::size_t c = 0; c < U_inv.cols(); ++c)
            U_inv(i, c) = -U_inv(i, c);
    }

    void swap_cols(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t r = 0; r < D.rows(); ++r)
            std::swap(D(r, i), D(r, j));
        for (std::size_t c = 0; c < V.cols(); ++c)
            std::swap(V(i, c), V(j, c));
        for (std::size_t r = 0; r < V_inv.rows(); ++r)
            std::swap(V_inv(r, i), V_inv(r, j));
    }

    // col_i += k * col_j
    void add_col(std::size_t i, std::size_t j, const Integer& k)
    {
        if (k.is_zero())
            return;
        for (std::size_t r = 0; r < D.rows(); ++r)
            D(r, i) += k * D(r, j);
        for (std::size_t c = 0; c < V.cols(); ++c)
            V(j, c) -= k * V(i, c);
        for (std::size_t r = 0; r < V_inv.rows(); ++r)
            V_inv(r, i) += k * V_inv(r, j);
    }
};

// Minimal nonzero |entry| in the trailing block, first in row-major order.
bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj)
{
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j)
        {
            const Integer& v = d(i, j);
            if (v.is_zero())
                continue;
            Integer a = abs(v);
            if (!found || a < best)
            {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

} // namespace

std::size_t SNFResult::rank() const
{
    std::size_t r = 0;
    std::size_t n = std::min(D.rows(), D.cols());
    while (r < n && !D(r, r).is_zero())
        ++r;
    return r;
}

IntVector SNFResult::invariants() const
{
    IntVector out;
    for (std::size_t i = 0; i < rank(); ++i)
        out.push_back(D(i, i));
    return out;
}

SNFResult snf(const IntMatrix& a)
{
    SmithState s(a);
    const std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t t = 0; t < n; ++t)
    {
        std::size_t pi = 0, pj = 0;
        if (!find_pivot(s.D, t, pi, pj))
            break;
        for (;;)
        {
            s.swap_rows(t, pi);
            s.swap_cols(t, pj);
            bool cleared = true;
            for (std::size_t i = t + 1; i < s.D.rows(); ++i)
            {
                if (s.D(i, t).is_zero())
                    continue;
                s.add_row(i, t, -floor_div(s.D(i, t), s.D(t, t)));
                if (!s.D(i, t).is_zero())
                    cleared = false;
            }
            for (std::size_t j = t + 1; j < s.D.cols(); ++j)
            {
                if (s.D(t, j).is_zero())
                    continue;
                s.add_col(j, t, -floor_div(s.D(t, j), s.D(t, t)));
                if (!s.D(t, j).is_zero())
                    cleared = false;
            }
            if (!cleared)
            {
                find_pivot(s.D, t, pi, pj);
                continue;
            }
            // Row and column t are clear; enforce d_t | every trailing entry.
            bool divides = true;
            for (std::size_t i = t + 1; i < s.D.rows() && divides; ++i)
                for (std::size_t j = t + 1; j < s.D.cols(); ++j)
                    if (Integer(s.D(i, j) % s.D(t, t)) != 0)
                    {
                        s.add_row(t, i, Integer(1));
                        divides = false;
                        break;
                    }
            if (divides)
                break;
            pi = t;
            pj = t;
            find_pivot(s.D, t, pi, pj);
        }
        if (s.D(t, t) < 0)
            s.negate_row(t);
    }
    return SNFResult{std::move(s.U), std::move(s.D), std::move(s.V), std::move(s.U_inv),
                     std::move(s.V_inv)};
}

std::size_t rank_q(const IntMatrix& a)
{
    // Integer row reduction: the pivot row is scaled into each target row by
    // the lcm of the two leading entries, then the row content is divided out.
    std::vector<IntVector> rows;
    rows.reserve(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        IntVector r = a.row(i);
        if (std::any_of(r.begin(), r.end(), [](const Integer& v) { return !v.is_zero(); }))
            rows.push_back(std::move(r));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < rows.size(); ++col)
    {
        std::size_t piv = rows.size();
        Integer best;
        for (std::size_t i = rank; i < rows.size(); ++i)
        {
            const Integer& v = rows[i][col];
            if (v.is_zero())
                continue;
            Integer av = abs(v);
            if (piv == rows.size() || av < best)
            {
                piv = i;
                best = av;
            }
        }
        if (piv == rows.size())
            continue;
        std::swap(rows[rank], rows[piv]);
        const IntVector& prow = rows[rank];
        const Integer p = prow[col];
        for (std::size_t i = rank + 1; i < rows.size(); ++i)
        {
            IntVector& r = rows[i];
            if (r[col].is_zero())
                continue;
            Integer g = gcd(p, r[col]);
            Integer pm = p / g;
            Integer am = r[col] / g;
            Integer content = 0;
            for (std::size_t j = col; j < a.cols(); ++j)
            {
                if (pm != 1)
                    r[j] *= pm;
                if (!prow[j].is_zero())
                    r[j] -= am * prow[j];
                if (!r[j].is_zero())
                    content = content.is_zero() ? Integer(abs(r[j])) : Integer(gcd(content, r[j]));
            }
            if (content > 1)
                for (std::size_t j = col; j < a.cols(); ++j)
                    r[j] /= content;
        }
        ++rank;
    }
    return rank;
}

Integer determinant(const IntMatrix& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("determinant: matrix is not square");
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    IntMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
        if (m(k, k).is_zero())
        {
            std::size_t i = k + 1;
            while (i < n && m(i, k).is_zero())
                ++i;
            if (i == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(k, j), m(i, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
        {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::optional<IntVector> solve_integral(const IntMatrix& a, const IntVector& b)
{
    if (b.size() != a.rows())
        throw std::invalid_argument("solve_integral: right-hand side has wrong length");
    SNFResult s = snf(a);
    IntVector c = s.U_inv.apply(b);
    const std::size_t r = s.rank();
    IntVector y(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        if (i < r)
        {
            if (Integer(c[i] % s.D(i, i)) != 0)
                return std::nullopt;
            y[i] = c[i] / s.D(i, i);
        }
        else if (!c[i].is_zero())
        {
            return std::nullopt;
        }
    }
    return s.V_inv.apply(y);
}

std::optional<RatVector> solve_rational(const IntMatrix& a, const RatVector& b)
{
    if (a.rows() != a.cols() || b.size() != a.rows())
        throw std::invalid_argument("solve_rational: expects a square system");
    const std::size_t n = a.rows();
    std::vector<RatVector> m(n, RatVector(n + 1));
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = Rational(a(i, j));
        m[i][n] = b[i];
    }
    for (std::size_t k = 0; k < n; ++k)
    {
        std::size_t p = k;
        while (p < n && m[p][k] == 0)
            ++p;
        if (p == n)
            return std::nullopt;
        std::swap(m[k], m[p]);
        for (std::size_t i = 0; i < n; ++i)
        {
            if (i == k || m[i][k] == 0)
                continue;
            Rational f = m[i][k] / m[k][k];
            for (std::size_t j = k; j <= n; ++j)
                m[i][j] -= f * m[k][j];
        }
    }
    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = m[i][n] / m[i][i];
    return x;
}

CokernelPresentation::CokernelPresentation(const IntMatrix& a) : ambient_(a.rows())
{
    SNFResult s = snf(a);
    rank_ = s.rank();
    free_rank_ = ambient_ - rank_;
    for (std::size_t i = 0; i < rank_; ++i)
        if (s.D(i, i) > 1)
        {
            torsion_.push_back(s.D(i, i));
            torsion_rows_.push_back(i);
        }
    u_inv_ = std::move(s.U_inv);
}

IntVector CokernelPresentation::project(const IntVector& v) const
{
    IntVector y = u_inv_.apply(v);
    IntVector out;
    out.reserve(torsion_.size() + free_rank_);
    for (std::size_t k = 0; k < torsion_.size(); ++k)
        out.push_back(mod_floor(y[torsion_rows_[k]], torsion_[k]));
    for (std::size_t i = rank_; i < ambient_; ++i)
        out.push_back(y[i]);
    return out;
}

CokernelPresentation cokernel_map(const IntMatrix& a)
{
    return CokernelPresentation(a);
}

} // namespace toric
