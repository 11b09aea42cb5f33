#include "toric/fan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "detail.hpp"

namespace toric {

namespace {

std::string join(std::span<const std::size_t> v)
{
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    os << "}";
    return os.str();
}

// Integer normal of the hyperplane spanned by n-1 vectors (generalized cross product).
IntVector wall_normal(const IntMatrix& w, std::size_t n)
{
    IntVector nu(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        IntMatrix minor(w.rows(), n - 1);
        for (std::size_t i = 0; i < w.rows(); ++i)
            for (std::size_t j = 0, c = 0; j < n; ++j)
                if (j != k)
                    minor(i, c++) = w(i, j);
        Integer d = determinant(minor);
        nu[k] = (k % 2 == 0) ? d : Integer(-d);
    }
    return nu;
}

Integer dot(const IntVector& a, const LatticeVector& b)
{
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

struct WallInfo
{
    // (cone index, ray of that cone not on the wall)
    std::vector<std::pair<std::size_t, std::size_t>> sides;
};

std::map<std::vector<std::size_t>, WallInfo> collect_walls(const Fan& fan)
{
    std::map<std::vector<std::size_t>, WallInfo> walls;
    for (std::size_t c = 0; c < fan.num_cones(); ++c)
    {
        const auto& rays = fan.cone(c);
        for (std::size_t skip = 0; skip < rays.size(); ++skip)
        {
            std::vector<std::size_t> wall;
            for (std::size_t k = 0; k < rays.size(); ++k)
                if (k != skip)
                    wall.push_back(rays[k]);
            walls[wall].sides.emplace_back(c, rays[skip]);
        }
    }
    return walls;
}

bool is_simplicial(const Fan& fan)
{
    return std::all_of(fan.max_cones().begin(), fan.max_cones().end(),
                       [&](const auto& c) { return c.size() == fan.dim(); });
}

// Coordinates of v in the ray basis of a simplicial cone.
std::optional<RatVector> cone_coordinates(const Fan& fan, std::size_t c, const RatVector& v)
{
    return solve_rational(fan.rows_of(fan.cone(c)).transpose(), v);
}

bool nonnegative(const RatVector& x)
{
    return std::all_of(x.begin(), x.end(), [](const Rational& q) { return q >= 0; });
}

} // namespace

Fan::Fan(std::size_t dim, std::vector<LatticeVector> rays, std::vector<std::vector<std::size_t>> max_cones,
         std::optional<std::vector<std::size_t>> pic_basis)
    : dim_(dim), rays_(std::move(rays)), cones_(std::move(max_cones)), pic_hint_(std::move(pic_basis))
{
    if (dim_ == 0)
        throw FanError("fan dimension must be positive");
    std::set<LatticeVector> seen;
    for (std::size_t i = 0; i < rays_.size(); ++i)
    {
        const auto& e = rays_[i];
        if (e.size() != dim_)
            throw FanError("ray " + std::to_string(i) + " has wrong dimension");
        long long g = 0;
        for (long long x : e)
            g = std::gcd(g, x);
        if (g == 0)
            throw FanError("ray " + std::to_string(i) + " is zero");
        if (g != 1)
            throw FanError("ray " + std::to_string(i) + " is not primitive");
        if (!seen.insert(e).second)
        {
            std::size_t first = static_cast<std::size_t>(
                std::find(rays_.begin(), rays_.end(), e) - rays_.begin());
            throw FanError("rays " + std::to_string(first) + " and " + std::to_string(i) + " coincide");
        }
    }
    if (cones_.empty())
        throw FanError("fan has no maximal cones");
    std::vector<bool> used(rays_.size(), false);
    std::set<std::vector<std::size_t>> cone_set;
    for (std::size_t c = 0; c < cones_.size(); ++c)
    {
        auto& cone = cones_[c];
        std::sort(cone.begin(), cone.end());
        if (std::adjacent_find(cone.begin(), cone.end()) != cone.end())
            throw FanError("cone " + std::to_string(c) + " repeats a ray");
        for (std::size_t i : cone)
        {
            if (i >= rays_.size())
                throw FanError("cone " + std::to_string(c) + " references missing ray " + std::to_string(i));
            used[i] = true;
        }
        if (rank_q(rows_of(cone)) != dim_)
            throw FanError("cone " + std::to_string(c) + " " + join(cone) + " is not full dimensional");
        if (!cone_set.insert(cone).second)
            throw FanError("cone " + std::to_string(c) + " is listed twice");
    }
    for (std::size_t i = 0; i < rays_.size(); ++i)
        if (!used[i])
            throw FanError("ray " + std::to_string(i) + " lies in no maximal cone");
    if (pic_hint_)
        for (std::size_t i : *pic_hint_)
            if (i >= rays_.size())
                throw FanError("pic_basis references missing ray " + std::to_string(i));
}

long long Fan::pairing(std::span<const long long> m, std::size_t ray) const
{
    const auto& e = rays_[ray];
    long long s = 0;
    for (std::size_t k = 0; k < dim_; ++k)
        s += m[k] * e[k];
    return s;
}

IntMatrix Fan::ray_matrix() const
{
    return IntMatrix::from_rows(rays_, dim_);
}

IntMatrix Fan::rows_of(std::span<const std::size_t> rays) const
{
    IntMatrix m(rays.size(), dim_);
    for (std::size_t k = 0; k < rays.size(); ++k)
        for (std::size_t j = 0; j < dim_; ++j)
            m(k, j) = rays_.at(rays[k])[j];
    return m;
}

FanReport validate(const Fan& fan)
{
    FanReport report;
    const std::size_t n = fan.dim();
    report.simplicial = is_simplicial(fan);
    if (!report.simplicial)
    {
        report.notes.push_back("non-simplicial fan: completeness is only decided for simplicial fans");
        return report;
    }
    report.smooth = true;
    for (std::size_t c = 0; c < fan.num_cones(); ++c)
    {
        Integer det = determinant(fan.rows_of(fan.cone(c)));
        if (abs(det) != 1)
        {
            report.smooth = false;
            report.notes.push_back("cone " + std::to_string(c) + " " + join(fan.cone(c)) +
                                   " has multiplicity " + Integer(abs(det)).str());
        }
    }

    auto walls = collect_walls(fan);
    bool closed = true;
    std::vector<std::vector<std::size_t>> adj(fan.num_cones());
    for (const auto& [wall, info] : walls)
    {
        if (info.sides.size() > 2)
        {
            std::ostringstream os;
            os << "wall " << join(wall) << " is shared by cones";
            for (const auto& s : info.sides)
                os << " " << s.first;
            throw FanError("improper fan: " + os.str());
        }
        if (info.sides.size() == 1)
        {
            closed = false;
            report.notes.push_back("wall " + join(wall) + " of cone " + std::to_string(info.sides[0].first) +
                                   " has no neighbour");
            continue;
        }
        IntVector nu = wall_normal(fan.rows_of(wall), n);
        Integer s1 = dot(nu, fan.ray(info.sides[0].second));
        Integer s2 = dot(nu, fan.ray(info.sides[1].second));
        if ((s1 > 0) == (s2 > 0))
            throw FanError("improper fan: cones " + std::to_string(info.sides[0].first) + " and " +
                           std::to_string(info.sides[1].first) + " lie on the same side of wall " + join(wall));
        adj[info.sides[0].first].push_back(info.sides[1].first);
        adj[info.sides[1].first].push_back(info.sides[0].first);
    }

    // An interior point of one cone must not lie in any other cone.
    for (std::size_t c = 0; c < fan.num_cones(); ++c)
    {
        RatVector bary(n);
        for (std::size_t i : fan.cone(c))
            for (std::size_t k = 0; k < n; ++k)
                bary[k] += fan.ray(i)[k];
        for (std::size_t o = 0; o < fan.num_cones(); ++o)
        {
            if (o == c)
                continue;
            auto lambda = cone_coordinates(fan, o, bary);
            if (lambda && nonnegative(*lambda))
                throw FanError("improper fan: cone " + std::to_string(o) + " " + join(fan.cone(o)) +
                               " meets the interior of cone " + std::to_string(c) + " " + join(fan.cone(c)));
        }
    }

    std::vector<bool> seen(fan.num_cones(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty())
    {
        std::size_t c = stack.back();
        stack.pop_back();
        for (std::size_t o : adj[c])
            if (!seen[o])
            {
                seen[o] = true;
                ++reached;
                stack.push_back(o);
            }
    }
    bool connected = reached == fan.num_cones();
    if (!connected)
        report.notes.push_back("wall adjacency graph is disconnected");
    report.complete = closed && connected;
    return report;
}

void require_usable(const Fan& fan)
{
    FanReport r = validate(fan);
    if (!r.simplicial)
        throw FanError("only simplicial fans are supported");
    if (!r.complete)
        throw FanError("fan is not complete" + (r.notes.empty() ? std::string() : ": " + r.notes.front()));
}

TorusDivisor operator+(const TorusDivisor& a, const TorusDivisor& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("divisor length mismatch");
    TorusDivisor r = a;
    for (std::size_t i = 0; i < r.size(); ++i)
        r.coeffs[i] += b.coeffs[i];
    return r;
}

TorusDivisor operator-(const TorusDivisor& a, const TorusDivisor& b)
{
    return a + (-b);
}

TorusDivisor operator-(const TorusDivisor& a)
{
    return (-1) * a;
}

TorusDivisor operator*(long long k, const TorusDivisor& a)
{
    TorusDivisor r = a;
    for (auto& c : r.coeffs)
        c *= k;
    return r;
}

std::string TorusDivisor::to_string() const
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        os << (i ? "," : "") << coeffs[i];
    os << ")";
    return os.str();
}

std::optional<CartierData> cartier_data(const Fan& fan, const TorusDivisor& d)
{
    if (d.size() != fan.num_rays())
        throw std::invalid_argument("divisor has " + std::to_string(d.size()) + " coefficients, fan has " +
                                    std::to_string(fan.num_rays()) + " rays");
    CartierData cd;
    for (std::size_t c = 0; c < fan.num_cones(); ++c)
    {
        const auto& rays = fan.cone(c);
        IntVector rhs;
        for (std::size_t i : rays)
            rhs.emplace_back(-d[i]);
        auto sol = solve_integral(fan.rows_of(rays), rhs);
        if (!sol)
            return std::nullopt;
        Weight m;
        for (const auto& x : *sol)
            m.push_back(to_ll(x));
        cd.m.push_back(std::move(m));
    }
    return cd;
}

Rational support_value(const CartierData& cd, const Fan& fan, const RatVector& v)
{
    if (v.size() != fan.dim())
        throw std::invalid_argument("support_value: point has wrong dimension");
    if (!is_simplicial(fan))
        throw FanError("support_value requires a simplicial fan");
    std::optional<Rational> value;
    for (std::size_t c = 0; c < fan.num_cones(); ++c)
    {
        auto lambda = cone_coordinates(fan, c, v);
        if (!lambda || !nonnegative(*lambda))
            continue;
        Rational s = 0;
        for (std::size_t k = 0; k < fan.dim(); ++k)
            s += Rational(cd.m[c][k]) * v[k];
        if (value && *value != s)
            throw std::logic_error("support function is not well defined on a wall");
        value = s;
    }
    if (!value)
        throw FanError("point lies outside the support of the fan");
    return *value;
}

bool is_ample(const Fan& fan, const TorusDivisor& d)
{
    auto cd = cartier_data(fan, d);
    if (!cd)
        throw FanError("divisor " + d.to_string() + " is not Cartier");
    if (!is_simplicial(fan))
        throw FanError("is_ample requires a simplicial fan");
    for (const auto& [wall, info] : collect_walls(fan))
    {
        if (info.sides.size() != 2)
            continue;
        const auto [c1, e1] = info.sides[0];
        const auto [c2, e2] = info.sides[1];
        // The ray of the neighbour not on the wall must lie strictly above psi.
        if (fan.pairing(cd->m[c1], e2) <= -d[e2] || fan.pairing(cd->m[c2], e1) <= -d[e1])
            return false;
    }
    return true;
}

TorusDivisor canonical_divisor(const Fan& fan)
{
    return TorusDivisor{std::vector<long long>(fan.num_rays(), -1)};
}

TorusDivisor principal_divisor(const Fan& fan, std::span<const long long> m)
{
    TorusDivisor d{std::vector<long long>(fan.num_rays())};
    for (std::size_t i = 0; i < fan.num_rays(); ++i)
        d.coeffs[i] = fan.pairing(m, i);
    return d;
}

std::vector<RatVector> arrangement_vertices(const Fan& fan, const TorusDivisor& d)
{
    if (d.size() != fan.num_rays())
        throw std::invalid_argument("divisor length does not match the fan");
    std::set<RatVector> out;
    detail::for_each_combination(fan.num_rays(), fan.dim(), [&](const std::vector<std::size_t>& s) {
        RatVector rhs;
        for (std::size_t i : s)
            rhs.emplace_back(-d[i]);
        if (auto v = solve_rational(fan.rows_of(s), rhs))
            out.insert(std::move(*v));
    });
    return {out.begin(), out.end()};
}

std::vector<Weight> polytope_lattice_points(const Fan& fan, const TorusDivisor& d)
{
    auto verts = arrangement_vertices(fan, d);
    std::vector<Weight> pts;
    if (verts.empty())
        return pts;
    const std::size_t n = fan.dim();
    Weight lo(n), hi(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        Integer a = floor(verts[0][k]), b = ceil(verts[0][k]);
        for (const auto& v : verts)
        {
            a = std::min(a, floor(v[k]));
            b = std::max(b, ceil(v[k]));
        }
        lo[k] = to_ll(a);
        hi[k] = to_ll(b);
    }
    detail::for_each_box_point(lo, hi, [&](const Weight& m) {
        for (std::size_t i = 0; i < fan.num_rays(); ++i)
            if (fan.pairing(m, i) < -d[i])
                return;
        pts.push_back(m);
    });
    return pts;
}

} // namespace toric
