#include "toric/picard.hpp"

#include <algorithm>

#include "detail.hpp"

namespace toric {

std::strong_ordering operator<=>(const DivisorClass& a, const DivisorClass& b)
{
    if (a.normal_form.size() != b.normal_form.size())
        return a.normal_form.size() <=> b.normal_form.size();
    for (std::size_t i = 0; i < a.normal_form.size(); ++i)
    {
        if (a.normal_form[i] < b.normal_form[i])
            return std::strong_ordering::less;
        if (b.normal_form[i] < a.normal_form[i])
            return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

namespace {

std::vector<std::size_t> complement_of(const std::vector<std::size_t>& basis, std::size_t r)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < r; ++i)
        if (std::find(basis.begin(), basis.end(), i) == basis.end())
            out.push_back(i);
    return out;
}

bool unimodular(const Fan& fan, const std::vector<std::size_t>& rays)
{
    return rays.size() == fan.dim() && abs(determinant(fan.rows_of(rays))) == 1;
}

} // namespace

PicardGroup::PicardGroup(const Fan& fan)
    : num_rays_(fan.num_rays()), rays_(fan.rays()), coker_(fan.ray_matrix())
{
    const std::size_t r = fan.num_rays();
    const std::size_t n = fan.dim();
    if (const auto& hint = fan.pic_basis_hint())
    {
        basis_ = *hint;
        std::sort(basis_.begin(), basis_.end());
        complement_ = complement_of(basis_, r);
        if (!unimodular(fan, complement_))
            throw FanError("pic_basis: the remaining rays do not form a basis of N");
    }
    else if (r >= n)
    {
        bool found = false;
        detail::for_each_combination(r, r - n, [&](const std::vector<std::size_t>& b) {
            if (found)
                return;
            auto comp = complement_of(b, r);
            if (unimodular(fan, comp))
            {
                basis_ = b;
                complement_ = std::move(comp);
                found = true;
            }
        });
    }
    if (!complement_.empty())
    {
        SNFResult s = snf(fan.rows_of(complement_));
        complement_inv_ = s.V_inv * s.U_inv;
    }
}

TorusDivisor PicardGroup::canonical_representative(const TorusDivisor& d) const
{
    if (d.size() != num_rays_)
        throw std::invalid_argument("divisor length does not match the fan");
    if (!complement_inv_)
        return d;
    IntVector rhs;
    for (std::size_t i : complement_)
        rhs.emplace_back(-d[i]);
    IntVector m = complement_inv_->apply(rhs);
    TorusDivisor out = d;
    for (std::size_t i = 0; i < num_rays_; ++i)
    {
        Integer s = d[i];
        for (std::size_t k = 0; k < m.size(); ++k)
            s += m[k] * rays_[i][k];
        out.coeffs[i] = to_ll(s);
    }
    return out;
}

DivisorClass PicardGroup::classify(const TorusDivisor& d) const
{
    if (d.size() != num_rays_)
        throw std::invalid_argument("divisor length does not match the fan");
    IntVector v(d.coeffs.begin(), d.coeffs.end());
    return DivisorClass{coker_.project(v), canonical_representative(d)};
}

std::vector<long long> PicardGroup::basis_coordinates(const DivisorClass& c) const
{
    std::vector<long long> out;
    for (std::size_t i : basis_)
        out.push_back(c.representative[i]);
    return out;
}

DivisorClass PicardGroup::from_basis_coordinates(const std::vector<long long>& coords) const
{
    if (coords.size() != basis_.size())
        throw std::invalid_argument("wrong number of Picard coordinates");
    TorusDivisor d{std::vector<long long>(num_rays_, 0)};
    for (std::size_t k = 0; k < basis_.size(); ++k)
        d.coeffs[basis_[k]] = coords[k];
    return classify(d);
}

DivisorClass PicardGroup::zero() const
{
    return classify(TorusDivisor{std::vector<long long>(num_rays_, 0)});
}

DivisorClass PicardGroup::ray_class(std::size_t i) const
{
    TorusDivisor d{std::vector<long long>(num_rays_, 0)};
    d.coeffs.at(i) = 1;
    return classify(d);
}

DivisorClass PicardGroup::add(const DivisorClass& a, const DivisorClass& b) const
{
    return classify(a.representative + b.representative);
}

DivisorClass PicardGroup::subtract(const DivisorClass& a, const DivisorClass& b) const
{
    return classify(a.representative - b.representative);
}

DivisorClass PicardGroup::scale(long long k, const DivisorClass& a) const
{
    return classify(k * a.representative);
}

DivisorClass divisor_class(const Fan& fan, const TorusDivisor& d)
{
    return PicardGroup(fan).classify(d);
}

} // namespace toric
