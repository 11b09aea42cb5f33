#include "toric/simplicial_complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace toric {

namespace {

void normalise(std::vector<std::vector<Simplex>>& by_dim)
{
    for (auto& layer : by_dim)
    {
        std::sort(layer.begin(), layer.end());
        layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
    }
    while (!by_dim.empty() && by_dim.back().empty())
        by_dim.pop_back();
}

} // namespace

SimplicialComplex SimplicialComplex::generated_by(std::vector<Simplex> simplices)
{
    std::set<Simplex> all;
    for (auto& s : simplices)
    {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty() || all.contains(s))
            continue;
        if (s.size() > 30)
            throw std::invalid_argument("simplex too large to close downward");
        const std::size_t k = s.size();
        for (unsigned long mask = 1; mask < (1UL << k); ++mask)
        {
            Simplex f;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1UL << i))
                    f.push_back(s[i]);
            all.insert(std::move(f));
        }
    }
    SimplicialComplex c;
    for (const auto& s : all)
    {
        if (c.by_dim_.size() < s.size())
            c.by_dim_.resize(s.size());
        c.by_dim_[s.size() - 1].push_back(s);
    }
    normalise(c.by_dim_);
    return c;
}

SimplicialComplex SimplicialComplex::from_closed(std::vector<Simplex> simplices)
{
    SimplicialComplex c;
    for (auto& s : simplices)
    {
        if (s.empty())
            continue;
        std::sort(s.begin(), s.end());
        if (c.by_dim_.size() < s.size())
            c.by_dim_.resize(s.size());
        c.by_dim_[s.size() - 1].push_back(std::move(s));
    }
    normalise(c.by_dim_);
    return c;
}

const std::vector<Simplex>& SimplicialComplex::simplices(std::size_t k) const
{
    static const std::vector<Simplex> none;
    return k < by_dim_.size() ? by_dim_[k] : none;
}

std::size_t SimplicialComplex::size() const
{
    std::size_t n = 0;
    for (const auto& layer : by_dim_)
        n += layer.size();
    return n;
}

std::vector<int> SimplicialComplex::vertices() const
{
    std::vector<int> v;
    for (const auto& s : simplices(0))
        v.push_back(s[0]);
    return v;
}

bool SimplicialComplex::contains(const Simplex& s) const
{
    if (s.empty() || s.size() > by_dim_.size())
        return false;
    const auto& layer = by_dim_[s.size() - 1];
    return std::binary_search(layer.begin(), layer.end(), s);
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const
{
    for (const auto& layer : by_dim_)
        for (const auto& s : layer)
            if (!other.contains(s))
                return false;
    return true;
}

std::size_t SimplicialComplex::index_of(const Simplex& s) const
{
    if (s.empty() || s.size() > by_dim_.size())
        throw std::out_of_range("simplex not in complex");
    const auto& layer = by_dim_[s.size() - 1];
    auto it = std::lower_bound(layer.begin(), layer.end(), s);
    if (it == layer.end() || *it != s)
        throw std::out_of_range("simplex not in complex");
    return static_cast<std::size_t>(it - layer.begin());
}

long long SimplicialComplex::euler_characteristic() const
{
    long long chi = 0;
    for (std::size_t k = 0; k < by_dim_.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(by_dim_[k].size());
    return chi;
}

} // namespace toric
