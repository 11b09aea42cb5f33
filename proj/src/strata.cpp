#include "toric/strata.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>

namespace toric {

RaySet::RaySet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0)
{
}

RaySet RaySet::from_indices(std::size_t universe, std::span<const std::size_t> idx)
{
    RaySet s(universe);
    for (std::size_t i : idx)
    {
        if (i >= universe)
            throw std::out_of_range("RaySet index out of range");
        s.set(i);
    }
    return s;
}

RaySet RaySet::full(std::size_t universe)
{
    RaySet s(universe);
    for (std::size_t i = 0; i < universe; ++i)
        s.set(i);
    return s;
}

bool RaySet::empty() const
{
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t RaySet::count() const
{
    std::size_t c = 0;
    for (auto w : words_)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::vector<std::size_t> RaySet::indices() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < universe_; ++i)
        if (test(i))
            out.push_back(i);
    return out;
}

bool RaySet::is_subset_of(const RaySet& other) const
{
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & ~other.words_[w])
            return false;
    return true;
}

bool RaySet::intersects(const RaySet& other) const
{
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & other.words_[w])
            return true;
    return false;
}

RaySet RaySet::operator&(const RaySet& other) const
{
    RaySet r = *this;
    for (std::size_t w = 0; w < words_.size(); ++w)
        r.words_[w] &= other.words_[w];
    return r;
}

RaySet RaySet::operator|(const RaySet& other) const
{
    RaySet r = *this;
    for (std::size_t w = 0; w < words_.size(); ++w)
        r.words_[w] |= other.words_[w];
    return r;
}

RaySet RaySet::complement() const
{
    RaySet r = full(universe_);
    for (std::size_t w = 0; w < words_.size(); ++w)
        r.words_[w] &= ~words_[w];
    return r;
}

std::size_t RaySet::hash() const
{
    std::size_t h = universe_ * 0x9e3779b97f4a7c15ULL;
    for (auto w : words_)
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::string RaySet::to_string(std::size_t offset) const
{
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (std::size_t i : indices())
    {
        os << (first ? "" : ",") << i + offset;
        first = false;
    }
    os << "}";
    return os.str();
}

std::strong_ordering operator<=>(const RaySet& a, const RaySet& b)
{
    if (auto c = a.universe_ <=> b.universe_; c != 0)
        return c;
    auto ia = a.indices();
    auto ib = b.indices();
    return std::lexicographical_compare_three_way(ia.begin(), ia.end(), ib.begin(), ib.end());
}

FacetComplex::FacetComplex(const Fan& fan) : num_rays_(fan.num_rays())
{
    std::set<std::vector<std::size_t>> all;
    for (const auto& cone : fan.max_cones())
    {
        maximal_.push_back(RaySet::from_indices(num_rays_, cone));
        if (cone.size() > 30)
            throw FanError("cone has too many rays to enumerate its faces");
        for (unsigned long mask = 1; mask < (1UL << cone.size()); ++mask)
        {
            std::vector<std::size_t> f;
            for (std::size_t i = 0; i < cone.size(); ++i)
                if (mask & (1UL << i))
                    f.push_back(cone[i]);
            all.insert(std::move(f));
        }
    }
    std::vector<std::vector<std::size_t>> sorted(all.begin(), all.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    for (const auto& f : sorted)
        faces_.push_back(RaySet::from_indices(num_rays_, f));
}

bool FacetComplex::contains(const RaySet& s) const
{
    return std::any_of(maximal_.begin(), maximal_.end(), [&](const RaySet& m) { return s.is_subset_of(m); });
}

bool FacetComplex::contains(std::span<const std::size_t> s) const
{
    return contains(RaySet::from_indices(num_rays_, s));
}

FacetComplex facet_complex(const Fan& fan)
{
    return FacetComplex(fan);
}

FacetSet facet_set(const Fan& fan, const TorusDivisor& d, std::span<const long long> m)
{
    if (m.size() != fan.dim() || d.size() != fan.num_rays())
        throw std::invalid_argument("facet_set: dimension mismatch");
    FacetSet j(fan.num_rays());
    for (std::size_t i = 0; i < fan.num_rays(); ++i)
        if (fan.pairing(m, i) < -d[i])
            j.set(i);
    return j;
}

SimplicialComplex nerve(const FacetComplex& k, const FacetSet& j)
{
    std::vector<Simplex> gens;
    for (const auto& face : k.maximal_faces())
    {
        RaySet s = face & j;
        if (s.empty())
            continue;
        Simplex simplex;
        for (std::size_t i : s.indices())
            simplex.push_back(static_cast<int>(i));
        gens.push_back(std::move(simplex));
    }
    return SimplicialComplex::generated_by(std::move(gens));
}

SimplicialComplex order_complex(const FacetComplex& k, const FacetSet& j)
{
    const auto& faces = k.faces();
    std::vector<int> verts;
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (faces[f].intersects(j))
            verts.push_back(static_cast<int>(f));

    // faces() is sorted by size, so chains are increasing sequences of positions.
    std::vector<Simplex> chains;
    Simplex chain;
    auto extend = [&](auto&& self, std::size_t from) -> void {
        for (std::size_t v = from; v < verts.size(); ++v)
        {
            const RaySet& f = faces[static_cast<std::size_t>(verts[v])];
            if (!chain.empty())
            {
                const RaySet& top = faces[static_cast<std::size_t>(chain.back())];
                if (top.count() >= f.count() || !top.is_subset_of(f))
                    continue;
            }
            chain.push_back(verts[v]);
            chains.push_back(chain);
            self(self, v + 1);
            chain.pop_back();
        }
    };
    extend(extend, 0);
    return SimplicialComplex::from_closed(std::move(chains));
}

} // namespace toric
