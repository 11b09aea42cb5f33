#include "toric/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <stdexcept>

#include "toric/exactlin.hpp"

namespace toric {

bool BettiVector::acyclic() const
{
    return std::all_of(values.begin(), values.end(), [](std::size_t b) { return b == 0; });
}

bool WeightCohomology::vanishes() const
{
    return std::all_of(h.begin(), h.end(), [](std::size_t x) { return x == 0; });
}

const char* route_name(Route r)
{
    switch (r)
    {
    case Route::nerve:
        return "nerve";
    case Route::order:
        return "order";
    case Route::cech:
        return "cech";
    }
    return "?";
}

BettiVector reduced_betti(const SimplicialComplex& c)
{
    BettiVector out;
    if (c.empty())
    {
        out.empty = true;
        return out;
    }
    const std::size_t top = static_cast<std::size_t>(c.dimension());
    // rank_delta[k] = rank of the coboundary C^{k-1} -> C^k, with C^{-1} = Q.
    std::vector<std::size_t> rank_delta(top + 2, 0);
    rank_delta[0] = 1; // augmentation: nonzero since the complex has vertices
    for (std::size_t k = 1; k <= top; ++k)
    {
        const auto& rows = c.simplices(k);
        IntMatrix delta(rows.size(), c.count(k - 1));
        for (std::size_t r = 0; r < rows.size(); ++r)
        {
            const Simplex& t = rows[r];
            for (std::size_t j = 0; j < t.size(); ++j)
            {
                Simplex face;
                face.reserve(t.size() - 1);
                for (std::size_t q = 0; q < t.size(); ++q)
                    if (q != j)
                        face.push_back(t[q]);
                delta(r, c.index_of(face)) = (j % 2 == 0) ? 1 : -1;
            }
        }
        rank_delta[k] = rank_q(delta);
    }
    out.values.resize(top + 1);
    for (std::size_t k = 0; k <= top; ++k)
        out.values[k] = c.count(k) - rank_delta[k] - rank_delta[k + 1];
    return out;
}

// Terms of the alternating Cech complex over the maximal cones.
struct CohomologyEngine::CechLayout
{
    std::size_t cones = 0;
    // Common rays of each nonempty cone subset (indexed by bitmask).
    std::vector<RaySet> common;
    // Subsets by degree (|S| - 1), ascending bitmask order.
    std::vector<std::vector<std::uint32_t>> by_degree;
};

namespace {

constexpr std::size_t kMaxCechCones = 20;

template <typename Map, typename Key, typename Make>
const typename Map::mapped_type& memo(std::shared_mutex& mutex, Map& map, const Key& key, Make&& make)
{
    {
        std::shared_lock lock(mutex);
        if (auto it = map.find(key); it != map.end())
            return it->second;
    }
    auto value = make();
    std::unique_lock lock(mutex);
    return map.try_emplace(key, std::move(value)).first->second;
}

} // namespace

CohomologyEngine::CohomologyEngine(Fan fan) : fan_(std::move(fan))
{
    require_usable(fan_);
    complex_ = FacetComplex(fan_);
    const std::size_t k = fan_.num_cones();
    if (k <= kMaxCechCones)
    {
        cech_ = std::make_unique<CechLayout>();
        cech_->cones = k;
        const std::uint32_t total = std::uint32_t{1} << k;
        cech_->common.resize(total);
        cech_->by_degree.resize(k);
        for (std::uint32_t mask = 1; mask < total; ++mask)
        {
            RaySet common = RaySet::full(fan_.num_rays());
            for (std::size_t c = 0; c < k; ++c)
                if (mask & (std::uint32_t{1} << c))
                    common = common & complex_.maximal_faces()[c];
            cech_->common[mask] = std::move(common);
            cech_->by_degree[static_cast<std::size_t>(std::popcount(mask)) - 1].push_back(mask);
        }
    }
}

CohomologyEngine::~CohomologyEngine() = default;

FacetSet CohomologyEngine::facet_set(const TorusDivisor& d, std::span<const long long> m) const
{
    return toric::facet_set(fan_, d, m);
}

RaySet CohomologyEngine::satisfied_rays(const TorusDivisor& d, std::span<const long long> m) const
{
    RaySet s(fan_.num_rays());
    for (std::size_t i = 0; i < fan_.num_rays(); ++i)
        if (fan_.pairing(m, i) >= -d[i])
            s.set(i);
    return s;
}

const BettiVector& CohomologyEngine::nerve_betti(const FacetSet& j) const
{
    return memo(mutex_, nerve_cache_, j, [&] { return reduced_betti(nerve(complex_, j)); });
}

const BettiVector& CohomologyEngine::order_betti(const FacetSet& j) const
{
    return memo(mutex_, order_cache_, j, [&] { return reduced_betti(order_complex(complex_, j)); });
}

const std::vector<std::size_t>& CohomologyEngine::h_from_facets(const FacetSet& j, Route route) const
{
    if (route == Route::cech)
        throw std::invalid_argument("h_from_facets: the Cech route works from satisfied rays");
    auto& cache = route == Route::nerve ? h_nerve_cache_ : h_order_cache_;
    return memo(mutex_, cache, j, [&] {
        const BettiVector& b = route == Route::nerve ? nerve_betti(j) : order_betti(j);
        std::vector<std::size_t> h(fan_.dim() + 1, 0);
        h[0] = j.empty() ? 1 : 0;
        for (std::size_t p = 1; p <= fan_.dim(); ++p)
            h[p] = b.at(p - 1);
        return h;
    });
}

const std::vector<std::size_t>& CohomologyEngine::cech_all_degrees(const RaySet& satisfied) const
{
    if (!cech_)
        throw std::runtime_error("Cech complex is limited to " + std::to_string(kMaxCechCones) + " maximal cones");
    return memo(mutex_, cech_cache_, satisfied, [&] {
        const CechLayout& lay = *cech_;
        const std::size_t k = lay.cones;
        std::vector<char> nonzero(lay.common.size(), 0);
        // position of each nonzero term within its degree
        std::vector<std::size_t> pos(lay.common.size(), 0);
        std::vector<std::size_t> dims(k, 0);
        for (std::size_t p = 0; p < k; ++p)
            for (std::uint32_t mask : lay.by_degree[p])
                if (lay.common[mask].is_subset_of(satisfied))
                {
                    nonzero[mask] = 1;
                    pos[mask] = dims[p]++;
                }
        // rank_delta[p] = rank of C^{p-1} -> C^p
        std::vector<std::size_t> rank_delta(k + 1, 0);
        for (std::size_t p = 1; p < k; ++p)
        {
            if (dims[p] == 0 || dims[p - 1] == 0)
                continue;
            IntMatrix delta(dims[p], dims[p - 1]);
            for (std::uint32_t t : lay.by_degree[p])
            {
                if (!nonzero[t])
                    continue;
                std::size_t j = 0;
                for (std::size_t c = 0; c < k; ++c)
                {
                    const std::uint32_t bit = std::uint32_t{1} << c;
                    if (!(t & bit))
                        continue;
                    const std::uint32_t s = t & ~bit;
                    if (nonzero[s])
                        delta(pos[t], pos[s]) = (j % 2 == 0) ? 1 : -1;
                    ++j;
                }
            }
            rank_delta[p] = rank_q(delta);
        }
        std::vector<std::size_t> h(k, 0);
        for (std::size_t p = 0; p < k; ++p)
            h[p] = dims[p] - rank_delta[p] - rank_delta[p + 1];
        return h;
    });
}

WeightCohomology CohomologyEngine::weight_cohomology(const TorusDivisor& d, const Weight& m, Route route) const
{
    if (m.size() != fan_.dim())
        throw std::invalid_argument("weight has wrong dimension");
    if (d.size() != fan_.num_rays())
        throw std::invalid_argument("divisor length does not match the fan");
    WeightCohomology w{m, facet_set(d, m), {}};
    if (route == Route::cech)
    {
        const auto& all = cech_all_degrees(satisfied_rays(d, m));
        w.h.assign(fan_.dim() + 1, 0);
        for (std::size_t p = 0; p < w.h.size() && p < all.size(); ++p)
            w.h[p] = all[p];
    }
    else
    {
        w.h = h_from_facets(w.facets, route);
    }
    return w;
}

void require_cartier(const Fan& fan, const TorusDivisor& d)
{
    if (!cartier_data(fan, d))
        throw FanError("divisor " + d.to_string() + " is not Cartier");
}

namespace {

WeightCohomology one_shot(const Fan& fan, const TorusDivisor& d, const Weight& m, Route route)
{
    require_cartier(fan, d);
    CohomologyEngine engine(fan);
    return engine.weight_cohomology(d, m, route);
}

} // namespace

WeightCohomology weight_cohomology(const Fan& fan, const TorusDivisor& d, const Weight& m)
{
    return one_shot(fan, d, m, Route::nerve);
}

WeightCohomology cech_weight_cohomology(const Fan& fan, const TorusDivisor& d, const Weight& m)
{
    return one_shot(fan, d, m, Route::cech);
}

WeightCohomology order_weight_cohomology(const Fan& fan, const TorusDivisor& d, const Weight& m)
{
    return one_shot(fan, d, m, Route::order);
}

} // namespace toric
