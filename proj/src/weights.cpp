#include "toric/weights.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <thread>
#include <unordered_map>

#include "detail.hpp"

namespace toric {

std::uint64_t WeightBox::num_points() const
{
    std::uint64_t n = 1;
    for (std::size_t k = 0; k < lower.size(); ++k)
        n *= static_cast<std::uint64_t>(upper[k] - lower[k] + 1);
    return n;
}

bool WeightBox::contains(const Weight& m) const
{
    for (std::size_t k = 0; k < lower.size(); ++k)
        if (m[k] < lower[k] || m[k] > upper[k])
            return false;
    return true;
}

bool WeightBox::on_boundary(const Weight& m) const
{
    if (!contains(m))
        return false;
    for (std::size_t k = 0; k < lower.size(); ++k)
        if (m[k] == lower[k] || m[k] == upper[k])
            return true;
    return false;
}

WeightBox WeightBox::doubled() const
{
    WeightBox b = *this;
    for (std::size_t k = 0; k < lower.size(); ++k)
    {
        long long sum = lower[k] + upper[k];
        long long centre = sum >= 0 ? sum / 2 : -((-sum + 1) / 2);
        long long half = std::max(upper[k] - centre, centre - lower[k]);
        b.lower[k] = centre - 2 * half;
        b.upper[k] = centre + 2 * half;
    }
    return b;
}

namespace {

WeightBox vertex_hull(const Fan& fan, const TorusDivisor& d)
{
    auto verts = arrangement_vertices(fan, d);
    const std::size_t n = fan.dim();
    WeightBox box{Weight(n, 0), Weight(n, 0)};
    if (verts.empty())
        throw BoxVerificationError("divisor has no arrangement vertices; rays do not span");
    for (std::size_t k = 0; k < n; ++k)
    {
        Integer lo = floor(verts[0][k]);
        Integer hi = ceil(verts[0][k]);
        for (const auto& v : verts)
        {
            lo = std::min(lo, floor(v[k]));
            hi = std::max(hi, ceil(v[k]));
        }
        box.lower[k] = to_ll(lo) - 1;
        box.upper[k] = to_ll(hi) + 1;
    }
    return box;
}

bool boundary_acyclic(const CohomologyEngine& engine, const TorusDivisor& d, const WeightBox& box)
{
    const std::size_t n = box.lower.size();
    for (std::size_t k = 0; k < n; ++k)
    {
        for (long long side : {box.lower[k], box.upper[k]})
        {
            Weight lo = box.lower, hi = box.upper;
            lo[k] = hi[k] = side;
            bool ok = true;
            detail::for_each_box_point(lo, hi, [&](const Weight& m) {
                if (!ok)
                    return;
                FacetSet j = engine.facet_set(d, m);
                if (j.empty())
                {
                    ok = false;
                    return;
                }
                const auto& h = engine.h_from_facets(j);
                if (std::any_of(h.begin(), h.end(), [](std::size_t x) { return x != 0; }))
                    ok = false;
            });
            if (!ok)
                return false;
        }
    }
    return true;
}

struct Bucket
{
    std::uint64_t count = 0;
    const std::vector<std::size_t>* h = nullptr;
    bool nonzero = false;
};

struct ChunkResult
{
    std::unordered_map<RaySet, Bucket> buckets;
    std::vector<WeightCohomology> weights;
    std::exception_ptr error;
};

void scan_slice(const CohomologyEngine& engine, const TorusDivisor& d, const WeightBox& box, long long first,
                const ScanOptions& opts, ChunkResult& out)
{
    const Fan& fan = engine.fan();
    const std::size_t n = fan.dim();
    const std::size_t r = fan.num_rays();
    std::vector<long long> flat(r * n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < n; ++k)
            flat[i * n + k] = fan.ray(i)[k];
    const bool cech = opts.route == Route::cech;

    Weight lo = box.lower, hi = box.upper;
    lo[0] = hi[0] = first;
    detail::for_each_box_point(lo, hi, [&](const Weight& m) {
        // key: violated rays (J) for the facet routes, satisfied rays for Cech
        RaySet key(r);
        for (std::size_t i = 0; i < r; ++i)
        {
            long long s = 0;
            for (std::size_t k = 0; k < n; ++k)
                s += m[k] * flat[i * n + k];
            const bool violated = s < -d.coeffs[i];
            if (violated != cech)
                key.set(i);
        }
        auto [it, inserted] = out.buckets.try_emplace(key);
        Bucket& b = it->second;
        if (inserted)
        {
            b.h = cech ? &engine.cech_all_degrees(key) : &engine.h_from_facets(key, opts.route);
            for (std::size_t p = 0; p <= n && p < b.h->size(); ++p)
                if ((*b.h)[p] != 0)
                    b.nonzero = true;
        }
        ++b.count;
        if (b.nonzero && opts.keep_weights)
        {
            WeightCohomology w{m, cech ? key.complement() : key, {}};
            w.h.assign(b.h->begin(), b.h->begin() + static_cast<std::ptrdiff_t>(std::min(b.h->size(), n + 1)));
            w.h.resize(n + 1, 0);
            out.weights.push_back(std::move(w));
        }
    });
}

} // namespace

WeightBox weight_box(const CohomologyEngine& engine, const TorusDivisor& d)
{
    WeightBox box = vertex_hull(engine.fan(), d);
    for (int attempt = 0; attempt <= 3; ++attempt)
    {
        if (boundary_acyclic(engine, d, box))
            return box;
        box = box.doubled();
    }
    throw BoxVerificationError("box verification failed for divisor " + d.to_string());
}

WeightBox weight_box(const Fan& fan, const TorusDivisor& d)
{
    CohomologyEngine engine(fan);
    return weight_box(engine, d);
}

CohomologyTable total_cohomology_in_box(const CohomologyEngine& engine, const TorusDivisor& d,
                                        const WeightBox& box, const ScanOptions& opts)
{
    const std::size_t n = engine.dim();
    if (d.size() != engine.fan().num_rays())
        throw std::invalid_argument("divisor length does not match the fan");
    if (box.lower.size() != n || box.upper.size() != n)
        throw std::invalid_argument("weight box has wrong dimension");

    const long long first_lo = box.lower[0];
    const std::size_t slices =
        box.upper[0] >= first_lo ? static_cast<std::size_t>(box.upper[0] - first_lo + 1) : 0;
    std::vector<ChunkResult> results(slices);

    unsigned threads = opts.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : opts.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(slices, 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t s = next++; s < slices; s = next++)
        {
            try
            {
                scan_slice(engine, d, box, first_lo + static_cast<long long>(s), opts, results[s]);
            }
            catch (...)
            {
                results[s].error = std::current_exception();
            }
        }
    };
    if (threads <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }

    CohomologyTable table;
    table.box = box;
    table.totals.assign(n + 1, 0);
    std::map<RaySet, std::uint64_t> merged;
    const bool cech = opts.route == Route::cech;
    for (auto& res : results)
    {
        if (res.error)
            std::rethrow_exception(res.error);
        for (const auto& [key, b] : res.buckets)
        {
            for (std::size_t p = 0; p <= n && p < b.h->size(); ++p)
                table.totals[p] += b.count * (*b.h)[p];
            if (opts.classify)
                merged[cech ? key.complement() : key] += b.count;
        }
        for (auto& w : res.weights)
            table.weights.push_back(std::move(w));
    }
    for (const auto& [facets, count] : merged)
    {
        WeightClass c{facets, count, {}, {}};
        c.betti = opts.route == Route::order ? engine.order_betti(facets) : engine.nerve_betti(facets);
        c.h = engine.h_from_facets(facets, opts.route == Route::order ? Route::order : Route::nerve);
        table.classes.push_back(std::move(c));
    }
    return table;
}

CohomologyTable total_cohomology(const CohomologyEngine& engine, const TorusDivisor& d, const ScanOptions& opts)
{
    require_cartier(engine.fan(), d);
    return total_cohomology_in_box(engine, d, weight_box(engine, d), opts);
}

CohomologyTable total_cohomology(const Fan& fan, const TorusDivisor& d)
{
    CohomologyEngine engine(fan);
    return total_cohomology(engine, d);
}

std::vector<WeightClass> classify_weights(const CohomologyEngine& engine, const TorusDivisor& d)
{
    ScanOptions opts;
    opts.keep_weights = false;
    opts.classify = true;
    return total_cohomology(engine, d, opts).classes;
}

std::vector<WeightClass> classify_weights(const Fan& fan, const TorusDivisor& d)
{
    CohomologyEngine engine(fan);
    return classify_weights(engine, d);
}

} // namespace toric
