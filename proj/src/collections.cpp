#include "toric/collections.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "detail.hpp"
#include "toric/weights.hpp"

namespace toric {

Quiver::Quiver(std::vector<QuiverVertex> vertices, std::vector<QuiverArrow> arrows, std::size_t num_rays,
               std::size_t base_vertex)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)), base_(base_vertex)
{
    const std::size_t nv = vertices_.size();
    if (nv == 0)
        throw QuiverError("quiver has no vertices");
    if (base_ >= nv)
        throw QuiverError("base vertex out of range");
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = i + 1; j < nv; ++j)
            if (vertices_[i].id == vertices_[j].id)
                throw QuiverError("duplicate vertex id " + vertices_[i].id);

    if (arrows_.size() != num_rays)
        throw QuiverError("arrow to ray dictionary is not a bijection: " + std::to_string(arrows_.size()) +
                          " arrows for " + std::to_string(num_rays) + " rays");
    std::vector<char> seen(num_rays, 0);
    for (const auto& a : arrows_)
    {
        if (a.tail >= nv || a.head >= nv)
            throw QuiverError("arrow " + a.id + " has an unknown endpoint");
        if (a.ray >= num_rays)
            throw QuiverError("arrow " + a.id + " names a ray out of range");
        if (seen[a.ray]++)
            throw QuiverError("arrow to ray dictionary is not a bijection: ray " + std::to_string(a.ray + 1) +
                              " used twice");
    }

    // connectivity of the underlying undirected graph
    std::vector<std::size_t> parent(nv);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& a : arrows_)
        parent[find(a.tail)] = find(a.head);
    for (std::size_t v = 1; v < nv; ++v)
        if (find(v) != find(0))
            throw QuiverError("quiver is not connected");
}

std::optional<std::size_t> Quiver::vertex_index(const std::string& id) const
{
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (vertices_[v].id == id)
            return v;
    return std::nullopt;
}

std::vector<DivisorClass> class_list(std::span<const BundleClass> bundles)
{
    std::vector<DivisorClass> out;
    out.reserve(bundles.size());
    for (const auto& b : bundles)
        out.push_back(b.cls);
    return out;
}

std::vector<BundleClass> universal_classes(const Quiver& q, const PicardGroup& pic,
                                           std::span<const std::size_t> arrow_order)
{
    const auto& arrows = q.arrows();
    std::vector<std::size_t> order;
    if (arrow_order.empty())
    {
        order.resize(arrows.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
    }
    else
    {
        order.assign(arrow_order.begin(), arrow_order.end());
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted.size() != arrows.size() || sorted[i] != i)
                throw std::invalid_argument("arrow_order must be a permutation of the arrows");
    }

    std::vector<std::optional<DivisorClass>> cls(q.num_vertices());
    std::vector<char> tree(arrows.size(), 0);
    cls[q.base_vertex()] = pic.zero();
    std::deque<std::size_t> queue{q.base_vertex()};
    while (!queue.empty())
    {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t ai : order)
        {
            const auto& a = arrows[ai];
            if (a.tail == v && !cls[a.head])
            {
                cls[a.head] = pic.add(*cls[v], pic.ray_class(a.ray));
                tree[ai] = 1;
                queue.push_back(a.head);
            }
            else if (a.head == v && !cls[a.tail])
            {
                cls[a.tail] = pic.subtract(*cls[v], pic.ray_class(a.ray));
                tree[ai] = 1;
                queue.push_back(a.tail);
            }
        }
    }
    for (std::size_t ai = 0; ai < arrows.size(); ++ai)
    {
        if (tree[ai])
            continue;
        const auto& a = arrows[ai];
        if (!(pic.add(*cls[a.tail], pic.ray_class(a.ray)) == *cls[a.head]))
            throw QuiverError("inconsistent quiver/ray dictionary (arrow " + a.id + ")");
    }

    std::vector<BundleClass> out;
    for (std::size_t v = 0; v < q.num_vertices(); ++v)
        out.push_back({*cls[v], "vertex " + q.vertices()[v].id});
    return out;
}

namespace {

// Adds c unless an equal class is already present.
bool add_unique(std::vector<BundleClass>& list, BundleClass c)
{
    for (const auto& b : list)
        if (b.cls == c.cls)
            return false;
    list.push_back(std::move(c));
    return true;
}

// Compositions of total into k positive parts, lexicographic.
template <typename F>
void for_each_composition(std::size_t total, std::size_t k, F&& fn)
{
    if (k == 0 || total < k)
        return;
    std::vector<std::size_t> parts(k, 1);
    auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
        if (i + 1 == k)
        {
            parts[i] = left;
            fn(static_cast<const std::vector<std::size_t>&>(parts));
            return;
        }
        for (std::size_t x = 1; x + (k - i - 1) <= left; ++x)
        {
            parts[i] = x;
            self(self, i + 1, left - x);
        }
    };
    rec(rec, 0, total);
}

} // namespace

BuchsbaumRimResult buchsbaum_rim_classes(const Quiver& q, const PicardGroup& pic)
{
    BuchsbaumRimResult res;
    const auto universal = universal_classes(q, pic);
    res.classes = universal;
    const std::size_t m = q.num_vertices();
    const std::size_t n = q.num_arrows();
    for (std::size_t size = m + 1; size <= n; ++size)
    {
        detail::for_each_combination(n, size, [&](const std::vector<std::size_t>& r) {
            for_each_composition(size - 1, m, [&](const std::vector<std::size_t>& p) {
                ++res.raw_pairs;
                DivisorClass c = pic.zero();
                for (std::size_t ai : r)
                    c = pic.add(c, universal[q.arrows()[ai].head].cls);
                for (std::size_t v = 0; v < m; ++v)
                    c = pic.subtract(c, pic.scale(static_cast<long long>(p[v]), universal[v].cls));
                std::ostringstream prov;
                prov << "R={";
                for (std::size_t i = 0; i < r.size(); ++i)
                    prov << (i ? "," : "") << q.arrows()[r[i]].id;
                prov << "} P=(";
                for (std::size_t v = 0; v < m; ++v)
                    prov << (v ? "," : "") << p[v];
                prov << ")";
                add_unique(res.classes, {std::move(c), prov.str()});
            });
        });
    }
    return res;
}

BondalResult bondal_classes(const Fan& fan, const PicardGroup& pic, std::span<const unsigned> denominators)
{
    BondalResult res;
    const std::size_t n = fan.dim();
    const std::size_t r = fan.num_rays();
    bool last_added = false;
    for (unsigned l : denominators)
    {
        if (l == 0)
            throw std::invalid_argument("denominators must be positive");
        last_added = false;
        const long long den = l;
        detail::for_each_box_point(Weight(n, 0), Weight(n, den - 1), [&](const Weight& k) {
            TorusDivisor d{std::vector<long long>(r)};
            for (std::size_t i = 0; i < r; ++i)
                d.coeffs[i] = to_ll(floor_div(Integer(fan.pairing(k, i)), Integer(den)));
            std::ostringstream prov;
            prov << "m=(";
            for (std::size_t j = 0; j < n; ++j)
                prov << (j ? "," : "") << k[j] << "/" << l;
            prov << ")";
            if (add_unique(res.classes, {pic.classify(d), prov.str()}))
                last_added = true;
        });
    }
    res.stabilized = !denominators.empty() && !last_added;
    return res;
}

ExtTable::ExtTable(std::vector<DivisorClass> classes, std::vector<std::vector<std::uint64_t>> entries)
    : classes_(std::move(classes)), entries_(std::move(entries))
{
    if (entries_.size() != classes_.size() * classes_.size())
        throw std::invalid_argument("ExtTable: entry count does not match class count");
}

ExtTable ExtTable::restrict(std::span<const std::size_t> subset) const
{
    std::vector<DivisorClass> cls;
    std::vector<std::vector<std::uint64_t>> entries;
    for (std::size_t p : subset)
        cls.push_back(classes_.at(p));
    for (std::size_t p : subset)
        for (std::size_t q : subset)
            entries.push_back(at(p, q));
    return ExtTable(std::move(cls), std::move(entries));
}

ExtTable ext_table(const CohomologyEngine& engine, const PicardGroup& pic, std::span<const DivisorClass> classes,
                   unsigned threads)
{
    const std::size_t k = classes.size();
    std::map<DivisorClass, std::size_t> index;
    std::vector<DivisorClass> diffs;
    std::vector<std::size_t> slot(k * k);
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q)
        {
            DivisorClass d = pic.subtract(classes[q], classes[p]);
            auto [it, inserted] = index.try_emplace(d, diffs.size());
            if (inserted)
                diffs.push_back(std::move(d));
            slot[p * k + q] = it->second;
        }

    std::vector<std::vector<std::uint64_t>> totals(diffs.size());
    std::vector<std::exception_ptr> errors(diffs.size());
    if (threads == 0)
        threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(diffs.size(), 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < diffs.size(); i = next++)
        {
            try
            {
                ScanOptions opts;
                opts.keep_weights = false;
                totals[i] = total_cohomology(engine, diffs[i].representative, opts).totals;
            }
            catch (...)
            {
                errors[i] = std::current_exception();
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
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    std::vector<std::vector<std::uint64_t>> entries(k * k);
    for (std::size_t i = 0; i < k * k; ++i)
        entries[i] = totals[slot[i]];
    return ExtTable(std::vector<DivisorClass>(classes.begin(), classes.end()), std::move(entries));
}

ExceptionalVerdict is_strongly_exceptional(const ExtTable& table)
{
    ExceptionalVerdict v;
    const std::size_t k = table.size();
    for (std::size_t p = 0; p < k && !v.witness; ++p)
        for (std::size_t q = 0; q < k && !v.witness; ++q)
        {
            const auto& h = table.at(p, q);
            for (std::size_t deg = 1; deg < h.size(); ++deg)
                if (h[deg] != 0)
                {
                    v.witness = ExtWitness{p, q, deg};
                    break;
                }
        }
    v.ok = !v.witness;

    // Kahn's algorithm on p -> q whenever Hom(L_p, L_q) != 0, p != q
    std::vector<std::size_t> indegree(k, 0);
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q)
            if (p != q && table.at(p, q)[0] != 0)
                ++indegree[q];
    std::vector<char> done(k, 0);
    for (std::size_t step = 0; step < k; ++step)
    {
        std::size_t pick = k;
        for (std::size_t p = 0; p < k; ++p)
            if (!done[p] && indegree[p] == 0)
            {
                pick = p;
                break;
            }
        if (pick == k)
            break;
        done[pick] = 1;
        v.order.push_back(pick);
        for (std::size_t q = 0; q < k; ++q)
            if (q != pick && !done[q] && table.at(pick, q)[0] != 0)
                --indegree[q];
    }
    v.has_admissible_order = v.order.size() == k;
    if (!v.has_admissible_order)
        v.order.clear();
    return v;
}

} // namespace toric
