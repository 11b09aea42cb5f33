// Internal helpers shared by the library sources.

#ifndef TORIC_SRC_DETAIL_HPP
#define TORIC_SRC_DETAIL_HPP

#include <cstddef>
#include <vector>

namespace toric::detail {

// Visits every integer point of the box [lower, upper] in lexicographic
// order. The callback receives a reference to the current point.
template <typename F>
void for_each_box_point(const std::vector<long long>& lower, const std::vector<long long>& upper, F&& fn)
{
    const std::size_t n = lower.size();
    for (std::size_t k = 0; k < n; ++k)
        if (lower[k] > upper[k])
            return;
    std::vector<long long> m = lower;
    for (;;)
    {
        fn(m);
        std::size_t k = n;
        while (k > 0)
        {
            --k;
            if (m[k] < upper[k])
            {
                ++m[k];
                break;
            }
            m[k] = lower[k];
            if (k == 0)
                return;
        }
        if (n == 0)
            return;
    }
}

// All k-element subsets of {0..n-1} in lexicographic order.
template <typename F>
void for_each_combination(std::size_t n, std::size_t k, F&& fn)
{
    if (k > n)
        return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    for (;;)
    {
        fn(static_cast<const std::vector<std::size_t>&>(idx));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1))
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

} // namespace toric::detail

#endif
