#ifndef CONC_SPACE_HPP
#define CONC_SPACE_HPP

#include <cstdint>
#include <vector>

#include "conc/errors.hpp"

namespace conc {

// Finite product space Lambda_1 x ... x Lambda_n with integer-coded symbols.
struct ProductSpace {
    std::vector<int> alphabet_sizes;

    int n() const { return static_cast<int>(alphabet_sizes.size()); }

    std::uint64_t size() const {
        std::uint64_t s = 1;
        for (int a : alphabet_sizes) s *= static_cast<std::uint64_t>(a);
        return s;
    }

    // all points in lexicographic order (last coordinate fastest)
    std::vector<std::vector<int>> enumerate() const {
        const std::uint64_t total = size();
        std::vector<std::vector<int>> points;
        points.reserve(total);
        std::vector<int> x(alphabet_sizes.size(), 0);
        for (std::uint64_t c = 0; c < total; ++c) {
            points.push_back(x);
            for (int i = n() - 1; i >= 0; --i) {
                if (++x[static_cast<std::size_t>(i)] < alphabet_sizes[static_cast<std::size_t>(i)])
                    break;
                x[static_cast<std::size_t>(i)] = 0;
            }
        }
        return points;
    }

    static ProductSpace hypercube(int n) { return ProductSpace{std::vector<int>(n, 2)}; }
};

}  // namespace conc

#endif
