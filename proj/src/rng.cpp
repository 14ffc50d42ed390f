#include "arclab/rng.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace arclab {

PointSet random_subset_of_size(const PlanePtr& plane, std::uint32_t size, Rng& rng) {
    const std::uint32_t n = plane->num_points();
    if (size > n) throw std::invalid_argument("random subset larger than the plane");
    std::vector<PointId> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    for (std::uint32_t i = 0; i < size; ++i) {
        auto j = i + static_cast<std::uint32_t>(rng.below(n - i));
        std::swap(ids[i], ids[j]);
    }
    return PointSet::from_ids(plane, std::span<const PointId>(ids.data(), size));
}

PointSet random_subset(const PlanePtr& plane, Rng& rng) {
    auto size = static_cast<std::uint32_t>(rng.below(plane->num_points() + 1));
    return random_subset_of_size(plane, size, rng);
}

}  // namespace arclab
