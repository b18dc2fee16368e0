#include "delaylab/field.hpp"

namespace delaylab {

Mask::Mask(const Grid& grid, double K, Region region)
    : grid_(grid), radius_(K), region_(region), indicator_(grid.size()) {
  for (Eigen::Index i = 0; i < indicator_.size(); ++i) {
    const bool in = grid.radius(i) < K;
    indicator_[i] = (in == (region == Region::inside)) ? 1.0 : 0.0;
  }
}

Mask Mask::complement() const {
  return {grid_, radius_, region_ == Region::inside ? Region::outside : Region::inside};
}

}  // namespace delaylab
