#include "kzfront/rng.hpp"

// All of rng.hpp is constexpr/inline; this translation unit pins a couple of
// compile-time properties of the seed-mixing scheme.

namespace kzfront {

static_assert(realization_seed(1, 0) != realization_seed(1, 1));
static_assert(realization_seed(0, 0) != 0);
static_assert(mix64(1) != mix64(2));

}  // namespace kzfront
