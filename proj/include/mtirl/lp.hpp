#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mtirl::lp {

enum class Status { optimal, iteration_limit };

struct Result {
  Status status = Status::optimal;
  double objective = 0.0;
  std::vector<double> point;
  int pivots = 0;
};

/// maximize c.w  subject to  A w >= 0 (rows of `normals`, row-major m x dim)
///                           -1 <= w_i <= 1.
/// Dense bounded-variable simplex in dictionary form over the split
/// w = p - q, p, q in [0, 1], started from the feasible origin. Bland's rule
/// keeps the (highly degenerate, zero right-hand side) problem from cycling.
Result maximize_in_box_cone(std::span<const double> objective, std::span<const double> normals,
                            std::size_t dim);

}  // namespace mtirl::lp
