#include "mtirl/lp.hpp"

#include <cmath>
#include <limits>

#include "mtirl/error.hpp"

namespace mtirl::lp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCostEps = 1e-12;
constexpr double kPivotEps = 1e-11;
constexpr double kRatioTieEps = 1e-13;

}  // namespace

Result maximize_in_box_cone(std::span<const double> objective, std::span<const double> normals,
                            std::size_t dim) {
  if (objective.size() != dim || (dim != 0 && normals.size() % dim != 0)) {
    throw Error(ErrorCode::dimension_mismatch, "lp: objective/constraint dimensions disagree");
  }
  const std::size_t m = dim == 0 ? 0 : normals.size() / dim;
  const std::size_t n = 2 * dim;  // nonbasic slots

  // Variable ids: [0, dim) = p, [dim, 2 dim) = q, [2 dim, 2 dim + m) = slacks.
  auto upper = [&](std::size_t id) { return id < n ? 1.0 : kInf; };

  std::vector<double> tab(m * n);
  std::vector<double> rhs(m, 0.0);
  std::vector<std::size_t> basic(m);
  for (std::size_t i = 0; i < m; ++i) {
    basic[i] = n + i;
    for (std::size_t c = 0; c < dim; ++c) {
      tab[i * n + c] = normals[i * dim + c];
      tab[i * n + dim + c] = -normals[i * dim + c];
    }
  }
  std::vector<std::size_t> nonbasic(n);
  std::vector<double> value(n, 0.0);  // nonbasic values, always at a bound
  std::vector<double> cost(n);
  for (std::size_t c = 0; c < dim; ++c) {
    nonbasic[c] = c;
    nonbasic[dim + c] = dim + c;
    cost[c] = objective[c];
    cost[dim + c] = -objective[c];
  }

  std::vector<double> xb(m);
  std::vector<double> pivot_row(n);
  Result result;
  const int max_pivots = 20000 + 50 * static_cast<int>(m + n);

  for (int iter = 0;; ++iter) {
    if (iter > max_pivots) {
      result.status = Status::iteration_limit;
      break;
    }
    for (std::size_t i = 0; i < m; ++i) {
      double v = rhs[i];
      for (std::size_t j = 0; j < n; ++j) v += tab[i * n + j] * value[j];
      xb[i] = v;
    }

    // Bland: lowest variable id among improving nonbasics.
    std::size_t enter = n;
    double dir = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const bool at_lower = value[j] == 0.0;
      double d = 0.0;
      if (at_lower && cost[j] > kCostEps) d = 1.0;
      else if (!at_lower && cost[j] < -kCostEps) d = -1.0;
      if (d != 0.0 && (enter == n || nonbasic[j] < nonbasic[enter])) {
        enter = j;
        dir = d;
      }
    }
    if (enter == n) break;

    double step = upper(nonbasic[enter]);  // bound flip distance (0 <-> upper)
    std::size_t leave = m;
    bool leave_at_upper = false;
    for (std::size_t i = 0; i < m; ++i) {
      const double coef = tab[i * n + enter] * dir;
      double limit;
      bool hits_upper;
      if (coef < -kPivotEps) {
        limit = std::max(0.0, xb[i]) / -coef;
        hits_upper = false;
      } else if (coef > kPivotEps && upper(basic[i]) < kInf) {
        limit = std::max(0.0, upper(basic[i]) - xb[i]) / coef;
        hits_upper = true;
      } else {
        continue;
      }
      const double best = step;
      if (limit < best - kRatioTieEps ||
          (leave != m && std::fabs(limit - best) <= kRatioTieEps && basic[i] < basic[leave])) {
        step = limit;
        leave = i;
        leave_at_upper = hits_upper;
      }
    }
    if (leave == m) {
      if (step == kInf) throw Error(ErrorCode::numerical, "lp: unbounded direction in a bounded problem");
      value[enter] = value[enter] == 0.0 ? upper(nonbasic[enter]) : 0.0;
      ++result.pivots;
      continue;
    }

    // Pivot row `leave` on column `enter`.
    const double piv = tab[leave * n + enter];
    const double new_rhs = -rhs[leave] / piv;
    for (std::size_t l = 0; l < n; ++l) pivot_row[l] = -tab[leave * n + l] / piv;
    pivot_row[enter] = 1.0 / piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = tab[i * n + enter];
      if (f == 0.0) continue;
      rhs[i] += f * new_rhs;
      for (std::size_t l = 0; l < n; ++l) {
        tab[i * n + l] = l == enter ? f * pivot_row[l] : tab[i * n + l] + f * pivot_row[l];
      }
    }
    rhs[leave] = new_rhs;
    for (std::size_t l = 0; l < n; ++l) tab[leave * n + l] = pivot_row[l];
    const double f = cost[enter];
    for (std::size_t l = 0; l < n; ++l) {
      cost[l] = l == enter ? f * pivot_row[l] : cost[l] + f * pivot_row[l];
    }
    std::swap(basic[leave], nonbasic[enter]);
    value[enter] = leave_at_upper ? upper(nonbasic[enter]) : 0.0;
    ++result.pivots;
  }

  std::vector<double> all(n + m, 0.0);
  for (std::size_t j = 0; j < n; ++j) all[nonbasic[j]] = value[j];
  for (std::size_t i = 0; i < m; ++i) {
    double v = rhs[i];
    for (std::size_t j = 0; j < n; ++j) v += tab[i * n + j] * value[j];
    all[basic[i]] = v;
  }
  result.point.assign(dim, 0.0);
  result.objective = 0.0;
  for (std::size_t c = 0; c < dim; ++c) {
    result.point[c] = all[c] - all[dim + c];
    result.objective += objective[c] * result.point[c];
  }
  return result;
}

}  // namespace mtirl::lp
