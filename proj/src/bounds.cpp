#include "qcr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcr {

std::string_view to_string(BoundMethod method) {
  return method == BoundMethod::Chain ? "chain" : "brute_force";
}

namespace {

void check_sequence(std::span<const ProjectiveMeasurement> ms) {
  if (ms.size() < 2) {
    throw Error(ErrorKind::TooFewMeasurements,
                "b needs at least 2 measurements, got " + std::to_string(ms.size()));
  }
  for (const auto& m : ms) {
    if (m.dim() != ms.front().dim()) {
      throw Error(ErrorKind::DimensionMismatch, "measurements act on different dimensions");
    }
  }
}

BoundResult make_result(double b, std::vector<int> ordering, BoundMethod method) {
  BoundResult r;
  r.b = b;
  r.neg_log2_b = -std::log2(b);
  r.ordering = std::move(ordering);
  r.method = method;
  return r;
}

std::vector<int> identity_order(std::size_t n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

// Neumaier summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double chain_value(std::span<const ProjectiveMeasurement> ms, std::span<const int> order) {
  const int d = ms.front().dim();
  const RealMatrix first = overlap_matrix(ms[order[0]], ms[order[1]]);
  std::vector<double> u(d);
  for (int j = 0; j < d; ++j) u[j] = first.col(j).maxCoeff();

  for (std::size_t k = 1; k + 1 < order.size(); ++k) {
    const RealMatrix c = overlap_matrix(ms[order[k]], ms[order[k + 1]]);
    std::vector<double> next(d);
    for (int j = 0; j < d; ++j) {
      CompensatedSum acc;
      for (int i = 0; i < d; ++i) acc.add(u[i] * c(i, j));
      next[j] = acc.value();
    }
    u.swap(next);
  }
  return *std::max_element(u.begin(), u.end());
}

}  // namespace

BoundResult bound_b_ordered(std::span<const ProjectiveMeasurement> ms) {
  check_sequence(ms);
  const std::vector<int> order = identity_order(ms.size());
  return make_result(chain_value(ms, order), order, BoundMethod::Chain);
}

BoundResult bound_b_oracle(std::span<const ProjectiveMeasurement> ms) {
  check_sequence(ms);
  const int d = ms.front().dim();
  const int n = static_cast<int>(ms.size());
  if (std::pow(static_cast<double>(d), n) > kMaxOracleTuples) {
    throw Error(ErrorKind::InstanceTooLarge,
                std::to_string(d) + "^" + std::to_string(n) + " index tuples exceed the oracle limit");
  }

  std::vector<RealMatrix> links;
  for (int k = 0; k + 1 < n; ++k) links.push_back(overlap_matrix(ms[k], ms[k + 1]));

  // Walk (i_2, ..., i_N) as an odometer; for each tuple take the max over i_1
  // explicitly and add the product to the bucket of i_N.
  std::vector<double> bucket(d, 0.0);
  std::vector<int> idx(n, 0);
  while (true) {
    double best_first = 0.0;
    for (int i1 = 0; i1 < d; ++i1) best_first = std::max(best_first, links[0](i1, idx[1]));
    double term = best_first;
    for (int k = 1; k + 1 < n; ++k) term *= links[k](idx[k], idx[k + 1]);
    bucket[idx[n - 1]] += term;

    int pos = 1;
    while (pos < n && ++idx[pos] == d) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return make_result(*std::max_element(bucket.begin(), bucket.end()), identity_order(ms.size()),
                     BoundMethod::BruteForce);
}

std::vector<BoundResult> bound_b_all_orders(std::span<const ProjectiveMeasurement> ms) {
  check_sequence(ms);
  if (ms.size() > static_cast<std::size_t>(kMaxBestOrderMeasurements)) {
    throw Error(ErrorKind::TooManyMeasurements,
                std::to_string(ms.size()) + " measurements exceed the ordering-search limit of " +
                    std::to_string(kMaxBestOrderMeasurements));
  }
  std::vector<BoundResult> out;
  std::vector<int> order = identity_order(ms.size());
  do {
    out.push_back(make_result(chain_value(ms, order), order, BoundMethod::Chain));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

BoundResult bound_b_best_order(std::span<const ProjectiveMeasurement> ms) {
  // Orderings equal up to rounding count as ties.
  constexpr double kTie = 1e-15;
  std::vector<BoundResult> all = bound_b_all_orders(ms);
  std::size_t best = 0;
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].b < all[best].b - kTie) best = i;
  }
  return all[best];
}

BoundResult bound_b(std::span<const ProjectiveMeasurement> ms, BoundPolicy policy) {
  switch (policy) {
    case BoundPolicy::GivenOrder:
      return bound_b_ordered(ms);
    case BoundPolicy::BestOrder:
      return bound_b_best_order(ms);
    case BoundPolicy::Auto:
      break;
  }
  if (ms.size() <= static_cast<std::size_t>(kAutoBestOrderLimit)) return bound_b_best_order(ms);
  return bound_b_ordered(ms);
}

}  // namespace qcr
