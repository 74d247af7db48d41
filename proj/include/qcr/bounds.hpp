#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qcr/measurement.hpp"

namespace qcr {

enum class BoundMethod { Chain, BruteForce };

std::string_view to_string(BoundMethod method);

/// The state-independent overlap quantity b of a measurement sequence.
struct BoundResult {
  double b = 1.0;
  double neg_log2_b = 0.0;
  /// Indices into the input list, in the order the chain was evaluated.
  std::vector<int> ordering;
  BoundMethod method = BoundMethod::Chain;
};

/// How the verifiers pick the measurement order that enters b.
enum class BoundPolicy {
  GivenOrder,
  BestOrder,
  /// BestOrder for at most kAutoBestOrderLimit measurements, GivenOrder above.
  Auto,
};

inline constexpr int kAutoBestOrderLimit = 5;
inline constexpr int kMaxBestOrderMeasurements = 8;
inline constexpr double kMaxOracleTuples = 1e6;

/// Chain contraction: u[i2] = max_{i1} c12[i1][i2], then u <- u^T c(k,k+1)
/// for the remaining links, and b = max_i u[i]. The middle sums are
/// compensated.
BoundResult bound_b_ordered(std::span<const ProjectiveMeasurement> ms);

/// Same quantity by enumerating every index tuple (i_1, ..., i_N). Refuses
/// instances with more than kMaxOracleTuples tuples.
BoundResult bound_b_oracle(std::span<const ProjectiveMeasurement> ms);

/// Minimum of bound_b_ordered over all N! orderings. Ties go to the
/// lexicographically smallest permutation.
BoundResult bound_b_best_order(std::span<const ProjectiveMeasurement> ms);

/// Every ordering with its b, in lexicographic permutation order.
std::vector<BoundResult> bound_b_all_orders(std::span<const ProjectiveMeasurement> ms);

BoundResult bound_b(std::span<const ProjectiveMeasurement> ms, BoundPolicy policy);

}  // namespace qcr
