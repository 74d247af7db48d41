#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcr/bounds.hpp"
#include "qcr/quantities.hpp"

namespace qcr {

enum class RelationId { EQ3, EQ5, EQ7, EQ9, EQ10, EQ11, EQ11_PAIR };

std::string_view to_string(RelationId id);
std::optional<RelationId> relation_from_string(std::string_view name);

/// Which measurements enter b for the multipartite relation.
enum class MultipartiteBSet {
  /// Measurements 1..N, the ones paired with memories B_1..B_N.
  MemoryPaired,
  /// All N+1 measurements.
  AllMeasurements,
};

struct RelationOptions {
  double tolerance = 1e-9;
  BoundPolicy policy = BoundPolicy::Auto;
  MultipartiteBSet b_set = MultipartiteBSet::MemoryPaired;
};

/// One checked instance of an inequality lhs >= rhs, in bits.
struct RelationReport {
  RelationId relation_id = RelationId::EQ3;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  std::optional<BoundResult> bound;
  double tolerance = 1e-9;
  bool holds = true;
  bool saturated = false;
  std::string inputs_digest;
  /// The summands of lhs, one per measurement.
  std::vector<double> terms;
  /// Named auxiliary values (entropies, identity residuals, alternative b).
  std::vector<std::pair<std::string, double>> details;

  std::optional<double> detail(std::string_view name) const;
};

/// sum_k S(dephase_k(rho)) >= -log2 b + (N-1) S(rho)
RelationReport check_uncertainty(const DensityMatrix& rho, std::span<const ProjectiveMeasurement> ms,
                                 const RelationOptions& opts = {});

/// sum_k C_RE^(k)(rho) >= -log2 b - S(rho)
RelationReport check_coherence_relation(const DensityMatrix& rho,
                                        std::span<const ProjectiveMeasurement> ms,
                                        const RelationOptions& opts = {});

/// sum_k S(M_A^(k)|B) >= -log2 b + (N-1) S(A|B), on the marginal of
/// {measured} ∪ memory.
RelationReport check_memory_uncertainty(const DensityMatrix& rho,
                                        std::span<const ProjectiveMeasurement> ms, int measured,
                                        std::span<const int> memory, const RelationOptions& opts = {});

/// sum_k D_th^(k)(B|A) >= -log2 b - S(A|B), on the marginal of
/// {measured} ∪ memory.
RelationReport check_discord_relation(const DensityMatrix& rho, std::span<const ProjectiveMeasurement> ms,
                                      int measured, std::span<const int> memory,
                                      const RelationOptions& opts = {});

/// S(M_A|B_k) >= S(M_A|B_0) - S(A|B_0) for a state on parties (A, B_0, B_k).
/// The right side is also recomputed through a purification of the state.
RelationReport check_data_processing_step(const DensityMatrix& rho, const ProjectiveMeasurement& m,
                                          const RelationOptions& opts = {});

/// sum_{k=0}^N S(M_A^(k)|B_k) >= -log2 b for a state on A, B_0, ..., B_N with
/// measurement k paired to memory B_k.
RelationReport check_multipartite_conditional(const DensityMatrix& rho,
                                              std::span<const ProjectiveMeasurement> ms,
                                              const RelationOptions& opts = {});

/// S(M_1|B_1) + S(M_2|B_2) >= -log2 b(M_1, M_2) on parties (A, B_1, B_2).
RelationReport check_tripartite_pair(const DensityMatrix& rho, const ProjectiveMeasurement& m1,
                                     const ProjectiveMeasurement& m2, const RelationOptions& opts = {});

/// 64-bit FNV-1a over layout, matrix entries, bases and any extra integers,
/// as 16 hex digits.
std::string inputs_digest(const DensityMatrix& rho, std::span<const ProjectiveMeasurement> ms,
                          std::span<const int> extra = {});

}  // namespace qcr
