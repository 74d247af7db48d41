#include "qcr/relations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>

namespace qcr {

std::string_view to_string(RelationId id) {
  switch (id) {
    case RelationId::EQ3: return "EQ3";
    case RelationId::EQ5: return "EQ5";
    case RelationId::EQ7: return "EQ7";
    case RelationId::EQ9: return "EQ9";
    case RelationId::EQ10: return "EQ10";
    case RelationId::EQ11: return "EQ11";
    case RelationId::EQ11_PAIR: return "EQ11_PAIR";
  }
  return "?";
}

std::optional<RelationId> relation_from_string(std::string_view name) {
  for (RelationId id : {RelationId::EQ3, RelationId::EQ5, RelationId::EQ7, RelationId::EQ9,
                        RelationId::EQ10, RelationId::EQ11, RelationId::EQ11_PAIR}) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

std::optional<double> RelationReport::detail(std::string_view name) const {
  for (const auto& [key, value] : details) {
    if (key == name) return value;
  }
  return std::nullopt;
}

namespace {

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  void value(double x) { bytes(&x, sizeof x); }
  void value(std::int64_t x) { bytes(&x, sizeof x); }
  void matrix(const ComplexMatrix& m) {
    value(static_cast<std::int64_t>(m.rows()));
    value(static_cast<std::int64_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        value(m(i, j).real());
        value(m(i, j).imag());
      }
    }
  }
  std::uint64_t digest() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

RelationReport finish(RelationId id, double lhs, double rhs, const RelationOptions& opts) {
  RelationReport r;
  r.relation_id = id;
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = lhs - rhs;
  r.tolerance = opts.tolerance;
  r.holds = r.residual >= -opts.tolerance;
  r.saturated = std::abs(r.residual) <= opts.tolerance;
  return r;
}

void require_pair_or_more(std::span<const ProjectiveMeasurement> ms) {
  if (ms.size() < 2) {
    throw Error(ErrorKind::TooFewMeasurements,
                "relation needs at least 2 measurements, got " + std::to_string(ms.size()));
  }
}

// Marginal on {measured} ∪ memory, with the measured party's new index and the
// memory indices in the reduced layout.
struct LocalSystem {
  DensityMatrix state;
  int measured;
  std::vector<int> memory;
};

LocalSystem localize(const DensityMatrix& rho, int measured, std::span<const int> memory) {
  const SubsystemLayout& layout = rho.layout();
  layout.dim(measured);
  std::vector<int> keep{measured};
  for (int p : memory) {
    layout.dim(p);
    if (p == measured || std::count(keep.begin(), keep.end(), p) > 0) {
      throw Error(ErrorKind::BadSubsystemIndex, "party " + std::to_string(p) + " repeated in memory");
    }
    keep.push_back(p);
  }
  std::sort(keep.begin(), keep.end());
  LocalSystem out{static_cast<int>(keep.size()) == layout.parties() ? rho : partial_trace(rho, keep), 0, {}};
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) {
    if (keep[i] == measured) {
      out.measured = i;
    } else {
      out.memory.push_back(i);
    }
  }
  return out;
}

std::vector<int> digest_extra(int measured, std::span<const int> memory) {
  std::vector<int> extra{measured};
  extra.insert(extra.end(), memory.begin(), memory.end());
  return extra;
}

}  // namespace

std::string inputs_digest(const DensityMatrix& rho, std::span<const ProjectiveMeasurement> ms,
                          std::span<const int> extra) {
  Fnv1a h;
  for (int d : rho.layout().dims()) h.value(static_cast<std::int64_t>(d));
  h.matrix(rho.matrix());
  for (const auto& m : ms) h.matrix(m.basis());
  for (int x : extra) h.value(static_cast<std::int64_t>(x));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h.digest()));
  return buf;
}

RelationReport check_uncertainty(const DensityMatrix& rho, std::span<const ProjectiveMeasurement> ms,
                                 const RelationOptions& opts) {
  require_pair_or_more(ms);
  std::vector<double> terms;
  double lhs = 0.0;
  for (const auto& m : ms) {
    terms.push_back(von_neumann_entropy(dephase(rho, m)));
    lhs += terms.back();
  }
  const double s = von_neumann_entropy(rho);
  const BoundResult bound = bound_b(ms, opts.policy);
  const auto n = static_cast<double>(ms.size());

  RelationReport r = finish(RelationId::EQ3, lhs, bound.neg_log2_b + (n - 1.0) * s, opts);
  r.bound = bound;
  r.terms = std::move(terms);
  r.details = {{"entropy", s}};
  r.inputs_digest = inputs_digest(rho, ms);
  return r;
}

RelationReport check_coherence_relation(const DensityMatrix& rho,
                                        std::span<const ProjectiveMeasurement> ms,
                                        const RelationOptions& opts) {
  require_pair_or_more(ms);
  const double s = von_neumann_entropy(rho);
  std::vector<double> terms;
  double lhs = 0.0;
  for (const auto& m : ms) {
    // Unclamped so that the residual matches the uncertainty relation exactly.
    terms.push_back(von_neumann_entropy(dephase(rho, m)) - s);
    lhs += terms.back();
  }
  const BoundResult bound = bound_b(ms, opts.policy);

  RelationReport r = finish(RelationId::EQ5, lhs, bound.neg_log2_b - s, opts);
  r.bound = bound;
  r.terms = std::move(terms);
  r.details = {{"entropy", s}};
  r.inputs_digest = inputs_digest(rho, ms);
  return r;
}

RelationReport check_memory_uncertainty(const DensityMatrix& rho,
                                        std::span<const ProjectiveMeasurement> ms, int measured,
                                        std::span<const int> memory, const RelationOptions& opts) {
  require_pair_or_more(ms);
  const LocalSystem local = localize(rho, measured, memory);
  std::vector<double> terms;
  double lhs = 0.0;
  for (const auto& m : ms) {
    terms.push_back(post_measurement_conditional_entropy(local.state, m, local.measured, local.memory));
    lhs += terms.back();
  }
  const double cond = conditional_entropy(local.state, local.memory);
  const BoundResult bound = bound_b(ms, opts.policy);
  const auto n = static_cast<double>(ms.size());

  RelationReport r = finish(RelationId::EQ7, lhs, bound.neg_log2_b + (n - 1.0) * cond, opts);
  r.bound = bound;
  r.terms = std::move(terms);
  r.details = {{"conditional_entropy", cond},
               {"entanglement_witnessed", witnesses_entanglement(cond) ? 1.0 : 0.0}};
  r.inputs_digest = inputs_digest(rho, ms, digest_extra(measured, memory));
  return r;
}

RelationReport check_discord_relation(const DensityMatrix& rho, std::span<const ProjectiveMeasurement> ms,
                                      int measured, std::span<const int> memory,
                                      const RelationOptions& opts) {
  require_pair_or_more(ms);
  const LocalSystem local = localize(rho, measured, memory);
  std::vector<double> terms;
  double lhs = 0.0;
  double identity_gap = 0.0;
  for (const auto& m : ms) {
    const DiscordBreakdown d = thermal_discord(local.state, m, local.measured);
    const double via_identity = thermal_discord_identity(local.state, m, local.measured);
    identity_gap = std::max(identity_gap, std::abs(d.discord - via_identity));
    terms.push_back(d.discord);
    lhs += d.discord;
  }
  const double cond = conditional_entropy(local.state, local.memory);
  const BoundResult bound = bound_b(ms, opts.policy);

  RelationReport r = finish(RelationId::EQ9, lhs, bound.neg_log2_b - cond, opts);
  r.bound = bound;
  r.terms = std::move(terms);
  r.details = {{"conditional_entropy", cond},
               {"entanglement_witnessed", witnesses_entanglement(cond) ? 1.0 : 0.0},
               {"identity_residual", identity_gap}};
  r.inputs_digest = inputs_digest(rho, ms, digest_extra(measured, memory));
  return r;
}

RelationReport check_data_processing_step(const DensityMatrix& rho, const ProjectiveMeasurement& m,
                                          const RelationOptions& opts) {
  if (rho.layout().parties() != 3) {
    throw Error(ErrorKind::DimensionMismatch,
                "data-processing step needs parties (A, B0, Bk), got " +
                    std::to_string(rho.layout().parties()));
  }
  const double lhs = post_measurement_conditional_entropy(rho, m, 0, {2});
  const double measured_b0 = post_measurement_conditional_entropy(rho, m, 0, {1});
  const double cond_b0 = conditional_entropy(partial_trace(rho, {0, 1}), {1});
  const double rhs = measured_b0 - cond_b0;

  // Purify to A B0 Bk C. The B0 side of the difference then equals the
  // complementary Bk C side: S(M_A|Bk C) computed on the purification.
  const PureStateVector psi = purify(rho);
  const DensityMatrix extended = psi.projector();
  const double purification_error = max_abs(partial_trace(extended, {0, 1, 2}).matrix() - rho.matrix());
  const double purified_rhs = post_measurement_conditional_entropy(extended, m, 0, {2, 3});

  RelationReport r = finish(RelationId::EQ10, lhs, rhs, opts);
  r.terms = {lhs};
  r.details = {{"post_conditional_entropy_b0", measured_b0},
               {"conditional_entropy_b0", cond_b0},
               {"purified_rhs", purified_rhs},
               {"purified_rhs_gap", std::abs(purified_rhs - rhs)},
               {"purification_error", purification_error}};
  const std::array<ProjectiveMeasurement, 1> ms{m};
  r.inputs_digest = inputs_digest(rho, ms);
  return r;
}

RelationReport check_multipartite_conditional(const DensityMatrix& rho,
                                              std::span<const ProjectiveMeasurement> ms,
                                              const RelationOptions& opts) {
  const int parties = rho.layout().parties();
  if (static_cast<int>(ms.size()) != parties - 1) {
    throw Error(ErrorKind::DimensionMismatch,
                "a state on N+2 parties needs N+1 measurements; got " + std::to_string(parties) +
                    " parties and " + std::to_string(ms.size()) + " measurements");
  }
  if (ms.size() < 3) {
    throw Error(ErrorKind::TooFewMeasurements, "multipartite relation needs N >= 2 (at least 4 parties)");
  }

  std::vector<double> terms;
  double lhs = 0.0;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    terms.push_back(post_measurement_conditional_entropy(rho, ms[k], 0, {static_cast<int>(k) + 1}));
    lhs += terms.back();
  }
  BoundResult paired = bound_b(ms.subspan(1), opts.policy);
  // Orderings refer to positions in the full measurement list.
  for (int& idx : paired.ordering) ++idx;
  const BoundResult all = bound_b(ms, opts.policy);
  const BoundResult& used = opts.b_set == MultipartiteBSet::MemoryPaired ? paired : all;
  const BoundResult& alternative = opts.b_set == MultipartiteBSet::MemoryPaired ? all : paired;

  RelationReport r = finish(RelationId::EQ11, lhs, used.neg_log2_b, opts);
  r.bound = used;
  r.terms = std::move(terms);
  r.details = {{"alternative_neg_log2_b", alternative.neg_log2_b},
               {"alternative_residual", lhs - alternative.neg_log2_b}};
  r.inputs_digest = inputs_digest(rho, ms);
  return r;
}

RelationReport check_tripartite_pair(const DensityMatrix& rho, const ProjectiveMeasurement& m1,
                                     const ProjectiveMeasurement& m2, const RelationOptions& opts) {
  if (rho.layout().parties() != 3) {
    throw Error(ErrorKind::DimensionMismatch,
                "pair relation needs parties (A, B1, B2), got " + std::to_string(rho.layout().parties()));
  }
  const double t1 = post_measurement_conditional_entropy(rho, m1, 0, {1});
  const double t2 = post_measurement_conditional_entropy(rho, m2, 0, {2});
  const std::array<ProjectiveMeasurement, 2> ms{m1, m2};
  const BoundResult bound = bound_b(ms, opts.policy);

  RelationReport r = finish(RelationId::EQ11_PAIR, t1 + t2, bound.neg_log2_b, opts);
  r.bound = bound;
  r.terms = {t1, t2};
  r.inputs_digest = inputs_digest(rho, ms);
  return r;
}

}  // namespace qcr
