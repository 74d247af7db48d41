#include "qcr/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <limits>
#include <thread>

namespace qcr {

namespace {

using io::json;

int default_measurement_count(RelationId id, const SubsystemLayout& layout) {
  switch (id) {
    case RelationId::EQ10: return 1;
    case RelationId::EQ11: return layout.parties() - 1;
    default: return 2;
  }
}

int measured_dim(const SweepConfig& c) {
  switch (c.relation_id) {
    case RelationId::EQ3:
    case RelationId::EQ5: return c.ensemble.layout.total();
    case RelationId::EQ7:
    case RelationId::EQ9: return c.ensemble.layout.dim(c.measured);
    default: return c.ensemble.layout.dim(0);
  }
}

}  // namespace

SweepConfig sweep_config_from_json(const json& j, const std::filesystem::path& base_dir) {
  try {
    SweepConfig c;
    if (!j.is_object()) throw Error(ErrorKind::BadInput, "sweep config must be a JSON object");
    const std::string id = j.at("relation_id").get<std::string>();
    auto rel = relation_from_string(id);
    if (!rel) throw Error(ErrorKind::BadInput, "unknown relation_id '" + id + "'");
    c.relation_id = *rel;

    const json& e = j.at("ensemble");
    c.ensemble.layout = SubsystemLayout(e.at("dims").get<std::vector<int>>());
    const std::string sampler = e.value("sampler", std::string("hilbert_schmidt_mixed"));
    auto kind = sampler_from_string(sampler);
    if (!kind) throw Error(ErrorKind::BadInput, "unknown sampler '" + sampler + "'");
    c.ensemble.sampler = *kind;
    c.ensemble.rank = e.value("rank", 1);
    c.ensemble.count = e.at("count").get<int>();
    c.ensemble.seed = e.value("seed", std::uint64_t{0});
    c.ensemble.check();

    c.measured = j.value("measured", 0);
    if (auto it = j.find("memory"); it != j.end()) c.memory = it->get<std::vector<int>>();
    c.options.tolerance = j.value("tolerance", c.options.tolerance);
    c.options.policy = io::bound_policy_from_string(j.value("b_policy", std::string("auto")));
    c.options.b_set = io::b_set_from_string(j.value("b_set", std::string("paired")));

    c.n_measurements = default_measurement_count(c.relation_id, c.ensemble.layout);
    const json ms = j.value("measurements", json{{"policy", "random"}});
    const std::string policy = ms.value("policy", std::string("random"));
    if (policy == "fixed") {
      c.policy = MeasurementPolicy::Fixed;
      for (const json& f : ms.at("files")) {
        std::filesystem::path p = f.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        c.fixed.push_back(io::load_measurement(p));
      }
      c.n_measurements = static_cast<int>(c.fixed.size());
    } else if (policy == "random" || policy == "mub") {
      c.policy = policy == "random" ? MeasurementPolicy::Random : MeasurementPolicy::Mub;
      c.n_measurements = ms.value("count", c.n_measurements);
      if (auto it = ms.find("indices"); it != ms.end()) {
        c.mub_indices = it->get<std::vector<int>>();
        c.n_measurements = static_cast<int>(c.mub_indices.size());
      }
    } else {
      throw Error(ErrorKind::BadInput, "unknown measurement policy '" + policy + "'");
    }
    if (c.n_measurements < 1) throw Error(ErrorKind::BadInput, "no measurements configured");

    const int d = measured_dim(c);
    for (const auto& m : c.fixed) {
      if (m.dim() != d) {
        throw Error(ErrorKind::DimensionMismatch, "measurement '" + m.label() + "' has dimension " +
                                                      std::to_string(m.dim()) + ", expected " +
                                                      std::to_string(d));
      }
    }
    if (c.policy == MeasurementPolicy::Mub) {
      const auto family = mub_family(d);
      if (c.mub_indices.empty()) {
        for (int k = 0; k < c.n_measurements; ++k) c.mub_indices.push_back(k);
      }
      for (int k : c.mub_indices) {
        if (k < 0 || k >= static_cast<int>(family.size())) {
          throw Error(ErrorKind::BadInput, "MUB index " + std::to_string(k) + " out of range");
        }
      }
    }
    // Build instance 0 once so structural errors surface as config errors.
    evaluate(sweep_instance(c, 0));
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadInput, std::string("sweep config: ") + e.what());
  }
}

io::RelationInstance sweep_instance(const SweepConfig& c, std::uint64_t index) {
  const std::uint64_t seed = hash64(c.ensemble.seed, index);
  io::RelationInstance in;
  in.relation_id = c.relation_id;
  in.state = sample_state(c.ensemble.layout, c.ensemble.sampler, c.ensemble.rank, hash64(seed, 0));
  in.measured = c.measured;
  in.memory = c.memory;
  in.options = c.options;

  const int d = measured_dim(c);
  switch (c.policy) {
    case MeasurementPolicy::Fixed:
      in.measurements = c.fixed;
      break;
    case MeasurementPolicy::Random:
      for (int k = 0; k < c.n_measurements; ++k) {
        in.measurements.push_back(sample_measurement(d, hash64(seed, static_cast<std::uint64_t>(k) + 1)));
      }
      break;
    case MeasurementPolicy::Mub: {
      const auto family = mub_family(d);
      for (int k : c.mub_indices) in.measurements.push_back(family[k]);
      break;
    }
  }
  return in;
}

SweepResult run_sweep(const SweepConfig& config, unsigned threads) {
  const auto count = static_cast<std::size_t>(config.ensemble.count);
  std::vector<std::optional<SweepRow>> rows(count);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      SweepRow row;
      row.instance_index = i;
      row.seed = hash64(config.ensemble.seed, i);
      row.report = evaluate(sweep_instance(config, i));
      rows[i] = std::move(row);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  SweepResult result;
  SweepSummary& s = result.summary;
  s.min_residual = std::numeric_limits<double>::infinity();
  s.min_alternative_residual = std::numeric_limits<double>::infinity();
  for (auto& row : rows) {
    const RelationReport& r = row->report;
    ++s.instances;
    s.min_residual = std::min(s.min_residual, r.residual);
    if (r.saturated) ++s.saturated;
    if (!r.holds) {
      ++s.violations;
      if (!result.counterexample) {
        result.counterexample = sweep_instance(config, row->instance_index);
        result.counterexample_report = r;
      }
    }
    if (auto gap = r.detail("identity_residual")) {
      s.max_identity_residual = std::max(s.max_identity_residual, *gap);
    }
    if (auto alt = r.detail("alternative_residual")) {
      s.min_alternative_residual = std::min(s.min_alternative_residual, *alt);
      if (*alt < -r.tolerance) ++s.alternative_violations;
    }
    result.rows.push_back(std::move(*row));
  }
  if (s.min_alternative_residual == std::numeric_limits<double>::infinity()) s.min_alternative_residual = 0.0;
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  char buf[512];
  for (const SweepRow& row : result.rows) {
    const RelationReport& r = row.report;
    // The data-processing step has no b; its column stays empty.
    char b[32] = "";
    if (r.bound) std::snprintf(b, sizeof b, "%.17g", r.bound->b);
    std::snprintf(buf, sizeof buf, "%llu,%llu,%s,%zu,%.17g,%.17g,%.17g,%s,%s,%s\n",
                  static_cast<unsigned long long>(row.instance_index),
                  static_cast<unsigned long long>(row.seed), std::string(to_string(r.relation_id)).c_str(),
                  r.terms.size(), r.lhs, r.rhs, r.residual, b, r.saturated ? "true" : "false",
                  r.holds ? "true" : "false");
    out += buf;
  }
  return out;
}

}  // namespace qcr
