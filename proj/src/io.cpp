#include "qcr/io.hpp"

#include <fstream>
#include <sstream>

namespace qcr::io {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw Error(ErrorKind::BadInput, "expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw Error(ErrorKind::BadInput, std::string("missing field '") + name + "'");
  return *it;
}

std::vector<std::vector<double>> real_rows(const json& j, const char* name) {
  const json& rows = field(j, name);
  if (!rows.is_array()) throw Error(ErrorKind::BadInput, std::string("'") + name + "' is not an array");
  std::vector<std::vector<double>> out;
  for (const json& row : rows) {
    if (!row.is_array()) {
      throw Error(ErrorKind::BadInput, std::string("'") + name + "' must be a 2-D array");
    }
    std::vector<double> r;
    for (const json& x : row) {
      if (!x.is_number()) {
        throw Error(ErrorKind::BadInput, std::string("'") + name + "' has a non-numeric entry");
      }
      r.push_back(x.get<double>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

ComplexMatrix combine(const std::vector<std::vector<double>>& re,
                      const std::vector<std::vector<double>>& im, const char* what) {
  if (re.size() != im.size()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": re and im have different row counts");
  }
  const std::size_t cols = re.empty() ? 0 : re.front().size();
  ComplexMatrix m(static_cast<Eigen::Index>(re.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < re.size(); ++i) {
    if (re[i].size() != cols || im[i].size() != cols) {
      throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": ragged or mismatched rows");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = Complex(re[i][k], im[i][k]);
    }
  }
  return m;
}

std::pair<json, json> split(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rr = json::array();
    json ir = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).real());
      ir.push_back(m(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {std::move(re), std::move(im)};
}

std::vector<int> int_list(const json& j, const char* name) {
  if (!j.is_array()) throw Error(ErrorKind::BadInput, std::string("'") + name + "' is not an array");
  std::vector<int> out;
  for (const json& x : j) {
    if (!x.is_number_integer()) {
      throw Error(ErrorKind::BadInput, std::string("'") + name + "' must hold integers");
    }
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

DensityMatrix state_from_json(const json& j, const Tolerances& tol) {
  const std::vector<int> dims = int_list(field(j, "dims"), "dims");
  ComplexMatrix m = combine(real_rows(j, "re"), real_rows(j, "im"), "state");
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "state matrix is not square and non-empty");
  }
  return DensityMatrix::validate(m, SubsystemLayout(dims), tol);
}

json state_to_json(const DensityMatrix& rho) {
  auto [re, im] = split(rho.matrix());
  return json{{"dims", rho.layout().dims()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ProjectiveMeasurement measurement_from_json(const json& j) {
  const json& dim_field = field(j, "dim");
  if (!dim_field.is_number_integer()) throw Error(ErrorKind::BadInput, "'dim' must be an integer");
  const int dim = dim_field.get<int>();
  std::string label = "M";
  if (auto it = j.find("label"); it != j.end()) {
    if (!it->is_string()) throw Error(ErrorKind::BadInput, "'label' must be a string");
    label = it->get<std::string>();
  }
  // Rows are vectors; the measurement stores them as columns.
  const ComplexMatrix rows = combine(real_rows(j, "vectors_re"), real_rows(j, "vectors_im"), "measurement");
  if (rows.rows() != dim || rows.cols() != dim) {
    throw Error(ErrorKind::DimensionMismatch,
                "measurement declares dim " + std::to_string(dim) + " but has " +
                    std::to_string(rows.rows()) + " vectors of length " + std::to_string(rows.cols()));
  }
  return ProjectiveMeasurement(rows.transpose(), std::move(label));
}

json measurement_to_json(const ProjectiveMeasurement& m) {
  auto [re, im] = split(m.basis().transpose());
  return json{{"dim", m.dim()}, {"label", m.label()}, {"vectors_re", std::move(re)},
              {"vectors_im", std::move(im)}};
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadInput, "cannot read '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadInput, "malformed JSON in '" + path.string() + "': " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::BadInput, "cannot write '" + path.string() + "'");
  out << text;
}

DensityMatrix load_state(const std::filesystem::path& path) {
  try {
    return state_from_json(read_json(path));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadInput, path.string() + ": " + e.what());
  }
}

ProjectiveMeasurement load_measurement(const std::filesystem::path& path) {
  try {
    return measurement_from_json(read_json(path));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadInput, path.string() + ": " + e.what());
  }
}

std::string to_string(BoundPolicy policy) {
  switch (policy) {
    case BoundPolicy::GivenOrder: return "given-order";
    case BoundPolicy::BestOrder: return "best-order";
    case BoundPolicy::Auto: return "auto";
  }
  return "?";
}

BoundPolicy bound_policy_from_string(const std::string& name) {
  if (name == "given-order") return BoundPolicy::GivenOrder;
  if (name == "best-order") return BoundPolicy::BestOrder;
  if (name == "auto") return BoundPolicy::Auto;
  throw Error(ErrorKind::BadInput, "unknown b policy '" + name + "'");
}

std::string to_string(MultipartiteBSet set) {
  return set == MultipartiteBSet::MemoryPaired ? "paired" : "all";
}

MultipartiteBSet b_set_from_string(const std::string& name) {
  if (name == "paired") return MultipartiteBSet::MemoryPaired;
  if (name == "all") return MultipartiteBSet::AllMeasurements;
  throw Error(ErrorKind::BadInput, "unknown b set '" + name + "'");
}

RelationReport evaluate(const RelationInstance& in) {
  const auto& ms = in.measurements;
  auto require_count = [&](std::size_t n) {
    if (ms.size() != n) {
      throw Error(ErrorKind::DimensionMismatch, std::string(qcr::to_string(in.relation_id)) + " takes " +
                                                    std::to_string(n) + " measurements, got " +
                                                    std::to_string(ms.size()));
    }
  };
  std::vector<int> memory = in.memory;
  if (memory.empty()) {
    for (int p = 0; p < in.state.layout().parties(); ++p) {
      if (p != in.measured) memory.push_back(p);
    }
  }

  switch (in.relation_id) {
    case RelationId::EQ3:
      return check_uncertainty(in.state, ms, in.options);
    case RelationId::EQ5:
      return check_coherence_relation(in.state, ms, in.options);
    case RelationId::EQ7:
      return check_memory_uncertainty(in.state, ms, in.measured, memory, in.options);
    case RelationId::EQ9:
      return check_discord_relation(in.state, ms, in.measured, memory, in.options);
    case RelationId::EQ10:
      require_count(1);
      return check_data_processing_step(in.state, ms[0], in.options);
    case RelationId::EQ11:
      return check_multipartite_conditional(in.state, ms, in.options);
    case RelationId::EQ11_PAIR:
      require_count(2);
      return check_tripartite_pair(in.state, ms[0], ms[1], in.options);
  }
  throw Error(ErrorKind::BadInput, "unknown relation");
}

json report_to_json(const RelationReport& r) {
  json j{{"relation_id", std::string(qcr::to_string(r.relation_id))},
         {"lhs_bits", r.lhs},
         {"rhs_bits", r.rhs},
         {"residual_bits", r.residual},
         {"tolerance", r.tolerance},
         {"holds", r.holds},
         {"saturated", r.saturated},
         {"inputs_digest", r.inputs_digest},
         {"terms_bits", r.terms}};
  if (r.bound) {
    j["bound"] = json{{"b", r.bound->b},
                      {"neg_log2_b", r.bound->neg_log2_b},
                      {"ordering", r.bound->ordering},
                      {"method", std::string(qcr::to_string(r.bound->method))}};
  }
  json details = json::object();
  for (const auto& [k, v] : r.details) details[k] = v;
  j["details"] = std::move(details);
  return j;
}

json bundle_to_json(const RelationInstance& in, const RelationReport& report) {
  json ms = json::array();
  for (const auto& m : in.measurements) ms.push_back(measurement_to_json(m));
  return json{{"relation_id", std::string(qcr::to_string(in.relation_id))},
              {"state", state_to_json(in.state)},
              {"measurements", std::move(ms)},
              {"measured", in.measured},
              {"memory", in.memory},
              {"options",
               {{"tolerance", in.options.tolerance},
                {"b_policy", to_string(in.options.policy)},
                {"b_set", to_string(in.options.b_set)}}},
              {"report", report_to_json(report)}};
}

RelationInstance bundle_from_json(const json& j) {
  try {
    RelationInstance in;
    const std::string id = field(j, "relation_id").get<std::string>();
    auto rel = relation_from_string(id);
    if (!rel) throw Error(ErrorKind::BadInput, "unknown relation_id '" + id + "'");
    in.relation_id = *rel;
    in.state = state_from_json(field(j, "state"));
    for (const json& m : field(j, "measurements")) in.measurements.push_back(measurement_from_json(m));
    in.measured = j.value("measured", 0);
    if (auto it = j.find("memory"); it != j.end()) in.memory = int_list(*it, "memory");
    if (auto it = j.find("options"); it != j.end()) {
      in.options.tolerance = it->value("tolerance", in.options.tolerance);
      in.options.policy = bound_policy_from_string(it->value("b_policy", std::string("auto")));
      in.options.b_set = b_set_from_string(it->value("b_set", std::string("paired")));
    }
    return in;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadInput, std::string("bundle: ") + e.what());
  }
}

}  // namespace qcr::io
