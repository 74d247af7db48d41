#include "qcr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <thread>

#include "qcr/io.hpp"
#include "qcr/sweep.hpp"

namespace qcr::cli {

namespace {

struct Options {
  double tolerance = 1e-9;
  bool nats = false;
  std::string b_policy = "auto";
  std::string b_set = "paired";
  std::string out_path;
  std::string bundle_path;
  int measured = 0;
  std::vector<int> memory;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::vector<std::string> inputs;
  int mub_dim = 2;
};

class Printer {
 public:
  Printer(std::ostream& os, bool nats) : os_(os), scale_(nats ? std::numbers::ln2 : 1.0) {}

  // Values below 1e-12 in magnitude are rounding noise at display precision.
  std::string num(double v) const {
    if (std::abs(v) < 1e-12) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
  }
  std::string info(double bits) const { return num(bits * scale_); }
  const char* unit() const { return scale_ == 1.0 ? "bits" : "nats"; }

  void kv(const std::string& key, const std::string& value) { os_ << key << ": " << value << '\n'; }
  void info_kv(const std::string& key, double bits) { kv(key, info(bits)); }
  std::ostream& stream() { return os_; }

 private:
  std::ostream& os_;
  double scale_;
};

std::string join(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

void print_report(Printer& p, const RelationReport& r) {
  p.kv("relation", std::string(to_string(r.relation_id)));
  p.kv("units", p.unit());
  if (r.bound) {
    p.kv("b", p.num(r.bound->b));
    p.info_kv("neg_log2_b", r.bound->neg_log2_b);
    p.kv("b_ordering", join(r.bound->ordering));
    p.kv("b_method", std::string(to_string(r.bound->method)));
  }
  for (const auto& [key, value] : r.details) {
    if (key == "entanglement_witnessed") {
      p.kv(key, value != 0.0 ? "true" : "false");
    } else if (key == "purification_error") {
      p.kv(key, p.num(value));
    } else {
      p.info_kv(key, value);
    }
  }
  p.info_kv("lhs", r.lhs);
  p.info_kv("rhs", r.rhs);
  p.info_kv("residual", r.residual);
  p.kv("tolerance", p.num(r.tolerance));
  p.kv("holds", r.holds ? "true" : "false");
  p.kv("saturated", r.saturated ? "true" : "false");
  p.kv("inputs_digest", r.inputs_digest);
}

RelationOptions relation_options(const Options& o) {
  RelationOptions r;
  r.tolerance = o.tolerance;
  r.policy = io::bound_policy_from_string(o.b_policy);
  r.b_set = io::b_set_from_string(o.b_set);
  return r;
}

std::vector<ProjectiveMeasurement> load_measurements(const std::vector<std::string>& paths) {
  std::vector<ProjectiveMeasurement> ms;
  for (const auto& p : paths) ms.push_back(io::load_measurement(p));
  return ms;
}

void require_inputs(const Options& o, std::size_t min_count, const char* usage) {
  if (o.inputs.size() < min_count) throw Error(ErrorKind::BadInput, std::string("usage: ") + usage);
}

// Emits the report, then handles the violation path. Returns the exit code.
int conclude(const io::RelationInstance& instance, const RelationReport& report, const Options& o,
             std::ostream& err) {
  if (report.holds) return kExitOk;
  const std::string path =
      o.bundle_path.empty() ? "counterexample_" + report.inputs_digest + ".json" : o.bundle_path;
  io::write_text(path, io::bundle_to_json(instance, report).dump(2) + "\n");
  err << "violation: " << to_string(report.relation_id) << " residual " << report.residual
      << " exceeds tolerance " << report.tolerance << "; counterexample written to " << path << '\n';
  return kExitViolation;
}

// Writes the text either to --out or to `out`.
void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
  } else {
    io::write_text(o.out_path, text);
  }
}

int cmd_entropy(const Options& o, std::ostream& out) {
  require_inputs(o, 1, "entropy STATE");
  const DensityMatrix rho = io::load_state(o.inputs[0]);
  const double s = von_neumann_entropy(rho) * (o.nats ? std::numbers::ln2 : 1.0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.12g\n", s);
  emit(o, buf, out);
  return kExitOk;
}

int cmd_coherence(const Options& o, std::ostream& out, std::ostream& err) {
  require_inputs(o, 3, "coherence STATE MEASUREMENT MEASUREMENT [MEASUREMENT...]");
  io::RelationInstance in;
  in.relation_id = RelationId::EQ5;
  in.state = io::load_state(o.inputs[0]);
  in.measurements = load_measurements({o.inputs.begin() + 1, o.inputs.end()});
  in.options = relation_options(o);
  const RelationReport r = io::evaluate(in);

  std::ostringstream text;
  Printer p(text, o.nats);
  for (std::size_t k = 0; k < in.measurements.size(); ++k) {
    p.info_kv("coherence[" + std::to_string(k) + "] " + in.measurements[k].label(),
              rel_entropy_coherence(in.state, in.measurements[k]));
  }
  print_report(p, r);
  emit(o, text.str(), out);
  return conclude(in, r, o, err);
}

int cmd_discord(const Options& o, std::ostream& out, std::ostream& err) {
  require_inputs(o, 3, "discord STATE MEASUREMENT MEASUREMENT [MEASUREMENT...] [--measured k]");
  io::RelationInstance in;
  in.relation_id = RelationId::EQ9;
  in.state = io::load_state(o.inputs[0]);
  in.measurements = load_measurements({o.inputs.begin() + 1, o.inputs.end()});
  in.measured = o.measured;
  in.memory = o.memory;
  in.options = relation_options(o);
  const RelationReport r = io::evaluate(in);

  std::vector<int> memory = o.memory;
  if (memory.empty()) {
    for (int p = 0; p < in.state.layout().parties(); ++p) {
      if (p != o.measured) memory.push_back(p);
    }
  }
  std::vector<int> keep = memory;
  keep.push_back(o.measured);
  std::sort(keep.begin(), keep.end());
  const DensityMatrix local =
      static_cast<int>(keep.size()) == in.state.layout().parties() ? in.state : partial_trace(in.state, keep);
  const int local_measured = static_cast<int>(std::find(keep.begin(), keep.end(), o.measured) - keep.begin());

  std::ostringstream text;
  Printer p(text, o.nats);
  for (std::size_t k = 0; k < in.measurements.size(); ++k) {
    const auto& m = in.measurements[k];
    const DiscordBreakdown d = thermal_discord(local, m, local_measured);
    const double identity = thermal_discord_identity(local, m, local_measured);
    const std::string tag = "discord[" + std::to_string(k) + "] " + m.label();
    p.kv(tag, "avg_conditional_entropy=" + p.info(d.avg_conditional_entropy) +
                  " post_meas_marginal_entropy=" + p.info(d.post_meas_marginal_entropy) +
                  " joint_entropy=" + p.info(d.joint_entropy) + " discord=" + p.info(d.discord) +
                  " identity_residual=" + p.num(std::abs(d.discord - identity)));
  }
  print_report(p, r);
  emit(o, text.str(), out);
  return conclude(in, r, o, err);
}

int cmd_multi(const Options& o, std::ostream& out, std::ostream& err) {
  require_inputs(o, 4, "multi STATE M0 M1 ... MN (state on N+2 parties, N >= 2)");
  io::RelationInstance in;
  in.relation_id = RelationId::EQ11;
  in.state = io::load_state(o.inputs[0]);
  in.measurements = load_measurements({o.inputs.begin() + 1, o.inputs.end()});
  in.options = relation_options(o);
  const RelationReport r = io::evaluate(in);

  std::ostringstream text;
  Printer p(text, o.nats);
  for (std::size_t k = 0; k < r.terms.size(); ++k) {
    p.info_kv("post_conditional_entropy[" + std::to_string(k) + "] " + in.measurements[k].label() +
                  "|B" + std::to_string(k),
              r.terms[k]);
  }
  p.kv("b_set", io::to_string(in.options.b_set));
  print_report(p, r);
  emit(o, text.str(), out);
  return conclude(in, r, o, err);
}

int cmd_bound(const Options& o, std::ostream& out) {
  require_inputs(o, 2, "bound MEASUREMENT MEASUREMENT [MEASUREMENT...]");
  const auto ms = load_measurements(o.inputs);
  const BoundPolicy policy =
      o.b_policy == "auto" ? BoundPolicy::BestOrder : io::bound_policy_from_string(o.b_policy);
  const BoundResult best = bound_b(ms, policy);

  std::ostringstream text;
  Printer p(text, o.nats);
  p.kv("b", p.num(best.b));
  p.info_kv("neg_log2_b", best.neg_log2_b);
  p.kv("units", p.unit());
  p.kv("ordering", join(best.ordering));
  p.kv("policy", io::to_string(policy));
  if (ms.size() <= 4) {
    for (const BoundResult& r : bound_b_all_orders(ms)) {
      p.kv("order " + join(r.ordering), "b=" + p.num(r.b) + " neg_log2_b=" + p.info(r.neg_log2_b));
    }
  }
  emit(o, text.str(), out);
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  require_inputs(o, 1, "sweep CONFIG");
  const std::filesystem::path config_path = o.inputs[0];
  SweepConfig config = sweep_config_from_json(io::read_json(config_path), config_path.parent_path());
  if (o.seed) config.ensemble.seed = *o.seed;
  const SweepResult result = run_sweep(config, o.threads);
  emit(o, sweep_csv(result), out);

  std::ostream& summary_stream = o.out_path.empty() ? err : out;
  Printer p(summary_stream, o.nats);
  const SweepSummary& s = result.summary;
  p.kv("relation", std::string(to_string(config.relation_id)));
  p.kv("instances", std::to_string(s.instances));
  p.kv("seed", std::to_string(config.ensemble.seed));
  p.info_kv("min_residual", s.min_residual);
  p.kv("violations", std::to_string(s.violations));
  p.kv("saturated", std::to_string(s.saturated));
  if (config.relation_id == RelationId::EQ9) p.kv("max_identity_residual", p.num(s.max_identity_residual));
  if (config.relation_id == RelationId::EQ11) {
    p.kv("b_set", io::to_string(config.options.b_set));
    p.kv("alternative_b_set_violations", std::to_string(s.alternative_violations));
    p.info_kv("alternative_b_set_min_residual", s.min_alternative_residual);
  }
  if (result.counterexample) return conclude(*result.counterexample, *result.counterexample_report, o, err);
  return kExitOk;
}

int cmd_replay(const Options& o, std::ostream& out, std::ostream& err) {
  require_inputs(o, 1, "replay BUNDLE");
  io::RelationInstance in = io::bundle_from_json(io::read_json(o.inputs[0]));
  const RelationReport r = io::evaluate(in);
  std::ostringstream text;
  Printer p(text, o.nats);
  print_report(p, r);
  emit(o, text.str(), out);
  return conclude(in, r, o, err);
}

int cmd_mub(const Options& o, std::ostream& out) {
  const auto family = mub_family(o.mub_dim);
  const std::filesystem::path dir = o.out_path.empty() ? "." : o.out_path;
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto path = dir / ("mub" + std::to_string(o.mub_dim) + "_" + std::to_string(k) + ".json");
    io::write_text(path, io::measurement_to_json(family[k]).dump(2) + "\n");
    out << path.string() << '\n';
  }
  return kExitOk;
}

int run_impl(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherence, thermal discord and conditional entropy complementary relations", "qcr"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tolerance", o.tolerance, "Verdict tolerance in bits")->check(CLI::NonNegativeNumber);
    sub->add_flag("--nats", o.nats, "Display information quantities in nats");
    sub->add_option("--b-policy", o.b_policy, "Ordering policy for b")
        ->check(CLI::IsMember({"given-order", "best-order", "auto"}));
    sub->add_option("--out", o.out_path, "Write the output to this path");
    sub->add_option("--bundle", o.bundle_path, "Counterexample bundle path");
  };

  auto* entropy = app.add_subcommand("entropy", "Von Neumann entropy of a state file");
  entropy->add_option("state", o.inputs, "State file")->required();
  entropy->add_flag("--nats", o.nats, "Print in nats");
  entropy->add_option("--out", o.out_path, "Write the value to this path");

  auto* coherence = app.add_subcommand("coherence", "Coherence per basis and the coherence relation");
  coherence->add_option("files", o.inputs, "STATE followed by two or more measurement files")->required();
  add_common(coherence);

  auto* discord = app.add_subcommand("discord", "Thermal discord per basis and the discord relation");
  discord->add_option("files", o.inputs, "STATE followed by two or more measurement files")->required();
  discord->add_option("--measured", o.measured, "Index of the measured party");
  discord->add_option("--memory", o.memory, "Memory parties (default: all others)");
  add_common(discord);

  auto* multi = app.add_subcommand("multi", "Post-measurement conditional entropy relation");
  multi->add_option("files", o.inputs, "STATE on N+2 parties followed by N+1 measurement files")->required();
  multi->add_option("--b-set", o.b_set, "Measurements entering b")->check(CLI::IsMember({"paired", "all"}));
  add_common(multi);

  auto* bound = app.add_subcommand("bound", "The overlap quantity b of a measurement set");
  bound->add_option("files", o.inputs, "Two or more measurement files")->required();
  bound->add_flag("--nats", o.nats, "Display -log b in nats");
  bound->add_option("--b-policy", o.b_policy, "Ordering policy")
      ->check(CLI::IsMember({"given-order", "best-order", "auto"}));
  bound->add_option("--out", o.out_path, "Write the output to this path");

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep of one relation; CSV output");
  sweep->add_option("config", o.inputs, "Sweep config file")->required();
  sweep->add_option("--out", o.out_path, "CSV output path (default stdout)");
  sweep->add_option("--seed", o.seed, "Override the master seed");
  sweep->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--bundle", o.bundle_path, "Counterexample bundle path");
  sweep->add_flag("--nats", o.nats, "Display summary values in nats");

  auto* replay = app.add_subcommand("replay", "Re-run the instance stored in a counterexample bundle");
  replay->add_option("file", o.inputs, "Bundle file")->required();
  replay->add_option("--out", o.out_path, "Write the report to this path");
  replay->add_flag("--nats", o.nats, "Display in nats");
  replay->add_option("--bundle", o.bundle_path, "Where to write the bundle if the instance still fails");

  auto* mub = app.add_subcommand("mub", "Write the mutually unbiased bases of a prime dimension");
  mub->add_option("--dim", o.mub_dim, "Prime dimension")->required();
  mub->add_option("--out", o.out_path, "Output directory (default .)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (*entropy) return cmd_entropy(o, out);
    if (*coherence) return cmd_coherence(o, out, err);
    if (*discord) return cmd_discord(o, out, err);
    if (*multi) return cmd_multi(o, out, err);
    if (*bound) return cmd_bound(o, out);
    if (*sweep) return cmd_sweep(o, out, err);
    if (*replay) return cmd_replay(o, out, err);
    if (*mub) return cmd_mub(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_impl(args, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace qcr::cli
