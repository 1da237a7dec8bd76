// Command-line driver: builds and verifies the planar-lattice and
// hyperbolic-net constructions, runs the sequence/profile certifications,
// and exports graphs as CSV.  All outputs are byte-deterministic for a
// fixed command line: sampling happens only through the seeded generator.

#include "CLI11.hpp"
#include "json.hpp"

#include "umg/betaseq.hpp"
#include "umg/graphcore.hpp"
#include "umg/hyperbolic.hpp"
#include "umg/io.hpp"
#include "umg/lowdisc.hpp"
#include "umg/planar.hpp"
#include "umg/profiles.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

using json = nlohmann::ordered_json;
using umg::ConfigError;
using umg::IoError;

struct Options {
  std::string config;
  std::string alpha = "sqrt2_minus_1";
  long long n = 0;
  std::string m = "auto";
  double radius = 12.0;
  double epsilon = 1.0;
  double delta = 1.0;
  std::uint64_t seed = 0;
  long long samples = 10000;
  std::string out;

  bool alpha_set = false, n_set = false, m_set = false, radius_set = false, epsilon_set = false,
       delta_set = false, seed_set = false, samples_set = false, out_set = false;
};

void add_common_options(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "JSON config file; explicit flags override it");
  sub->add_option("--alpha", o.alpha, "rotation number label: sqrt2_minus_1 | golden_conjugate");
  sub->add_option("--n", o.n, "box half-size (planar) or scan range (sequence/profile)");
  sub->add_option("--m", o.m, "glue length, or 'auto' to calibrate");
  sub->add_option("--radius", o.radius, "ball radius of the hyperbolic net");
  sub->add_option("--epsilon", o.epsilon, "net separation");
  sub->add_option("--delta", o.delta, "metric-approximation slack");
  sub->add_option("--seed", o.seed, "seed for all sampling (required by sampling commands)");
  sub->add_option("--samples", o.samples, "number of sampled pairs");
  sub->add_option("--out", o.out, "output file path");
}

void capture_set_flags(CLI::App* sub, Options& o) {
  o.alpha_set = sub->count("--alpha") > 0;
  o.n_set = sub->count("--n") > 0;
  o.m_set = sub->count("--m") > 0;
  o.radius_set = sub->count("--radius") > 0;
  o.epsilon_set = sub->count("--epsilon") > 0;
  o.delta_set = sub->count("--delta") > 0;
  o.seed_set = sub->count("--seed") > 0;
  o.samples_set = sub->count("--samples") > 0;
  o.out_set = sub->count("--out") > 0;
}

// Merge JSON config under already-set command-line flags.
void apply_config(Options& o) {
  if (o.config.empty()) return;
  std::string text = umg::read_file(o.config);  // IoError -> exit 3
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "alpha") {
        if (!o.alpha_set) o.alpha = val.get<std::string>();
      } else if (key == "n") {
        if (!o.n_set) o.n = val.get<long long>();
        o.n_set = true;
      } else if (key == "m") {
        if (!o.m_set) o.m = val.is_string() ? val.get<std::string>()
                                            : umg::format_g17(val.get<double>());
      } else if (key == "radius") {
        if (!o.radius_set) o.radius = val.get<double>();
        o.radius_set = true;
      } else if (key == "epsilon") {
        if (!o.epsilon_set) o.epsilon = val.get<double>();
      } else if (key == "delta") {
        if (!o.delta_set) o.delta = val.get<double>();
      } else if (key == "seed") {
        if (!o.seed_set) o.seed = val.get<std::uint64_t>();
        o.seed_set = true;
      } else if (key == "samples") {
        if (!o.samples_set) o.samples = val.get<long long>();
      } else if (key == "out") {
        if (!o.out_set) o.out = val.get<std::string>();
        o.out_set = true;
      } else {
        throw ConfigError("unknown config key: " + key);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config value has the wrong type: ") + e.what());
  }
}

umg::lowdisc::QuadraticIrrational alpha_from_label(const std::string& label) {
  if (label == "sqrt2_minus_1") return umg::lowdisc::QuadraticIrrational::sqrt2_minus_1();
  if (label == "golden_conjugate") return umg::lowdisc::QuadraticIrrational::golden_conjugate();
  throw ConfigError("unknown alpha label: " + label);
}

void require_seed(const Options& o, const char* why) {
  if (!o.seed_set) throw ConfigError(std::string("--seed is required: ") + why);
}

void require_out(const Options& o) {
  if (o.out.empty()) throw ConfigError("--out is required for this command");
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

constexpr long long kCalibrationSamples = 4000;

// Shared planar setup: resolve M (calibrating when "auto") and build Gamma.
struct PlanarSetup {
  umg::planar::LatticeSpec spec;
  umg::planar::PlanarGraph full;
  double c_hat = -1.0;  // < 0 when no calibration ran
  bool calibrated = false;
};

PlanarSetup planar_setup(const Options& o) {
  if (!o.n_set) throw ConfigError("--n is required for planar commands");
  PlanarSetup s;
  s.spec.N = o.n;
  s.spec.alpha = alpha_from_label(o.alpha);
  double M;
  if (o.m == "auto") {
    require_seed(o, "calibration of M samples pairs");
    s.c_hat = umg::planar::estimate_C(s.spec, kCalibrationSamples, o.seed);
    s.calibrated = true;
    M = umg::planar::glue_length_from_C(s.c_hat);
  } else {
    try {
      std::size_t pos = 0;
      M = std::stod(o.m, &pos);
      if (pos != o.m.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw ConfigError("--m must be a number or 'auto'");
    }
    if (!(M > 0.0)) throw ConfigError("--m must be positive");
  }
  s.spec.M = M;
  umg::planar::PlanarGraph even = umg::planar::build_even(s.spec);
  umg::planar::PlanarGraph odd = umg::planar::build_odd(s.spec);
  s.full = umg::planar::glue(even, odd, M);
  return s;
}

umg::hyperbolic::HyperSpec hyper_spec(const Options& o) {
  umg::hyperbolic::HyperSpec hs;
  hs.R = o.radius;
  hs.epsilon = o.epsilon;
  hs.delta = o.delta;
  // Integer regime engages automatically once both scales reach 10: that is
  // the parameter range where rounded edge lengths stay positive.
  hs.integer_mode = (o.epsilon == o.delta) && o.epsilon >= 10.0;
  return hs;
}

json graph_stats(const umg::graphcore::MetricGraph& g) {
  umg::graphcore::UniformityReport u = umg::graphcore::uniformity_report(g);
  return json{{"vertices", g.vertex_count()},
              {"edges", g.edge_count()},
              {"max_degree", u.max_degree},
              {"min_length", u.min_length},
              {"max_length", u.max_length}};
}

int cmd_build_planar(const Options& o) {
  require_out(o);
  PlanarSetup s = planar_setup(o);
  umg::write_file(o.out, umg::graphcore::graph_csv(umg::planar::edge_records(s.full)));
  json j{{"command", "build-planar"}, {"n", s.spec.N}, {"alpha", o.alpha}, {"m", s.spec.M}};
  if (s.calibrated) j["c_hat"] = s.c_hat;
  j.update(graph_stats(s.full.graph));
  j["out"] = o.out;
  emit(j);
  return 0;
}

int cmd_verify_planar(const Options& o) {
  require_seed(o, "pair sampling");
  PlanarSetup s = planar_setup(o);
  double c_hat = s.calibrated
                     ? s.c_hat
                     : umg::planar::estimate_C(s.spec, kCalibrationSamples, o.seed);
  umg::planar::VerifyPlanarResult res =
      umg::planar::verify_planar(s.full, o.samples, o.seed, c_hat);
  if (!o.out.empty()) umg::write_file(o.out, umg::planar::report_csv(res));
  json j{{"command", "verify-planar"},
         {"n", s.spec.N},
         {"alpha", o.alpha},
         {"m", res.m},
         {"c_hat", res.c_hat},
         {"samples", o.samples},
         {"seed", o.seed},
         {"max_abs_err", res.max_abs_err},
         {"min_err", res.min_err},
         {"max_err", res.max_err},
         {"decile_max", res.decile_max},
         {"lower_bound", -(res.c_hat + 2.0 * res.m)},
         {"all_finite", res.all_finite},
         {"lower_bound_ok", res.lower_bound_ok},
         {"decile_flat", res.decile_flat},
         {"m_invariant_ok", res.m_invariant_ok},
         {"ok", res.ok()}};
  if (!o.out.empty()) j["out"] = o.out;
  emit(j);
  return res.ok() ? 0 : 1;
}

int cmd_calibrate_planar(const Options& o) {
  if (!o.n_set) throw ConfigError("--n is required for planar commands");
  require_seed(o, "calibration samples pairs");
  umg::planar::LatticeSpec spec;
  spec.N = o.n;
  spec.alpha = alpha_from_label(o.alpha);
  double c_hat = umg::planar::estimate_C(spec, o.samples, o.seed);
  json j{{"command", "calibrate-planar"},
         {"n", spec.N},
         {"alpha", o.alpha},
         {"samples", o.samples},
         {"seed", o.seed},
         {"c_hat", c_hat},
         {"m", umg::planar::glue_length_from_C(c_hat)}};
  if (!o.out.empty()) {
    umg::write_file(o.out, j.dump(2) + "\n");
    j["out"] = o.out;
  }
  emit(j);
  return 0;
}

int cmd_build_hyperbolic(const Options& o) {
  require_out(o);
  umg::hyperbolic::HyperBuild b = umg::hyperbolic::build_hyperbolic(hyper_spec(o));
  umg::write_file(o.out, umg::hyperbolic::net_csv(b.net));
  json j{{"command", "build-hyperbolic"},
         {"radius", b.net.radius},
         {"epsilon", b.net.epsilon},
         {"delta", o.delta},
         {"integer_mode", hyper_spec(o).integer_mode},
         {"points", b.net.size()},
         {"d_hat", b.D_hat},
         {"d1", b.D1},
         {"shortcut_len", b.shortcut_len},
         {"shortcuts", b.shortcut_count},
         {"shortcuts_pruned", b.pruned}};
  j.update(graph_stats(b.graph));
  j["out"] = o.out;
  emit(j);
  return 0;
}

int cmd_verify_hyperbolic(const Options& o) {
  require_seed(o, "pair sampling");
  umg::hyperbolic::HyperSpec hs = hyper_spec(o);
  umg::hyperbolic::HyperBuild b = umg::hyperbolic::build_hyperbolic(hs);
  umg::hyperbolic::VerifyHyperbolicResult res = umg::hyperbolic::verify_hyperbolic(
      b.graph, b.net, o.samples, o.seed, b.D_hat, b.D1, o.delta, hs.integer_mode);
  if (!o.out.empty()) umg::write_file(o.out, umg::hyperbolic::report_csv(res, b.net));
  json j{{"command", "verify-hyperbolic"},
         {"radius", b.net.radius},
         {"epsilon", b.net.epsilon},
         {"delta", o.delta},
         {"integer_mode", hs.integer_mode},
         {"points", b.net.size()},
         {"samples", o.samples},
         {"seed", o.seed},
         {"d_hat", b.D_hat},
         {"d1", b.D1},
         {"bound", res.bound},
         {"max_err", res.max_err},
         {"min_err", res.min_err},
         {"root_exact_max", res.root_exact_max},
         {"decile_max", res.decile_max},
         {"all_finite", res.all_finite},
         {"within_bound", res.within_bound},
         {"lower_ok", res.lower_ok},
         {"root_exact", res.root_exact},
         {"decile_flat", res.decile_flat},
         {"ok", res.ok()}};
  if (!o.out.empty()) j["out"] = o.out;
  emit(j);
  return res.ok() ? 0 : 1;
}

int cmd_verify_sequence(const Options& o) {
  const long long starts = o.n_set ? o.n : 10000;
  if (starts < 1) throw ConfigError("--n must be >= 1");
  if (starts + 10000 > umg::lowdisc::kMaxSeqIndex)
    throw ConfigError("--n too large: scan would leave the exact index range");
  umg::betaseq::BetaSequence seq(alpha_from_label(o.alpha));
  std::vector<double> grid =
      umg::betaseq::uniform_grid(-umg::betaseq::BetaSequence::D(),
                                 umg::betaseq::BetaSequence::D(), 129);
  umg::betaseq::ModsumScanResult scan =
      umg::betaseq::modsum_window_scan(seq, grid, -starts, starts, 0, {100, 1000, 10000});
  double m100 = scan.fixed_size_max[0];
  double m1000 = scan.fixed_size_max[1];
  double m10000 = scan.fixed_size_max[2];
  bool ok = m10000 <= 2.0 * m100;
  json j{{"command", "verify-sequence"},
         {"alpha", o.alpha},
         {"starts", starts},
         {"grid", 129},
         {"m100", m100},
         {"m1000", m1000},
         {"m10000", m10000},
         {"ratio", m10000 / m100},
         {"ok", ok}};
  if (!o.out.empty()) {
    umg::write_file(o.out, j.dump(2) + "\n");
    j["out"] = o.out;
  }
  emit(j);
  return ok ? 0 : 1;
}

int cmd_verify_profile(const Options& o) {
  const long long starts = o.n_set ? o.n : 10000;
  if (starts < 1) throw ConfigError("--n must be >= 1");
  if (starts + 10000 > umg::lowdisc::kMaxSeqIndex)
    throw ConfigError("--n too large: scan would leave the exact index range");
  umg::betaseq::BetaSequence seq(alpha_from_label(o.alpha));
  std::vector<double> grid = umg::betaseq::breakpoint_grid(seq, -starts, starts + 10000, 2049);
  umg::betaseq::ModsumScanResult scan =
      umg::betaseq::modsum_window_scan(seq, grid, -starts, starts, 100, {1000, 10000});
  double c_hat = scan.small_window_max;
  double w1000 = scan.fixed_size_max[0];
  double w10000 = scan.fixed_size_max[1];
  bool ok = w1000 <= 1.05 * c_hat && w10000 <= 1.05 * c_hat;
  json j{{"command", "verify-profile"},
         {"alpha", o.alpha},
         {"starts", starts},
         {"grid_points", grid.size()},
         {"c_hat", c_hat},
         {"w1000", w1000},
         {"w10000", w10000},
         {"ratio1000", w1000 / c_hat},
         {"ratio10000", w10000 / c_hat},
         {"ok", ok}};
  if (!o.out.empty()) {
    umg::write_file(o.out, j.dump(2) + "\n");
    j["out"] = o.out;
  }
  emit(j);
  return ok ? 0 : 1;
}

int cmd_export(const Options& o) {
  require_out(o);
  if (o.n_set && o.radius_set)
    throw ConfigError("export: give either --n (planar) or --radius (hyperbolic), not both");
  if (o.n_set) {
    PlanarSetup s = planar_setup(o);
    umg::write_file(o.out, umg::graphcore::graph_csv(umg::planar::edge_records(s.full)));
    json j{{"command", "export"}, {"kind", "planar"}, {"n", s.spec.N}, {"m", s.spec.M}};
    if (s.calibrated) j["c_hat"] = s.c_hat;
    j.update(graph_stats(s.full.graph));
    j["out"] = o.out;
    emit(j);
    return 0;
  }
  if (o.radius_set) {
    umg::hyperbolic::HyperBuild b = umg::hyperbolic::build_hyperbolic(hyper_spec(o));
    umg::write_file(o.out,
                    umg::graphcore::graph_csv(umg::hyperbolic::edge_records(b.graph, b.net)));
    json j{{"command", "export"},
           {"kind", "hyperbolic"},
           {"radius", b.net.radius},
           {"epsilon", b.net.epsilon},
           {"delta", o.delta},
           {"shortcuts_pruned", b.pruned}};
    j.update(graph_stats(b.graph));
    j["out"] = o.out;
    emit(j);
    return 0;
  }
  throw ConfigError("export: set --n for the planar graph or --radius for the hyperbolic one");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uniform metric-graph constructions: build, verify, export"};
  app.require_subcommand(1);

  struct Cmd {
    const char* name;
    const char* desc;
    int (*run)(const Options&);
    CLI::App* sub = nullptr;
  };
  Cmd cmds[] = {
      {"build-planar", "build the glued planar lattice and export its edges", cmd_build_planar},
      {"verify-planar", "compare planar graph distances against Euclidean ones",
       cmd_verify_planar},
      {"calibrate-planar", "estimate the one-layer closeness constant and glue length",
       cmd_calibrate_planar},
      {"build-hyperbolic", "build the hyperbolic net/tree and export the net",
       cmd_build_hyperbolic},
      {"verify-hyperbolic", "compare hyperbolic graph distances against true ones",
       cmd_verify_hyperbolic},
      {"verify-sequence", "window-sum boundedness scan of the apex sequence", cmd_verify_sequence},
      {"verify-profile", "calibrate the profile drift constant and check window growth",
       cmd_verify_profile},
      {"export", "export a graph as CSV (--n: planar, --radius: hyperbolic)", cmd_export},
  };

  Options opts;
  for (Cmd& c : cmds) {
    c.sub = app.add_subcommand(c.name, c.desc);
    add_common_options(c.sub, opts);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);

  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (Cmd& c : cmds)
      if (c.sub->parsed()) {
        capture_set_flags(c.sub, opts);
        apply_config(opts);
        return c.run(opts);
      }
    throw ConfigError("no subcommand given");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
