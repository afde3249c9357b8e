// lmp: construct, certify and analyze Lebesgue-measure-preserving
// piecewise-affine interval maps.
//
// Exit codes: 0 success, 1 usage/parse error, 2 certification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "lmp/analysis.hpp"
#include "lmp/constructions.hpp"
#include "lmp/json_io.hpp"
#include "lmp/report.hpp"

using namespace lmp;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitCertification = 2;

Rat require_rat(const std::string& text, const std::string& what) {
  auto r = parse_rat(text);
  if (!r) {
    throw CLI::ValidationError(what, "expected an exact rational \"p/q\" (decimals are rejected), got \"" +
                                          text + "\"");
  }
  return *r;
}

IterateGuard guard_from_env() {
  IterateGuard guard;
  if (const char* env = std::getenv("LMP_DENOM_GUARD")) {
    mpz_class limit;
    if (limit.set_str(env, 10) != 0 || limit < 2) {
      std::cerr << "lmp: LMP_DENOM_GUARD must be an integer >= 2\n";
      std::exit(kExitUsage);
    }
    guard.max_denominator = limit;
  }
  return guard;
}

// "lo:hi,lo:hi,..." with rational endpoints
IntervalSet parse_interval_set(const std::string& text) {
  std::vector<Interval> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--lemma2", "expected lo:hi pairs, got \"" + item + "\"");
    parts.emplace_back(require_rat(item.substr(0, colon), "--lemma2"),
                       require_rat(item.substr(colon + 1), "--lemma2"));
  }
  return IntervalSet(std::move(parts));
}

void print_certificate(const PreservationCertificate& cert) {
  if (cert.pass) {
    std::cout << "certificate: pass\n";
  } else {
    std::cout << "certificate: fail";
    if (!cert.cells.empty()) {
      std::cout << " on cell [" << format_rat(cert.cells[0].cell.lo) << ", "
                << format_rat(cert.cells[0].cell.hi) << "], deficiency "
                << format_rat(cert.deficiency);
    }
    std::cout << "\n";
  }
}

struct GenOptions {
  std::string out;
  std::string densify_input;
  std::string conjugate_input;
  std::string homeo_input;
  std::string eps = "1/8";
  unsigned seed_level = 0;
  unsigned multiplicity = 3;
  unsigned max_level = 12;
  bool besicovitch = false;
  std::string g_slope = "1/1", g_intercept = "0/1", alpha = "1/4", beta = "1/4";
  std::string config_path, save_config_path;
};

Json gen_options_json(const GenOptions& o) {
  return Json{{"out", o.out},
              {"densifyInput", o.densify_input},
              {"conjugateInput", o.conjugate_input},
              {"homeoInput", o.homeo_input},
              {"eps", o.eps},
              {"seedLevel", o.seed_level},
              {"schedule", Json{{"multiplicity", o.multiplicity}, {"maxLevel", o.max_level}}},
              {"besicovitch", o.besicovitch},
              {"gSlope", o.g_slope},
              {"gIntercept", o.g_intercept},
              {"alpha", o.alpha},
              {"beta", o.beta}};
}

void gen_options_from_json(const Json& j, GenOptions& o) {
  o.out = j.value("out", o.out);
  o.densify_input = j.value("densifyInput", o.densify_input);
  o.conjugate_input = j.value("conjugateInput", o.conjugate_input);
  o.homeo_input = j.value("homeoInput", o.homeo_input);
  o.eps = j.value("eps", o.eps);
  o.seed_level = j.value("seedLevel", o.seed_level);
  if (j.contains("schedule")) {
    o.multiplicity = j["schedule"].value("multiplicity", o.multiplicity);
    o.max_level = j["schedule"].value("maxLevel", o.max_level);
  }
  o.besicovitch = j.value("besicovitch", o.besicovitch);
  o.g_slope = j.value("gSlope", o.g_slope);
  o.g_intercept = j.value("gIntercept", o.g_intercept);
  o.alpha = j.value("alpha", o.alpha);
  o.beta = j.value("beta", o.beta);
}

int run_gen(GenOptions o) {
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) {
      std::cerr << "lmp gen: cannot open config " << o.config_path << "\n";
      return kExitUsage;
    }
    Json j = Json::parse(in);
    gen_options_from_json(j, o);
  }
  if (o.out.empty()) {
    std::cerr << "lmp gen: output path required (-o)\n";
    return kExitUsage;
  }
  SeedSchedule sched{o.multiplicity, o.max_level};

  PAMap result = PAMap::identity();
  bool lambda_flagged = true;
  if (o.besicovitch) {
    lambda_flagged = false;
    result = additive_besicovitch(require_rat(o.g_slope, "--g-slope"),
                                  require_rat(o.g_intercept, "--g-intercept"),
                                  require_rat(o.alpha, "--alpha"), require_rat(o.beta, "--beta"),
                                  o.seed_level, sched);
  } else if (!o.conjugate_input.empty()) {
    lambda_flagged = false;
    PAMap f = load_pam_file(o.conjugate_input);
    PAMap p = load_pam_file(o.homeo_input);
    Conjugation conj = conjugate(f, p);
    result = conj.q;
    auto cert = certify_preservation_weighted(result, conj.invariant_density);
    std::cout << "weighted certificate: " << (cert.pass ? "pass" : "fail") << "\n";
  } else if (!o.densify_input.empty()) {
    PAMap ell = load_pam_file(o.densify_input);
    Rat eps = require_rat(o.eps, "--eps");
    result = densify(ell, eps, o.seed_level, sched);
    Rat dist = sup_distance(ell, result);
    std::cout << "sup distance to input: " << format_rat(dist)
              << (dist < eps / 2 ? " < " : " !< ") << format_rat(eps / 2) << "\n";
  } else {
    result = seed(o.seed_level, sched);
  }

  save_pam_file(result, o.out);
  std::cout << "wrote " << o.out << " (" << result.segment_count() << " segments)\n";
  if (!o.save_config_path.empty())
    write_file_atomic(o.save_config_path, gen_options_json(o).dump(2) + "\n");

  try {
    auto cert = certify_preservation(result);
    print_certificate(cert);
    if (lambda_flagged && !cert.pass) return kExitCertification;
  } catch (const NotCertifiable& e) {
    std::cout << "certificate: not certifiable (" << e.what() << ")\n";
    if (lambda_flagged) return kExitCertification;
  }
  return 0;
}

int run_verify(const std::string& map_path, std::uint64_t mc_samples, std::uint32_t mc_bins,
               std::uint64_t rng_seed) {
  PAMap f = load_pam_file(map_path);
  PreservationCertificate cert;
  try {
    cert = certify_preservation(f);
  } catch (const NotCertifiable& e) {
    std::cout << "certificate: not certifiable (" << e.what() << ")\n";
    return kExitCertification;
  }
  print_certificate(cert);
  if (mc_samples > 0) {
    auto stats = montecarlo_pushforward(f, mc_samples, mc_bins, rng_seed);
    double bound = 3.0 * std::sqrt(static_cast<double>(mc_bins) / static_cast<double>(mc_samples));
    std::cout << "montecarlo sup-deviation: " << format_float(stats.sup_deviation)
              << " (bound " << format_float(bound) << ", seed " << rng_seed << ")\n";
    if (cert.pass && stats.sup_deviation >= bound) {
      std::cout << "montecarlo: DISAGREES with exact certificate\n";
      return kExitCertification;
    }
  }
  return cert.pass ? 0 : kExitCertification;
}

struct AnalyzeOptions {
  std::string map_path;
  std::string report_path = "report.json";
  std::string csv_dir;
  bool entropy = false;
  bool witness = false;
  unsigned laps = 0;
  bool dini = false;
  unsigned dini_grid = 64;
  unsigned dini_increments = 8;
  std::vector<unsigned> dini_scales = {4, 6, 8, 10};
  bool boxdim = false;
  std::vector<unsigned> box_scales = {4, 6, 8, 10, 12};
  std::string crooked_delta;
  unsigned crooked_n = 4;
  std::string lemma2_set;
  std::string dini_threshold = "8/1";
};

int run_analyze(const AnalyzeOptions& o, const IterateGuard& guard) {
  PAMap f = load_pam_file(o.map_path);
  AnalysisReport report;
  report.map_path = o.map_path;

  bool certified = false;
  try {
    certified = certify_preservation(f).pass;
    report.certificate_pass = certified;
  } catch (const NotCertifiable&) {
    report.certificate_pass = false;
  }

  if ((o.entropy || o.witness) && !certified) {
    std::cerr << "lmp analyze: --entropy and --witness require a certified map; "
              << o.map_path << " does not preserve Lebesgue measure\n";
    return kExitCertification;
  }

  if (o.entropy) report.entropy = rokhlin_entropy(f);
  if (o.witness) {
    report.witness_requested = true;
    report.witness = find_witness(f);
  }
  if (o.laps > 0) report.laps = topological_entropy_lower(f, o.laps, guard);
  if (o.dini) {
    DiniSummary d;
    d.grid_points = o.dini_grid;
    d.increments = o.dini_increments;
    d.scale_exps = o.dini_scales;
    d.knot_threshold = require_rat(o.dini_threshold, "--dini-threshold");
    d.envelopes = dini_envelopes(f, o.dini_grid, o.dini_scales, o.dini_increments);
    d.knot_fraction = knot_fraction(d.envelopes, d.knot_threshold);
    d.envelope_sup = envelope_sup(d.envelopes);
    report.dini = std::move(d);
  }
  if (o.boxdim) report.boxdim = box_dimension(f, o.box_scales);
  if (!o.crooked_delta.empty()) {
    report.crooked_delta = require_rat(o.crooked_delta, "--crooked");
    report.crooked = crookedness_check(f, *report.crooked_delta, o.crooked_n, guard);
  }
  if (!o.lemma2_set.empty()) {
    Lemma2Summary l;
    l.a = parse_interval_set(o.lemma2_set);
    l.result = lemma2_check(f, l.a);
    report.lemma2 = std::move(l);
  }

  write_file_atomic(o.report_path, report_to_json(report));
  std::cout << "wrote " << o.report_path << "\n";

  if (!o.csv_dir.empty()) {
    auto emit = [&](const std::string& name, const std::string& content) {
      std::string path = o.csv_dir + "/" + name;
      write_file_atomic(path, content);
      std::cout << "wrote " << path << "\n";
    };
    if (report.laps) emit("laps.csv", laps_csv(*report.laps));
    if (report.boxdim) emit("boxdim.csv", boxdim_csv(*report.boxdim));
    if (report.dini) emit("dini.csv", dini_csv(report.dini->envelopes));
    if (report.crooked) emit("crooked.csv", crooked_csv(*report.crooked));
  }
  return 0;
}

int run_export(const std::string& report_path, const std::string& csv_dir) {
  std::ifstream in(report_path);
  if (!in) {
    std::cerr << "lmp export: cannot open " << report_path << "\n";
    return kExitUsage;
  }
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded() || j.value("schema", "") != "lmp-report-v1") {
    std::cerr << "lmp export: not an lmp-report-v1 document\n";
    return kExitUsage;
  }
  auto emit = [&](const std::string& name, const std::string& content) {
    std::string path = csv_dir + "/" + name;
    write_file_atomic(path, content);
    std::cout << "wrote " << path << "\n";
  };
  if (j.contains("laps")) {
    std::ostringstream out;
    out << "n,laps,estimate\n";
    for (const auto& r : j["laps"]["rows"])
      out << r["n"].get<std::uint64_t>() << "," << r["laps"].get<std::uint64_t>() << ","
          << r["estimate"].get<std::string>() << "\n";
    emit("laps.csv", out.str());
  }
  if (j.contains("boxDimension")) {
    std::ostringstream out;
    out << "scale_exp,boxes\n";
    for (const auto& r : j["boxDimension"]["rows"])
      out << r["scaleExp"].get<unsigned>() << "," << r["boxes"].get<std::uint64_t>() << "\n";
    emit("boxdim.csv", out.str());
  }
  if (j.contains("dini")) {
    std::ostringstream out;
    out << "x,scale_exp,max_right,min_right,max_left,min_left\n";
    auto cell = [](const Json& v) { return v.is_null() ? std::string() : v.get<std::string>(); };
    for (const auto& r : j["dini"]["rows"])
      out << r["x"].get<std::string>() << "," << r["scaleExp"].get<unsigned>() << ","
          << cell(r["maxRight"]) << "," << cell(r["minRight"]) << "," << cell(r["maxLeft"])
          << "," << cell(r["minLeft"]) << "\n";
    emit("dini.csv", out.str());
  }
  if (j.contains("crookedness")) {
    std::ostringstream out;
    out << "n,crooked,violating_a,violating_b\n";
    for (const auto& r : j["crookedness"]["rows"]) {
      out << r["n"].get<unsigned>() << "," << (r["crooked"].get<bool>() ? 1 : 0) << ",";
      if (r.contains("violatingPair"))
        out << r["violatingPair"][0].get<std::string>() << ","
            << r["violatingPair"][1].get<std::string>();
      else
        out << ",";
      out << "\n";
    }
    emit("crooked.csv", out.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lebesgue-measure-preserving piecewise-affine interval maps"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a map and certify it");
  gen_cmd->add_option("-o,--out", gen.out, "output pam-v1 file");
  gen_cmd->add_option("--seed-level", gen.seed_level, "seed refinement level");
  gen_cmd->add_option("--multiplicity", gen.multiplicity, "zigzag multiplicity (odd >= 3)");
  gen_cmd->add_option("--max-level", gen.max_level, "schedule maxLevel");
  gen_cmd->add_option("--densify", gen.densify_input, "input map to densify");
  gen_cmd->add_option("--eps", gen.eps, "densification bound (rational p/q)");
  gen_cmd->add_option("--conjugate", gen.conjugate_input, "map to conjugate");
  gen_cmd->add_option("--homeo", gen.homeo_input, "PL homeomorphism for --conjugate");
  gen_cmd->add_flag("--besicovitch", gen.besicovitch,
                    "additive perturbation of an affine map by seed halves");
  gen_cmd->add_option("--g-slope", gen.g_slope, "affine slope for --besicovitch");
  gen_cmd->add_option("--g-intercept", gen.g_intercept, "affine intercept for --besicovitch");
  gen_cmd->add_option("--alpha", gen.alpha, "left perturbation size");
  gen_cmd->add_option("--beta", gen.beta, "right perturbation size");
  gen_cmd->add_option("--config", gen.config_path, "load options from a run-config JSON");
  gen_cmd->add_option("--save-config", gen.save_config_path, "write the effective run config");

  std::string verify_map;
  std::vector<std::uint64_t> mc;
  std::uint64_t rng_seed = 1;
  auto* verify_cmd = app.add_subcommand("verify", "certify a map file");
  verify_cmd->add_option("map", verify_map, "pam-v1 file")->required();
  verify_cmd->add_option("--montecarlo", mc, "stochastic cross-check: SAMPLES BINS")
      ->expected(2);
  verify_cmd->add_option("--rng", rng_seed, "RNG seed for --montecarlo");

  AnalyzeOptions an;
  auto* an_cmd = app.add_subcommand("analyze", "run analyses and write a report");
  an_cmd->add_option("map", an.map_path, "pam-v1 file")->required();
  an_cmd->add_option("-o,--out", an.report_path, "report JSON path");
  an_cmd->add_option("--csv-dir", an.csv_dir, "also write CSV tables here");
  an_cmd->add_flag("--entropy", an.entropy, "exact metric entropy");
  an_cmd->add_flag("--witness", an.witness, "non-invertibility witness");
  an_cmd->add_option("--laps", an.laps, "lap table of iterates up to N");
  an_cmd->add_flag("--dini", an.dini, "difference-quotient envelopes");
  an_cmd->add_option("--dini-grid", an.dini_grid, "envelope grid points");
  an_cmd->add_option("--dini-increments", an.dini_increments, "increments per scale");
  an_cmd->add_option("--dini-scales", an.dini_scales, "scale exponents j (scale 2^-j)");
  an_cmd->add_option("--dini-threshold", an.dini_threshold, "knot proxy threshold (rational)");
  an_cmd->add_flag("--boxdim", an.boxdim, "graph box counting");
  an_cmd->add_option("--boxdim-scales", an.box_scales, "box scale exponents");
  std::vector<std::string> crooked_args;
  an_cmd->add_option("--crooked", crooked_args, "crookedness probe: DELTA NMAX")->expected(2);
  an_cmd->add_option("--lemma2", an.lemma2_set, "interval set lo:hi,lo:hi,...");

  std::string export_report, export_dir = ".";
  auto* export_cmd = app.add_subcommand("export", "emit CSV tables from a report JSON");
  export_cmd->add_option("report", export_report, "lmp-report-v1 file")->required();
  export_cmd->add_option("--csv-dir", export_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*verify_cmd)
      return run_verify(verify_map, mc.empty() ? 0 : mc[0],
                        mc.empty() ? 0 : static_cast<std::uint32_t>(mc[1]), rng_seed);
    if (*an_cmd) {
      if (!crooked_args.empty()) {
        an.crooked_delta = crooked_args[0];
        an.crooked_n = static_cast<unsigned>(std::stoul(crooked_args[1]));
      }
      return run_analyze(an, guard_from_env());
    }
    if (*export_cmd) return run_export(export_report, export_dir);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "lmp: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "lmp: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
