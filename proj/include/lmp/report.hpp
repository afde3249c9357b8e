#pragma once

#include <optional>
#include <string>

#include "lmp/analysis.hpp"
#include "lmp/certificate.hpp"

namespace lmp {

// Fixed rendering for every float that reaches an output file: 17
// significant digits, so repeated runs are byte-identical.
std::string format_float(double v);

struct DiniSummary {
  unsigned grid_points = 0;
  unsigned increments = 0;
  std::vector<unsigned> scale_exps;
  Rat knot_threshold;
  double knot_fraction = 0.0;
  Rat envelope_sup;
  std::vector<DiniEnvelope> envelopes;
};

struct Lemma2Summary {
  IntervalSet a;
  Lemma2Result result;
};

struct AnalysisReport {
  std::string map_path;
  std::optional<bool> certificate_pass;
  std::optional<ExactLog> entropy;
  std::optional<WitnessReport> witness;
  bool witness_requested = false;
  std::optional<LapTable> laps;
  std::optional<DiniSummary> dini;
  std::optional<BoxCountTable> boxdim;
  std::optional<std::vector<CrookednessRow>> crooked;
  std::optional<Rat> crooked_delta;
  std::optional<Lemma2Summary> lemma2;
};

std::string report_to_json(const AnalysisReport& r);

// CSV tables; column layouts are documented in the README.
std::string laps_csv(const LapTable& t);
std::string boxdim_csv(const BoxCountTable& t);
std::string dini_csv(const std::vector<DiniEnvelope>& envelopes);
std::string crooked_csv(const std::vector<CrookednessRow>& rows);

}  // namespace lmp
