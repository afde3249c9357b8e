#include "lmp/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace lmp {

std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

using Json = nlohmann::ordered_json;

Json interval_set_json(const IntervalSet& s) {
  Json arr = Json::array();
  for (const auto& c : s.components()) arr.push_back({format_rat(c.lo), format_rat(c.hi)});
  return arr;
}

Json exact_log_json(const ExactLog& e) {
  Json terms = Json::array();
  for (const auto& t : e.terms)
    terms.push_back({{"weight", format_rat(t.weight)}, {"logOf", format_rat(t.base)}});
  return Json{{"terms", terms},
              {"float", format_float(e.value())},
              {"positive", e.sign() > 0}};
}

}  // namespace

std::string report_to_json(const AnalysisReport& r) {
  Json j;
  j["schema"] = "lmp-report-v1";
  j["map"] = r.map_path;
  if (r.certificate_pass) j["certificatePass"] = *r.certificate_pass;
  if (r.entropy) j["entropy"] = exact_log_json(*r.entropy);
  if (r.witness_requested) {
    if (r.witness) {
      j["witness"] = Json{{"found", true},
                          {"y", interval_set_json(r.witness->y)},
                          {"imageMeasure", format_rat(r.witness->image_measure)},
                          {"setMeasure", format_rat(r.witness->set_measure)},
                          {"margin", format_rat(r.witness->margin)}};
    } else {
      j["witness"] = Json{{"found", false}};
    }
  }
  if (r.laps) {
    Json rows = Json::array();
    for (const auto& row : r.laps->rows)
      rows.push_back({{"n", row.n}, {"laps", row.laps}, {"estimate", format_float(row.estimate)}});
    j["laps"] = Json{{"truncated", r.laps->truncated}, {"rows", rows}};
  }
  if (r.dini) {
    Json rows = Json::array();
    auto cell = [](const std::optional<Rat>& q) {
      return q ? Json(format_float(to_double(*q))) : Json(nullptr);
    };
    for (const auto& env : r.dini->envelopes) {
      for (const auto& se : env.scales) {
        rows.push_back({{"x", format_rat(env.x)},
                        {"scaleExp", se.scale_exp},
                        {"maxRight", cell(se.max_right)},
                        {"minRight", cell(se.min_right)},
                        {"maxLeft", cell(se.max_left)},
                        {"minLeft", cell(se.min_left)}});
      }
    }
    j["dini"] = Json{{"gridPoints", r.dini->grid_points},
                     {"increments", r.dini->increments},
                     {"scaleExps", r.dini->scale_exps},
                     {"knotThreshold", format_rat(r.dini->knot_threshold)},
                     {"knotFraction", format_float(r.dini->knot_fraction)},
                     {"envelopeSup", format_rat(r.dini->envelope_sup)},
                     {"rows", rows}};
  }
  if (r.boxdim) {
    Json rows = Json::array();
    for (const auto& row : r.boxdim->rows)
      rows.push_back({{"scaleExp", row.scale_exp}, {"boxes", row.boxes}});
    j["boxDimension"] = Json{{"rows", rows}, {"slope", format_float(r.boxdim->slope)}};
  }
  if (r.crooked) {
    Json rows = Json::array();
    for (const auto& row : *r.crooked) {
      Json jr{{"n", row.n}, {"crooked", row.crooked}};
      if (row.violating_pair)
        jr["violatingPair"] = {format_rat(row.violating_pair->first),
                               format_rat(row.violating_pair->second)};
      rows.push_back(jr);
    }
    j["crookedness"] = Json{{"delta", format_rat(*r.crooked_delta)}, {"rows", rows}};
  }
  if (r.lemma2) {
    j["lemma2"] = Json{{"A", interval_set_json(r.lemma2->a)},
                       {"B", interval_set_json(r.lemma2->result.b)},
                       {"measureA", format_rat(r.lemma2->result.a_measure)},
                       {"measureB", format_rat(r.lemma2->result.b_measure)},
                       {"pass", r.lemma2->result.pass}};
  }
  return j.dump(2) + "\n";
}

std::string laps_csv(const LapTable& t) {
  std::ostringstream out;
  out << "n,laps,estimate\n";
  for (const auto& r : t.rows)
    out << r.n << "," << r.laps << "," << format_float(r.estimate) << "\n";
  return out.str();
}

std::string boxdim_csv(const BoxCountTable& t) {
  std::ostringstream out;
  out << "scale_exp,boxes\n";
  for (const auto& r : t.rows) out << r.scale_exp << "," << r.boxes << "\n";
  return out.str();
}

std::string dini_csv(const std::vector<DiniEnvelope>& envelopes) {
  std::ostringstream out;
  out << "x,scale_exp,max_right,min_right,max_left,min_left\n";
  auto cell = [](const std::optional<Rat>& q) {
    return q ? format_float(to_double(*q)) : std::string();
  };
  for (const auto& env : envelopes) {
    for (const auto& se : env.scales) {
      out << format_rat(env.x) << "," << se.scale_exp << "," << cell(se.max_right) << ","
          << cell(se.min_right) << "," << cell(se.max_left) << "," << cell(se.min_left)
          << "\n";
    }
  }
  return out.str();
}

std::string crooked_csv(const std::vector<CrookednessRow>& rows) {
  std::ostringstream out;
  out << "n,crooked,violating_a,violating_b\n";
  for (const auto& r : rows) {
    out << r.n << "," << (r.crooked ? 1 : 0) << ",";
    if (r.violating_pair)
      out << format_rat(r.violating_pair->first) << "," << format_rat(r.violating_pair->second);
    else
      out << ",";
    out << "\n";
  }
  return out.str();
}

}  // namespace lmp
