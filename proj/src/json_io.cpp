#include "lmp/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lmp {

std::string serialize_pam(const PAMap& f) {
  nlohmann::ordered_json j;
  j["schema"] = "pam-v1";
  j["breakpoints"] = nlohmann::ordered_json::array();
  for (const auto& p : f.points()) {
    j["breakpoints"].push_back({{"x", format_rat(p.x)}, {"y", format_rat(p.y)}});
  }
  return j.dump(2) + "\n";
}

PAMap parse_pam(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  if (!j.contains("schema") || j["schema"] != "pam-v1")
    throw std::invalid_argument("not a pam-v1 document");
  if (!j.contains("breakpoints") || !j["breakpoints"].is_array())
    throw std::invalid_argument("pam-v1: missing breakpoints array");
  std::vector<Breakpoint> pts;
  for (const auto& e : j["breakpoints"]) {
    auto x = parse_rat(e.at("x").get<std::string>());
    auto y = parse_rat(e.at("y").get<std::string>());
    if (!x || !y) throw std::invalid_argument("pam-v1: bad rational");
    if (*y < 0 || *y > 1) throw std::invalid_argument("pam-v1: value outside [0,1]");
    pts.push_back({std::move(*x), std::move(*y)});
  }
  return PAMap(std::move(pts));
}

PAMap load_pam_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_pam(ss.str());
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

void save_pam_file(const PAMap& f, const std::string& path) {
  write_file_atomic(path, serialize_pam(f));
}

}  // namespace lmp
