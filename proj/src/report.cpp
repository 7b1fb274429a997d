#include "matchstream/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "matchstream/errors.hpp"

namespace matchstream {

namespace {

std::string cell(const nlohmann::json& j, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    auto it = j.find(k);
    if (it == j.end() || it->is_null()) continue;
    if (it->is_number_integer() || it->is_number_unsigned()) return it->dump();
    if (it->is_number_float()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", it->get<double>());
      return buf;
    }
    if (it->is_string()) return it->get<std::string>();
    return it->dump();
  }
  return "";
}

}  // namespace

std::string report_csv(const std::vector<std::string>& documents, const std::vector<std::string>& names) {
  std::ostringstream out;
  out << kReportHeader << '\n';
  for (std::size_t i = 0; i < documents.size(); ++i) {
    const std::string& name = i < names.size() ? names[i] : std::to_string(i);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(documents[i]);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(name + ": malformed JSON (" + e.what() + ")");
    }
    if (!j.is_object() || !j.contains("algorithm")) throw InputError(name + ": not a runner report");
    out << cell(j, {"algorithm"}) << ',' << cell(j, {"seed"}) << ',' << cell(j, {"n"}) << ',' << cell(j, {"m"})
        << ',' << cell(j, {"weight", "final_weight", "size"}) << ',' << cell(j, {"opt_weight", "opt_size"}) << ','
        << cell(j, {"ratio"}) << ',' << cell(j, {"passes"}) << ',' << cell(j, {"peak_edges"}) << '\n';
  }
  return out.str();
}

std::string report_csv_files(const std::vector<std::string>& paths) {
  std::vector<std::string> docs;
  for (const std::string& p : paths) {
    std::ifstream in(p);
    if (!in) throw InputError("cannot open " + p);
    std::stringstream ss;
    ss << in.rdbuf();
    docs.push_back(ss.str());
  }
  return report_csv(docs, paths);
}

}  // namespace matchstream
