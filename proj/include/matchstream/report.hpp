#pragma once

#include <string>
#include <vector>

namespace matchstream {

inline constexpr const char* kReportHeader = "algorithm,seed,n,m,weight,opt,ratio,passes,peak_edges";

// One CSV row per runner JSON document; `names` label the inputs in error messages.
std::string report_csv(const std::vector<std::string>& documents, const std::vector<std::string>& names);
std::string report_csv_files(const std::vector<std::string>& paths);

}  // namespace matchstream
