#include "kil/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace kil {

Json arrangement_to_json(const Arrangement& arr) {
  Json j;
  j["p"] = arr.p;
  j["points"] = Json::array();
  for (const ProjPoint& q : arr.points) j["points"].push_back(q.c);
  j["planes"] = Json::array();
  for (const Hyperplane& pi : arr.planes) j["planes"].push_back(pi.c);
  if (arr.weighted()) {
    Json w;
    if (!arr.point_weights.empty()) w["points"] = arr.point_weights;
    if (!arr.plane_weights.empty()) w["planes"] = arr.plane_weights;
    j["weights"] = std::move(w);
  }
  return j;
}

Arrangement arrangement_from_json(const Json& j, const Fp& F) {
  Arrangement arr;
  arr.p = j.at("p").get<u64>();
  for (const auto& c : j.at("points")) arr.points.push_back(make_point(c.get<Fvec>(), F));
  for (const auto& c : j.at("planes")) arr.planes.push_back(make_hyperplane(c.get<Fvec>(), F));
  if (j.contains("weights")) {
    const auto& w = j.at("weights");
    if (w.contains("points")) arr.point_weights = w.at("points").get<std::vector<u64>>();
    if (w.contains("planes")) arr.plane_weights = w.at("planes").get<std::vector<u64>>();
  }
  validate(arr, F);
  return arr;
}

std::string points_to_csv(const std::vector<ProjPoint>& pts) {
  std::ostringstream out;
  out << "# " << kCsvSchema << "\n";
  for (const ProjPoint& q : pts) {
    for (size_t i = 0; i < q.c.size(); ++i) out << (i ? "," : "") << q.c[i];
    out << "\n";
  }
  return out.str();
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Err::InvalidConfig, "cannot open " + tmp.string());
    out << content;
    if (!out.good()) {
      out.close();
      fs::remove(tmp);
      fail(Err::InvalidConfig, "short write to " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::MissingArtifact, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string rows_to_csv(const std::vector<CsvRow>& rows) {
  std::ostringstream out;
  out << "schema,p,seed,N,statistic,value,bound_expression,ratio\n";
  for (const CsvRow& r : rows) {
    out << kCsvSchema << "," << r.p << "," << r.seed << "," << r.n << "," << r.statistic << ","
        << r.value << "," << r.bound_expression << "," << r.ratio << "\n";
  }
  return out.str();
}

std::vector<CsvRow> rows_from_csv(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line) || line != "schema,p,seed,N,statistic,value,bound_expression,ratio")
    fail(Err::MissingArtifact, "not a sweep artifact (bad header)");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields{""};
    for (char ch : line) {
      if (ch == ',')
        fields.emplace_back();
      else
        fields.back().push_back(ch);
    }
    if (fields.size() != 8 || fields[0] != kCsvSchema)
      fail(Err::MissingArtifact, "row does not match schema " + std::string(kCsvSchema));
    CsvRow r;
    r.p = std::stoull(fields[1]);
    r.seed = std::stoull(fields[2]);
    r.n = std::stoull(fields[3]);
    r.statistic = fields[4];
    r.value = fields[5];
    r.bound_expression = fields[6];
    r.ratio = fields[7];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace kil
