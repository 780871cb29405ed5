#include "posthoc/log_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace posthoc {

namespace {

using nlohmann::json;

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  return v;
}

}  // namespace

void write_interaction_log(const std::string& path, const std::vector<Interaction>& log) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_interaction_log: cannot open " + path);
  std::size_t step = 0;
  for (const auto& x : log) {
    json rec{{"step", step++}, {"context", vector_to_json(x.context)}, {"action", x.action}, {"loss", x.loss}};
    if (x.has_posthoc()) rec["posthoc"] = vector_to_json(x.posthoc);
    if (x.full_loss) rec["full_loss"] = vector_to_json(*x.full_loss);
    if (x.propensity) rec["propensity"] = *x.propensity;
    if (!x.group_key.empty()) rec["group_key"] = x.group_key;
    out << rec.dump() << '\n';
  }
  if (!out) throw std::runtime_error("write_interaction_log: write failed on " + path);
}

std::vector<Interaction> read_interaction_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_interaction_log: cannot open " + path);
  std::vector<Interaction> log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
      Interaction x;
      x.context = vector_from_json(rec.at("context"));
      x.action = rec.at("action").get<int>();
      x.loss = rec.at("loss").get<double>();
      if (rec.contains("posthoc")) x.posthoc = vector_from_json(rec["posthoc"]);
      if (rec.contains("full_loss")) x.full_loss = vector_from_json(rec["full_loss"]);
      if (rec.contains("propensity")) x.propensity = rec["propensity"].get<double>();
      if (rec.contains("group_key")) x.group_key = rec["group_key"].get<std::string>();
      log.push_back(std::move(x));
    } catch (const json::exception& e) {
      throw std::runtime_error("read_interaction_log: " + path + ":" + std::to_string(line_no) + ": " +
                               e.what());
    }
  }
  return log;
}

}  // namespace posthoc
