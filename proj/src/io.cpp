#include "a3cnp/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace a3cnp {

using nlohmann::json;

json clusters_to_json(const Partition& part) {
  json out = json::array();
  for (const auto& b : part.blocks()) {
    json block = json::array();
    for (int item : b) block.push_back(item + 1);
    out.push_back(std::move(block));
  }
  return out;
}

Partition clusters_from_json(const json& j, int m) {
  if (!j.is_array()) throw std::invalid_argument("\"clusters\" must be an array of arrays");
  std::vector<std::vector<int>> blocks;
  for (const auto& b : j) {
    if (!b.is_array()) throw std::invalid_argument("\"clusters\" must be an array of arrays");
    std::vector<int> block;
    for (const auto& item : b) {
      if (!item.is_number_integer()) throw std::invalid_argument("cluster members must be integers");
      block.push_back(item.get<int>() - 1);
    }
    blocks.push_back(std::move(block));
  }
  return Partition::from_blocks(blocks, m);
}

json instance_to_json(const Instance& instance) {
  return {{"M", instance.items()},
          {"clusters", clusters_to_json(instance.partition)},
          {"p", instance.p},
          {"q", instance.q}};
}

Instance instance_from_json(const json& j) {
  for (const char* key : {"M", "clusters", "p", "q"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("instance is missing \"") + key + "\"");
  if (!j["M"].is_number_integer()) throw std::invalid_argument("\"M\" must be an integer");
  const int m = j["M"].get<int>();
  if (m < 2) throw std::invalid_argument("\"M\" must be at least 2");
  if (m > kMaxItems) throw SizeLimitError("\"M\" = " + std::to_string(m) + " exceeds the supported maximum");
  return Instance(clusters_from_json(j["clusters"], m), j["p"].get<double>(), j["q"].get<double>());
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  try {
    return instance_from_json(json::parse(in));
  } catch (const std::exception& e) {
    throw std::runtime_error("bad instance file '" + path + "': " + e.what());
  }
}

json run_result_to_json(const RunResult& r) {
  return {{"stop_time", r.stop_time},
          {"clusters", clusters_to_json(r.output_partition)},
          {"correct", r.correct},
          {"sg_proxy", r.sg_proxy_at_stop},
          {"truncated", r.truncated}};
}

void write_step_trace_csv(std::ostream& os, const std::vector<StepRecord>& trace) {
  os << "t,i,j,y,statistic,threshold,class_id,target_min,target_max\n" << std::setprecision(17);
  for (const auto& s : trace)
    os << s.t << ',' << s.pair.i + 1 << ',' << s.pair.j + 1 << ',' << s.y << ',' << s.statistic << ','
       << s.threshold << ',' << s.class_id << ',' << s.target_min << ',' << s.target_max << '\n';
}

}  // namespace a3cnp
