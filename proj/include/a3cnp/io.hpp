#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "a3cnp/core_model.hpp"
#include "a3cnp/engine.hpp"

namespace a3cnp {

/// [[1,2],[3]] with 1-indexed items.
nlohmann::json clusters_to_json(const Partition& part);
/// Inverse of clusters_to_json; blocks must cover 1..m exactly once.
Partition clusters_from_json(const nlohmann::json& j, int m);

/// {"M":6, "clusters":[[1,2],[3,4,5],[6]], "p":0.6, "q":0.4}
nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);
/// Reads an instance file; errors name the path.
Instance load_instance(const std::string& path);

/// {"stop_time", "clusters", "correct", "sg_proxy", "truncated"}
nlohmann::json run_result_to_json(const RunResult& r);

/// Per-step CSV: t,i,j,y,statistic,threshold,class_id,target_min,target_max.
void write_step_trace_csv(std::ostream& os, const std::vector<StepRecord>& trace);

}  // namespace a3cnp
