#include "gtx/json_io.hpp"

#include <stdexcept>
#include <string>

namespace gtx {

using nlohmann::json;

json to_json(const Instance& inst) {
  json holdings = json::array();
  for (const auto& h : inst.holdings()) holdings.push_back(h.members());
  return json{{"n", inst.n()}, {"m", inst.m()}, {"holdings", std::move(holdings)}};
}

json to_json(const Schedule& schedule) {
  json out = json::array();
  for (const auto& e : schedule) out.push_back(json::array({e.i, e.j}));
  return out;
}

json to_json(const SplitTree& tree) {
  json children = json::array();
  for (const auto& c : tree.children) children.push_back(to_json(c));
  return json{{"group", tree.group}, {"children", std::move(children)}};
}

Instance instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("m") || !j.contains("holdings")) {
    throw std::invalid_argument("instance JSON needs keys n, m and holdings");
  }
  if (!j["n"].is_number_unsigned() || !j["m"].is_number_unsigned() || !j["holdings"].is_array()) {
    throw std::invalid_argument("instance JSON: n and m must be non-negative integers, holdings an array");
  }
  const auto n = j["n"].get<std::size_t>();
  const auto m = j["m"].get<std::size_t>();
  const auto& rows = j["holdings"];
  if (rows.size() != m) {
    throw std::invalid_argument("instance JSON: m = " + std::to_string(m) + " but " + std::to_string(rows.size()) +
                                " holdings given");
  }
  std::vector<FileSet> holdings;
  holdings.reserve(m);
  for (std::size_t u = 0; u < m; ++u) {
    if (!rows[u].is_array()) throw std::invalid_argument("instance JSON: holding " + std::to_string(u) + " is not an array");
    FileSet set(n);
    bool first = true;
    std::size_t prev = 0;
    for (const auto& f : rows[u]) {
      if (!f.is_number_unsigned()) throw std::invalid_argument("instance JSON: file indices must be non-negative integers");
      const auto file = f.get<std::size_t>();
      if (file >= n) {
        throw std::invalid_argument("instance JSON: file " + std::to_string(file) + " out of range for n = " +
                                    std::to_string(n));
      }
      if (!first && file <= prev) {
        throw std::invalid_argument("instance JSON: holding " + std::to_string(u) + " is not strictly ascending");
      }
      set.insert(file);
      prev = file;
      first = false;
    }
    holdings.push_back(std::move(set));
  }
  return Instance(n, std::move(holdings));
}

Schedule schedule_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("schedule JSON must be an array of [i, j] pairs");
  Schedule out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
      throw std::invalid_argument("schedule JSON entries must be [i, j] with non-negative integers");
    }
    out.push_back({e[0].get<UserId>(), e[1].get<UserId>()});
  }
  return out;
}

}  // namespace gtx
