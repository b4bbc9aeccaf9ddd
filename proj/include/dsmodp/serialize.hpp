#pragma once
// JSON forms of the public types (nlohmann::json).

#include <json.hpp>

#include "dsmodp/ds.hpp"
#include "dsmodp/integral.hpp"

namespace dsmodp {

using nlohmann::json;

inline json to_json_value(const Configuration& c) {
  json fibres = json::array();
  for (const auto& f : c.fibres) fibres.push_back({{"place", f.place.to_string()}, {"type", to_string(f.type)}, {"vdelta", f.vdelta}});
  return {{"p", c.p}, {"fibres", fibres}, {"euler", c.euler}, {"conductor_degree", c.conductor_degree}, {"types", format_types(c)}};
}

inline json to_json_value(const RationalMap& m) { return {{"num", to_string(m.num())}, {"den", to_string(m.den())}}; }

inline json to_json_value(const RamificationProfile& r) {
  json j = json::object();
  for (const auto& [v, idx] : r.branches) j[to_string(v)] = idx;
  j["degree"] = r.separable_degree;
  j["insep"] = r.insep;
  return j;
}

inline json to_json_value(const CurvePoint& P) { return {{"X", to_string(P.X)}, {"Y", to_string(P.Y)}}; }

inline json to_json_value(const DSPair& pr) { return {{"f", to_string(pr.f)}, {"g", to_string(pr.g)}, {"M", pr.M}}; }

inline json to_json_value(const DSReport& r) {
  json common = json::array();
  for (const auto& w : r.common_factors) common.push_back(to_string(w));
  json mult = json::array();
  for (const auto& [pl, m] : r.multiplicative) mult.push_back({{"place", pl.to_string()}, {"index", m}});
  return {{"p", r.p},
          {"M", r.M},
          {"defect", r.defect},
          {"ds_bound", r.ds_bound},
          {"min_defect_bound", r.min_bound},
          {"ds_holds_for_pair", r.ds_holds_for_pair},
          {"is_counterexample", r.is_counterexample},
          {"is_maximal", r.is_maximal},
          {"common_factors", common},
          {"multiplicative", mult},
          {"infinity_type", to_string(r.infinity_type)},
          {"config", to_json_value(r.configuration)}};
}

inline json to_json_value(const Witness& w) {
  json stages = json::array();
  for (const auto& s : w.stages) stages.push_back({{"label", s.label}, {"map", to_json_value(s.map)}});
  return {{"f", to_string(w.pair.f)},
          {"g", to_string(w.pair.g)},
          {"M", w.pair.M},
          {"strategy", w.strategy},
          {"root", to_string(w.root)},
          {"stages", stages},
          {"q", w.q},
          {"padding", w.padding},
          {"config", to_json_value(w.configuration)}};
}

inline json to_json_value(const StatusTable& t) {
  json entries = json::array();
  for (const auto& e : t.entries) {
    json j = {{"M", e.M}, {"status", to_string(e.status)}};
    if (e.status == Status::Holds) j["reason"] = e.reason;
    if (e.witness) {
      j["witness"] = {{"f", to_string(e.witness->pair.f)}, {"g", to_string(e.witness->pair.g)}};
      j["config"] = format_types(e.witness->configuration);
    }
    entries.push_back(std::move(j));
  }
  return {{"p", t.p}, {"entries", entries}};
}

/// {"inf":[5],"0":[3,1,1],"1":[3,1,1]} plus optional "degree" and "insep".
inline RamificationProfile profile_from_json(const json& j, int degree) {
  RamificationProfile r;
  r.separable_degree = j.value("degree", degree);
  r.insep = j.value("insep", std::uint64_t{1});
  for (const auto& [k, v] : j.items()) {
    if (k == "degree" || k == "insep") continue;
    CritValue cv = k == "inf" ? CritValue::infinity() : CritValue::finite(static_cast<Coeff>(std::stoul(k)));
    std::vector<int> idx = v.get<std::vector<int>>();
    std::sort(idx.rbegin(), idx.rend());
    if (!idx.empty() && idx.front() > 1) r.branches[cv] = idx;
  }
  return r;
}

/// Either a list of type names (first at infinity) or {"fibres":[{"type":..},..]}.
inline Configuration configuration_from_json(const json& j, Coeff p) {
  std::vector<FibreType> types;
  const json& list = j.is_object() ? j.at("fibres") : j;
  for (const auto& item : list) types.push_back(parse_fibre_type(item.is_string() ? item.get<std::string>() : item.at("type").get<std::string>()));
  return Configuration::from_types(p, types);
}

}  // namespace dsmodp
