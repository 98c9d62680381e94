#include "powb/json_io.hpp"

#include <fstream>

namespace powb {

Json poset_to_json(const Poset& p) {
  Json j;
  j["elements"] = Json::array();
  for (const auto& e : p.elements()) {
    Json je;
    je["id"] = e.id;
    je["tag"] = tag_to_string(e.tag);
    je["step"] = e.step;
    j["elements"].push_back(je);
  }
  j["lt"] = Json::array();
  for (auto [a, b] : p.hasse_edges()) j["lt"].push_back(Json::array({a, b}));
  return j;
}

Poset poset_from_json(const Json& j, std::size_t carrier_cap) {
  std::vector<Element> elems;
  for (const auto& je : j.at("elements")) {
    Element e;
    e.id = je.at("id").get<Id>();
    e.tag = tag_from_string(je.at("tag").get<std::string>());
    e.step = je.at("step").get<std::uint32_t>();
    elems.push_back(e);
  }
  std::vector<std::pair<Id, Id>> pairs;
  for (const auto& jp : j.at("lt")) pairs.emplace_back(jp.at(0).get<Id>(), jp.at(1).get<Id>());
  return Poset::close(std::move(elems), pairs, carrier_cap);
}

Json creature_to_json(const Creature& c) {
  Json j = poset_to_json(c.order());
  j["F"] = Json::array();
  for (const auto& [k, v] : c.f().entries()) j["F"].push_back(Json::array({k.first, k.second, v}));
  j["H"] = Json::array();
  for (const auto& t : c.h().triples()) j["H"].push_back(Json::array({t[0], t[1], t[2]}));
  return j;
}

Creature creature_from_json(const Json& j, std::size_t carrier_cap) {
  Poset p = poset_from_json(j, carrier_cap);
  PairMap f;
  if (j.contains("F"))
    for (const auto& jf : j.at("F"))
      f.set(jf.at(0).get<Id>(), jf.at(1).get<Id>(), jf.at(2).get<Id>());
  HSet h;
  if (j.contains("H"))
    for (const auto& jh : j.at("H"))
      h.insert(jh.at(0).get<Id>(), jh.at(1).get<Id>(), jh.at(2).get<Id>());
  return Creature(std::move(p), std::move(f), std::move(h));
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw ParseError(path + ": " + ex.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  write_text_file(path, dump_json(j));
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << text;
}

}  // namespace powb
