#ifndef POWB_JSON_IO_HPP
#define POWB_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "powb/creature.hpp"
#include "powb/poset.hpp"

namespace powb {

using Json = nlohmann::ordered_json;

// Poset documents store the transitive reduction; loading re-closes.
// dump_json/parse of the same value is byte-stable.
Json poset_to_json(const Poset& p);
Poset poset_from_json(const Json& j, std::size_t carrier_cap = kDefaultCarrierCap);

Json creature_to_json(const Creature& c);
Creature creature_from_json(const Json& j, std::size_t carrier_cap = kDefaultCarrierCap);

std::string dump_json(const Json& j);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace powb

#endif
