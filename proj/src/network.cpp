#include "railnet/network.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace railnet {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(DataError::Code code, const std::string& msg) { throw DataError(code, msg); }

std::string describe_position(std::string_view doc, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < doc.size(); ++i) {
    if (doc[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where,
                const ParseOptions& opt) {
  if (opt.lenient) return;
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(DataError::Code::UnknownKey, "unknown key \"" + key + "\" in " + std::string(where));
  }
}

const json& require(const json& obj, const char* key, std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(DataError::Code::InvalidValue, "missing \"" + std::string(key) + "\" in " + std::string(where));
  return *it;
}

std::string get_string(const json& v, std::string_view what) {
  if (!v.is_string()) fail(DataError::Code::InvalidValue, std::string(what) + " must be a string");
  return v.get<std::string>();
}

double get_number(const json& v, std::string_view what) {
  if (!v.is_number()) fail(DataError::Code::InvalidValue, std::string(what) + " must be a number");
  return v.get<double>();
}

Attachment parse_attachment(const json& v, std::string_view where, const ParseOptions& opt) {
  if (!v.is_object()) fail(DataError::Code::InvalidValue, std::string(where) + " must be an object");
  check_keys(v, {"station", "side"}, where, opt);
  Attachment at;
  at.station = get_string(require(v, "station", where), std::string(where) + ".station");
  at.side = parse_side(get_string(require(v, "side", where), std::string(where) + ".side"));
  return at;
}

StationSpec parse_station(const json& v, const ParseOptions& opt) {
  if (!v.is_object()) fail(DataError::Code::InvalidValue, "station entries must be objects");
  StationSpec s;
  s.id = get_string(require(v, "id", "station"), "station id");
  const std::string where = "station \"" + s.id + "\"";
  check_keys(v, {"id", "name", "kind", "reversal_penalty_min", "keep", "coord"}, where, opt);
  if (auto it = v.find("name"); it != v.end()) s.name = get_string(*it, where + " name");
  if (auto it = v.find("kind"); it != v.end()) s.kind = parse_station_kind(get_string(*it, where + " kind"));
  if (auto it = v.find("reversal_penalty_min"); it != v.end()) s.reversal_penalty_min = get_number(*it, where + " reversal_penalty_min");
  if (auto it = v.find("keep"); it != v.end()) {
    if (!it->is_boolean()) fail(DataError::Code::InvalidValue, where + " keep must be a boolean");
    s.keep = it->get<bool>();
  }
  if (auto it = v.find("coord"); it != v.end()) {
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number())
      fail(DataError::Code::InvalidValue, where + " coord must be [lon, lat]");
    s.coord = std::array<double, 2>{(*it)[0].get<double>(), (*it)[1].get<double>()};
  }
  return s;
}

SectionSpec parse_section(const json& v, const ParseOptions& opt) {
  if (!v.is_object()) fail(DataError::Code::InvalidValue, "section entries must be objects");
  SectionSpec s;
  s.id = get_string(require(v, "id", "section"), "section id");
  const std::string where = "section \"" + s.id + "\"";
  check_keys(v, {"id", "a", "b", "length_km", "speed_kmh"}, where, opt);
  s.a = parse_attachment(require(v, "a", where), where + " end a", opt);
  s.b = parse_attachment(require(v, "b", where), where + " end b", opt);
  s.length_km = get_number(require(v, "length_km", where), where + " length_km");
  s.speed_kmh = get_number(require(v, "speed_kmh", where), where + " speed_kmh");
  return s;
}

ordered_json station_to_json(const StationSpec& s) {
  ordered_json j;
  j["id"] = s.id;
  j["name"] = s.name;
  j["kind"] = std::string(to_string(s.kind));
  j["reversal_penalty_min"] = s.reversal_penalty_min;
  j["keep"] = s.keep;
  if (s.coord) j["coord"] = {(*s.coord)[0], (*s.coord)[1]};
  return j;
}

ordered_json section_to_json(const SectionSpec& s) {
  ordered_json j;
  j["id"] = s.id;
  j["a"] = {{"station", s.a.station}, {"side", std::string(to_string(s.a.side))}};
  j["b"] = {{"station", s.b.station}, {"side", std::string(to_string(s.b.side))}};
  j["length_km"] = s.length_km;
  j["speed_kmh"] = s.speed_kmh;
  return j;
}

}  // namespace

const StationSpec* RawNetwork::find_station(std::string_view id) const {
  auto it = std::find_if(stations.begin(), stations.end(), [&](const StationSpec& s) { return s.id == id; });
  return it == stations.end() ? nullptr : &*it;
}

const SectionSpec* RawNetwork::find_section(std::string_view id) const {
  auto it = std::find_if(sections.begin(), sections.end(), [&](const SectionSpec& s) { return s.id == id; });
  return it == sections.end() ? nullptr : &*it;
}

double travel_time_minutes(const SectionSpec& s) { return s.length_km * 60.0 / s.speed_kmh; }

void check_network(const RawNetwork& n) {
  std::unordered_set<std::string> station_ids;
  for (const auto& st : n.stations) {
    if (st.id.empty()) fail(DataError::Code::InvalidValue, "station id must not be empty");
    if (!station_ids.insert(st.id).second) fail(DataError::Code::DuplicateId, "duplicate station id \"" + st.id + "\"");
    if (!(st.reversal_penalty_min >= 0.0) || !std::isfinite(st.reversal_penalty_min))
      fail(DataError::Code::InvalidValue, "station \"" + st.id + "\" reversal_penalty_min must be >= 0");
  }
  std::unordered_set<std::string> section_ids;
  for (const auto& sec : n.sections) {
    if (sec.id.empty()) fail(DataError::Code::InvalidValue, "section id must not be empty");
    if (!section_ids.insert(sec.id).second) fail(DataError::Code::DuplicateId, "duplicate section id \"" + sec.id + "\"");
    for (const auto* end : {&sec.a, &sec.b}) {
      if (!station_ids.count(end->station))
        fail(DataError::Code::DanglingReference,
             "section \"" + sec.id + "\" references unknown station \"" + end->station + "\"");
    }
    if (sec.a.station == sec.b.station)
      fail(DataError::Code::InvalidValue, "section \"" + sec.id + "\" is a self-loop at \"" + sec.a.station + "\"");
    if (!(sec.length_km > 0.0) || !std::isfinite(sec.length_km))
      fail(DataError::Code::InvalidValue, "section \"" + sec.id + "\" length_km must be > 0");
    if (!(sec.speed_kmh > 0.0) || !std::isfinite(sec.speed_kmh))
      fail(DataError::Code::InvalidValue, "section \"" + sec.id + "\" speed_kmh must be > 0");
  }
}

RawNetwork parse_network(std::string_view doc, const ParseOptions& options) {
  json root;
  try {
    root = json::parse(doc.begin(), doc.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    fail(DataError::Code::Syntax, "syntax error at " + describe_position(doc, byte) + ": " + e.what());
  }
  if (!root.is_object()) fail(DataError::Code::InvalidValue, "network document must be a JSON object");
  check_keys(root, {"stations", "sections"}, "network document", options);

  RawNetwork n;
  const auto& stations = require(root, "stations", "network document");
  const auto& sections = require(root, "sections", "network document");
  if (!stations.is_array() || !sections.is_array())
    fail(DataError::Code::InvalidValue, "\"stations\" and \"sections\" must be arrays");
  for (const auto& v : stations) n.stations.push_back(parse_station(v, options));
  for (const auto& v : sections) n.sections.push_back(parse_section(v, options));
  check_network(n);
  return n;
}

RawNetwork load_network(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(DataError::Code::Io, "cannot open network file \"" + path + "\"");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str(), options);
}

std::string render_network(const RawNetwork& n) {
  ordered_json root;
  root["stations"] = ordered_json::array();
  root["sections"] = ordered_json::array();
  for (const auto& s : n.stations) root["stations"].push_back(station_to_json(s));
  for (const auto& s : n.sections) root["sections"].push_back(section_to_json(s));
  return root.dump(2) + "\n";
}

std::string network_fingerprint(const RawNetwork& n) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : render_network(n)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

ValidationReport validate(const RawNetwork& n) {
  ValidationReport r;
  r.station_count = n.stations.size();
  r.section_count = n.sections.size();

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n.stations.size(); ++i) {
    index.emplace(n.stations[i].id, i);
    switch (n.stations[i].kind) {
      case StationKind::Station: ++r.eligible_count; break;
      case StationKind::Wye: ++r.wye_count; break;
      case StationKind::Auxiliary: ++r.auxiliary_count; break;
    }
  }

  // union-find over stations
  std::vector<std::size_t> parent(n.stations.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::size_t> degree(n.stations.size(), 0);
  for (const auto& sec : n.sections) {
    auto ia = index.find(sec.a.station);
    auto ib = index.find(sec.b.station);
    if (ia == index.end() || ib == index.end()) continue;
    ++degree[ia->second];
    ++degree[ib->second];
    parent[find(ia->second)] = find(ib->second);
  }
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (find(i) == i) ++r.component_count;
    ++r.degree_histogram[degree[i]];
  }
  r.contractible_joints = contractible_joints(n);
  return r;
}

std::string format_validation(const ValidationReport& r) {
  std::ostringstream out;
  out << "stations:    " << r.station_count << " (" << r.eligible_count << " eligible + " << r.auxiliary_count
      << " auxiliary, " << r.wye_count << " wyes)\n";
  out << "sections:    " << r.section_count << "\n";
  out << "components:  " << r.component_count << "\n";
  out << "degrees:    ";
  for (const auto& [deg, count] : r.degree_histogram) out << " " << deg << ":" << count;
  out << "\n";
  out << "contractible joints: " << r.contractible_joints.size();
  for (const auto& id : r.contractible_joints) out << " " << id;
  out << "\n";
  return out.str();
}

}  // namespace railnet
