#pragma once

// JSON form of hairy graphs and chains, and a small on-disk result cache.
//
// Graph schema 1:
//   {"schema": 1, "kind": "Lie", "n": 2,
//    "vertices": [{"operad": [1, 3, 2], "slots": 4}, ...],
//    "edges": [[tail_vertex, tail_slot, head_vertex, head_slot], ...],
//    "hairs": [[vertex, slot, "p3"], ...]}
// "operad" is the basis payload: [] for Com, the cyclic order of slots for Assoc, the
// left-normed word for Lie. Edges point from the first listed end to the second.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "hairy/graph.hpp"
#include "json.hpp"

namespace hairy {

using Json = nlohmann::json;

inline constexpr int kGraphSchema = 1;

inline int label_rank(const HairyGraph& g) {
  int n = 1;
  for (const auto& h : g.hairs) n = std::max(n, h.label.index());
  return n;
}

inline Json to_json(const HairyGraph& g) {
  Json j;
  j["schema"] = kGraphSchema;
  j["kind"] = std::string(to_string(g.kind));
  j["n"] = label_rank(g);
  j["vertices"] = Json::array();
  for (const auto& v : g.vertices) j["vertices"].push_back({{"operad", v.payload()}, {"slots", v.arity}});
  j["edges"] = Json::array();
  for (const auto& e : g.edges) j["edges"].push_back({e.tail_vertex, e.tail_slot, e.head_vertex, e.head_slot});
  j["hairs"] = Json::array();
  for (const auto& h : g.hairs) j["hairs"].push_back(Json::array({h.vertex, h.slot, h.label.str()}));
  return j;
}

/// Parses and validates a graph; throws std::invalid_argument on any malformation.
inline HairyGraph graph_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw std::invalid_argument("graph JSON must be an object");
    if (j.at("schema").get<int>() != kGraphSchema) throw std::invalid_argument("unsupported graph schema");
    HairyGraph g;
    g.kind = parse_operad_kind(j.at("kind").get<std::string>());
    for (const auto& v : j.at("vertices")) {
      const int m = v.at("slots").get<int>();
      const auto payload = v.at("operad").get<std::vector<int>>();
      g.vertices.push_back(basis_element_from_payload(g.kind, m, payload));
    }
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 4) throw std::invalid_argument("edge must have four entries");
      g.edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>()});
    }
    for (const auto& h : j.at("hairs")) {
      if (!h.is_array() || h.size() != 3) throw std::invalid_argument("hair must have three entries");
      g.hairs.push_back({h[0].get<int>(), h[1].get<int>(), Symbol::parse(h[2].get<std::string>())});
    }
    g.validate();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed graph JSON: ") + e.what());
  }
}

inline Json to_json(const Chain& c) {
  Json j;
  j["schema"] = kGraphSchema;
  j["terms"] = Json::array();
  for (const auto& [g, x] : c) j["terms"].push_back({{"coeff", to_string(x)}, {"graph", to_json(g.graph())}});
  return j;
}

inline Chain chain_from_json(const Json& j) {
  try {
    if (j.at("schema").get<int>() != kGraphSchema) throw std::invalid_argument("unsupported chain schema");
    Chain out;
    for (const auto& t : j.at("terms")) add_scaled(out, canonicalize(graph_from_json(t.at("graph"))), parse_rational(t.at("coeff").get<std::string>()));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed chain JSON: ") + e.what());
  }
}

/// Raised when a cache entry exists but cannot be trusted.
class CacheCorruption : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Directory of JSON result files, one per key. Entries written by another schema
/// version are treated as absent; unreadable entries raise CacheCorruption.
class DiskCache {
 public:
  static constexpr int kSchema = 1;

  explicit DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
    const auto probe = dir_ / ".write-probe";
    std::ofstream f(probe);
    if (!f) throw std::invalid_argument("cache directory is not writable: " + dir_.string());
    f.close();
    std::filesystem::remove(probe);
  }

  /// The directory named by HAIRY_CACHE_DIR, if set.
  static std::optional<std::filesystem::path> from_environment() {
    if (const char* e = std::getenv("HAIRY_CACHE_DIR"); e && *e) return std::filesystem::path(e);
    return std::nullopt;
  }

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<Json> get(const std::string& key) const {
    const auto path = file(key);
    if (!std::filesystem::exists(path)) return std::nullopt;
    std::ifstream in(path);
    Json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception&) {
      throw CacheCorruption("unreadable cache entry " + path.string());
    }
    if (!j.is_object() || !j.contains("schema") || !j.contains("key") || !j.contains("value"))
      throw CacheCorruption("cache entry lacks required fields: " + path.string());
    if (!j["schema"].is_number_integer() || j["schema"].get<int>() != kSchema) return std::nullopt;
    if (j["key"] != key) throw CacheCorruption("cache entry key mismatch: " + path.string());
    return j["value"];
  }

  /// Writes through a temporary file renamed into place.
  void put(const std::string& key, const Json& value) const {
    static std::atomic<unsigned long> counter{0};
    const auto path = file(key);
    std::ostringstream tmpname;
    tmpname << path.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.' << counter++;
    const auto tmp = dir_ / tmpname.str();
    {
      std::ofstream out(tmp);
      if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
      out << Json{{"schema", kSchema}, {"key", key}, {"value", value}}.dump() << '\n';
      if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  }

 private:
  std::filesystem::path file(const std::string& key) const {
    std::string name;
    for (char c : key) name += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : '_';
    return dir_ / (name + ".json");
  }

  std::filesystem::path dir_;
};

}  // namespace hairy
