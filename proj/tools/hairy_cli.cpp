// hairy: enumerate, check and compute homology of hairy graph complexes.
//
// Exit codes: 0 success, 2 invariant violation, 3 invalid configuration, 4 cache corruption.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hairy/checks.hpp"
#include "hairy/closed_forms.hpp"
#include "hairy/parallel.hpp"
#include "hairy/serialize.hpp"

using namespace hairy;

namespace {

enum Exit { kOk = 0, kInvariant = 2, kConfig = 3, kCache = 4 };

struct RunConfig {
  std::string kind = "all";
  int n = 1;
  int max_degree = 3;
  int max_rank = 2;
  int max_hairs = -1;     // default: 3 * degree
  int max_vertices = -1;  // default: degree
  bool connected = true;
  bool include_empty = false;
  std::string format = "text";
  std::string cache_dir;
  unsigned seed = 1;
  unsigned jobs = 1;
  std::string fault;
  // dump-matrix slice
  int k = 1, d = 1, r = 0, h = 0;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<OperadKind> selected_kinds(const RunConfig& cfg) {
  if (cfg.kind == "all") return {std::begin(kAllKinds), std::end(kAllKinds)};
  return {parse_operad_kind(cfg.kind)};
}

void validate(const RunConfig& cfg) {
  if (cfg.n < 1) throw ConfigError("--n must be positive");
  if (cfg.max_degree < 1) throw ConfigError("--max-degree must be positive");
  if (cfg.max_rank < 0) throw ConfigError("--max-rank must be non-negative");
  if (cfg.max_hairs < -1) throw ConfigError("--max-hairs must be non-negative");
  if (cfg.max_vertices == 0 || cfg.max_vertices < -1) throw ConfigError("--max-vertices must be positive");
  if (cfg.jobs < 1) throw ConfigError("--jobs must be positive");
  if (cfg.kind != "all") parse_operad_kind(cfg.kind);
}

std::optional<DiskCache> open_cache(const RunConfig& cfg) {
  std::optional<std::filesystem::path> dir;
  if (!cfg.cache_dir.empty())
    dir = cfg.cache_dir;
  else
    dir = DiskCache::from_environment();
  if (!dir) return std::nullopt;
  try {
    return DiskCache(*dir);
  } catch (const std::filesystem::filesystem_error& e) {
    throw ConfigError(std::string("cache directory: ") + e.what());
  }
}

// Output tables

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

std::string cell_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void emit(const std::string& command, const std::vector<Table>& tables, const std::string& format, std::ostream& os) {
  if (format == "json") {
    Json out{{"command", command}, {"tables", Json::array()}};
    for (const auto& t : tables) {
      Json rows = Json::array();
      for (const auto& row : t.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
        rows.push_back(std::move(obj));
      }
      out["tables"].push_back({{"name", t.name}, {"columns", t.columns}, {"rows", std::move(rows)}});
    }
    os << out.dump(2) << '\n';
  } else if (format == "csv") {
    bool first = true;
    for (const auto& t : tables) {
      if (!first) os << '\n';
      first = false;
      os << "table";
      for (const auto& c : t.columns) os << ',' << csv_field(c);
      os << '\n';
      for (const auto& row : t.rows) {
        os << csv_field(t.name);
        for (const auto& v : row) os << ',' << csv_field(cell_text(v));
        os << '\n';
      }
    }
  } else {
    bool first = true;
    for (const auto& t : tables) {
      if (!first) os << '\n';
      first = false;
      os << "== " << t.name << " ==\n";
      std::vector<std::size_t> width(t.columns.size());
      for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
      for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], cell_text(row[i]).size());
      // numbers right-aligned, text left-aligned
      auto line = [&](const std::vector<std::string>& cells, const std::vector<char>& left) {
        for (std::size_t i = 0; i < cells.size(); ++i)
          os << (i ? "  " : "") << (left[i] ? std::left : std::right) << std::setw(static_cast<int>(width[i])) << cells[i];
        os << std::right << '\n';
      };
      line(t.columns, std::vector<char>(t.columns.size(), 0));
      for (const auto& row : t.rows) {
        std::vector<std::string> cells;
        std::vector<char> left;
        for (const auto& v : row) {
          cells.push_back(cell_text(v));
          left.push_back(v.is_string());
        }
        line(cells, left);
      }
    }
  }
}

// Slices within the configured bounds, in (kind, d, k, r, h) order.
std::vector<SliceKey> slices(const RunConfig& cfg) {
  std::vector<SliceKey> out;
  for (auto kind : selected_kinds(cfg))
    for (int d = 1; d <= cfg.max_degree; ++d)
      for (int k = 1; k <= (cfg.max_vertices < 0 ? d : std::min(d, cfg.max_vertices)); ++k)
        for (int r = 0; r <= cfg.max_rank; ++r)
          for (int h = 0; h <= (cfg.max_hairs < 0 ? 3 * d : cfg.max_hairs); ++h) {
            const SliceKey key{kind, cfg.n, k, d, r, h};
            if (cfg.include_empty || (key.components() >= 0 && (!cfg.connected || key.components() == 1)))
              out.push_back(key);
          }
  return out;
}

std::string cache_key(const std::string& what, const SliceKey& key, bool connected) {
  std::ostringstream s;
  s << what << '-' << to_string(key.kind) << "-n" << key.n << "-k" << key.k << "-d" << key.d << "-r" << key.r << "-h" << key.h
    << (connected ? "-conn" : "-all");
  return s.str();
}

template <class Compute>
std::pair<Json, bool> cached(const std::optional<DiskCache>& cache, const std::string& key, Compute compute) {
  if (cache)
    if (auto hit = cache->get(key)) return {*hit, true};
  Json value = compute();
  if (cache) cache->put(key, value);
  return {value, false};
}

std::vector<Json> key_cells(const SliceKey& key) { return {std::string(to_string(key.kind)), key.n, key.k, key.d, key.r, key.h}; }

int cmd_basis(const RunConfig& cfg) {
  const auto cache = open_cache(cfg);
  const auto keys = slices(cfg);
  const auto rows = parallel_map<std::vector<Json>>(keys.size(), cfg.jobs, [&](std::size_t i) {
    const auto& key = keys[i];
    const auto [value, hit] = cached(cache, cache_key("basis", key, cfg.connected), [&] {
      return Json{{"dim", key.components() < 0 ? 0 : enumerate_basis(key, cfg.connected).size()}};
    });
    std::vector<Json> row = key_cells(key);
    row.push_back(cfg.connected);
    row.push_back(value.at("dim"));
    row.push_back(hit ? "yes" : "no");
    return row;
  });
  emit("basis", {{"slice dimensions", {"kind", "n", "k", "d", "r", "h", "connected", "dim", "cached"}, rows}}, cfg.format, std::cout);
  return kOk;
}

// Expected H_1 for a single-vertex connected slice, when a closed form applies to it alone.
std::optional<Integer> expected_for(const SliceKey& key, bool connected) {
  if (!connected || key.k != 1 || key.kind != OperadKind::Lie || key.r > 2) return std::nullopt;
  return expected_h1(OperadKind::Lie, 2 * key.n, key.d, key.r);
}

int cmd_homology(const RunConfig& cfg) {
  const auto cache = open_cache(cfg);
  const auto keys = slices(cfg);
  struct Result {
    std::vector<Json> row;
    long betti = 0;
    bool verdict_fail = false;
  };
  const auto results = parallel_map<Result>(keys.size(), cfg.jobs, [&](std::size_t i) {
    const auto& key = keys[i];
    const auto [value, hit] = cached(cache, cache_key("homology", key, cfg.connected), [&] {
      HomologyReport rep;
      if (key.components() >= 0) rep = slice_homology(key, cfg.connected).report;
      return Json{{"dim", rep.dim_chains}, {"rank_in", rep.rank_in}, {"rank_out", rep.rank_out}, {"betti", rep.betti}};
    });
    Result res;
    res.betti = value.at("betti").get<long>();
    res.row = key_cells(key);
    for (const char* f : {"dim", "rank_in", "rank_out", "betti"}) res.row.push_back(value.at(f));
    if (const auto e = expected_for(key, cfg.connected)) {
      res.row.push_back(e->get_str());
      res.verdict_fail = Integer(res.betti) != *e;
      res.row.push_back(res.verdict_fail ? "FAIL" : "PASS");
    } else {
      res.row.push_back("");
      res.row.push_back("N-A");
    }
    res.row.push_back(hit ? "yes" : "no");
    return res;
  });

  Table per_slice{"homology", {"kind", "n", "k", "d", "r", "h", "dim", "rank_in", "rank_out", "betti", "expected", "verdict", "cached"}, {}};
  bool failed = false;
  for (const auto& r : results) {
    per_slice.rows.push_back(r.row);
    failed |= r.verdict_fail;
  }

  // Com and Assoc closed forms describe H_1 summed over all ranks of one degree.
  Table summed{"H1 by degree", {"kind", "n", "d", "betti", "expected", "verdict"}, {}};
  for (auto kind : selected_kinds(cfg)) {
    if (kind == OperadKind::Lie || !cfg.connected) continue;
    for (int d = 1; d <= cfg.max_degree; ++d) {
      const bool complete = cfg.max_rank >= (d + 2) / 2 && (cfg.max_hairs < 0 || cfg.max_hairs >= d + 2);
      long total = 0;
      for (std::size_t i = 0; i < keys.size(); ++i)
        if (keys[i].kind == kind && keys[i].d == d && keys[i].k == 1) total += results[i].betti;
      if (!complete) {
        summed.rows.push_back({std::string(to_string(kind)), cfg.n, d, total, "", "N-A"});
        continue;
      }
      const auto e = expected_h1(kind, 2 * cfg.n, d);
      const bool ok = Integer(total) == e;
      failed |= !ok;
      summed.rows.push_back({std::string(to_string(kind)), cfg.n, d, total, e.get_str(), ok ? "PASS" : "FAIL"});
    }
  }
  std::vector<Table> tables{per_slice};
  if (!summed.rows.empty()) tables.push_back(summed);
  emit("homology", tables, cfg.format, std::cout);
  if (failed) std::cerr << "homology: a computed Betti number disagrees with its closed form\n";
  return failed ? kInvariant : kOk;
}

int cmd_trace_check(const RunConfig& cfg) {
  FaultInjection fault;
  if (cfg.fault == "sign-flip")
    fault.flip_trace_sign = true;
  else if (!cfg.fault.empty())
    throw ConfigError("unknown fault: " + cfg.fault);

  std::vector<std::function<CheckReport()>> suites;
  const int low = std::min(cfg.max_degree, 3);
  for (auto kind : selected_kinds(cfg)) {
    for (int n = 1; n <= cfg.n; ++n) {
      suites.push_back([=] { return check_chain_map(kind, n, 3, cfg.max_degree, fault); });
      suites.push_back([=] { return check_beta_inverts_trace(kind, n, low, fault); });
      suites.push_back([=] { return check_beta_chain_map(kind, n, low, cfg.seed); });
    }
    suites.push_back([=] { return check_surjectivity(kind, low, fault); });
  }
  const auto reports = parallel_map<CheckReport>(suites.size(), cfg.jobs, [&](std::size_t i) { return suites[i](); });

  Table t{"trace identities", {"suite", "verified", "nontrivial", "matchings", "status"}, {}};
  std::size_t total = 0;
  bool failed = false;
  for (const auto& r : reports) {
    t.rows.push_back({r.name, r.verified, r.nontrivial, r.matchings, r.ok() ? "PASS" : "FAIL"});
    total += r.matchings;
    failed |= !r.ok();
  }
  Table summary{"summary", {"suites", "matchings_total", "status"}, {{reports.size(), total, failed ? "FAIL" : "PASS"}}};
  emit("trace-check", {t, summary}, cfg.format, std::cout);
  for (const auto& r : reports)
    if (!r.ok()) std::cerr << "counterexample (" << r.name << "): " << *r.counterexample << '\n';
  return failed ? kInvariant : kOk;
}

int cmd_tables(const RunConfig& cfg) {
  Table cusp{"cusp form dimensions", {"k", "s_k"}, {}};
  for (long k = 0; k <= 30; ++k) cusp.rows.push_back({k, cusp_dim(k)});

  Table lam{"lambda multiplicities", {"k", "l", "lambda", "weyl_dim"}, {}};
  for (long s = 2; s <= 14; ++s)
    for (long l = 0; 2 * l <= s; ++l) {
      const long k = s - l;
      if (const long x = lambda(k, l); x > 0) lam.rows.push_back({k, l, x, weyl_dim_two_row(k, l, 2 * cfg.n).get_str()});
    }

  Table parts{"partitions by hair count", {"h", "partitions"}, {}};
  for (long h = 2; h <= 14; h += 2) {
    std::string text;
    for (const auto& [kl, mult] : rank2_partitions(h)) {
      if (!text.empty()) text += ", ";
      text += "(" + std::to_string(kl.first) + "," + std::to_string(kl.second) + ")";
      if (mult > 1) text += "x" + std::to_string(mult);
    }
    parts.rows.push_back({h, text});
  }

  const int hmax = cfg.max_hairs >= 0 ? cfg.max_hairs : (cfg.n == 1 ? 14 : 8);
  std::vector<long> hs;
  for (long h = 0; h <= hmax; ++h) hs.push_back(h);
  const auto poly = parallel_map<long>(hs.size(), cfg.jobs, [&](std::size_t i) { return rank2_poly_dim(cfg.n, static_cast<int>(hs[i])); });
  Table h12{"rank two comparison", {"n", "h", "closed", "polynomial", "verdict"}, {}};
  bool failed = false;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const auto closed = h12_dim_closed(2 * cfg.n, hs[i]);
    const bool ok = closed == poly[i];
    failed |= !ok;
    h12.rows.push_back({cfg.n, hs[i], closed.get_str(), poly[i], ok ? "PASS" : "FAIL"});
  }
  emit("tables", {cusp, lam, parts, h12}, cfg.format, std::cout);
  return failed ? kInvariant : kOk;
}

int cmd_dump_matrix(const RunConfig& cfg) {
  const auto kinds = selected_kinds(cfg);
  if (kinds.size() != 1) throw ConfigError("dump-matrix needs a single --kind");
  const SliceKey key{kinds.front(), cfg.n, cfg.k, cfg.d, cfg.r, cfg.h};
  key.validate();
  const auto from = enumerate_basis(key, cfg.connected);
  SliceKey lower = key;
  --lower.k;
  const auto to = key.k > 1 ? enumerate_basis(lower, cfg.connected) : std::vector<GraphKey>{};
  const auto m = boundary_matrix(from, to);
  if (cfg.format == "json") {
    Json out{{"slice", key.str()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", Json::array()}, {"domain", Json::array()}, {"codomain", Json::array()}};
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (const auto& [c, v] : m.row(r)) out["entries"].push_back({r, c, to_string(v)});
    for (const auto& g : from) out["domain"].push_back(to_json(g.graph()));
    for (const auto& g : to) out["codomain"].push_back(to_json(g.graph()));
    std::cout << out.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    std::cout << "row,col,value\n";
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (const auto& [c, v] : m.row(r)) std::cout << r << ',' << c << ',' << to_string(v) << '\n';
  } else {
    m.write(std::cout);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hairy graph complexes: bases, boundary matrices, homology and trace identities"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--kind", cfg.kind, "Operad: Com, Assoc, Lie or all")->capture_default_str();
    sub->add_option("--n", cfg.n, "Symplectic rank; V has dimension 2n")->capture_default_str();
    sub->add_option("--connected", cfg.connected, "Restrict to connected graphs")->capture_default_str();
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
  };
  auto bounds = [&](CLI::App* sub) {
    sub->add_option("--max-degree", cfg.max_degree, "Largest degree")->capture_default_str();
    sub->add_option("--max-rank", cfg.max_rank, "Largest loop rank")->capture_default_str();
    sub->add_option("--max-hairs", cfg.max_hairs, "Largest hair count (default 3 * degree)");
    sub->add_option("--max-vertices", cfg.max_vertices, "Largest vertex count (default degree)");
    sub->add_option("--cache-dir", cfg.cache_dir, "Result cache (default $HAIRY_CACHE_DIR)");
    sub->add_flag("--include-empty", cfg.include_empty, "Also list slices whose gradings admit no graph");
  };

  auto* basis = app.add_subcommand("basis", "Dimensions of graded slices");
  common(basis);
  bounds(basis);
  auto* homology = app.add_subcommand("homology", "Homology of graded slices with closed-form cross-checks");
  common(homology);
  bounds(homology);
  auto* trace = app.add_subcommand("trace-check", "Verify trace chain-map, inverse and round-trip identities");
  common(trace);
  trace->add_option("--max-degree", cfg.max_degree, "Largest wedge degree for the chain-map suite")->capture_default_str();
  trace->add_option("--seed", cfg.seed, "Seed for random chains")->capture_default_str();
  trace->add_option("--inject-fault", cfg.fault, "Corrupt the trace (sign-flip)")->group("");
  auto* tables = app.add_subcommand("tables", "Cusp form, multiplicity and rank two tables");
  common(tables);
  tables->add_option("--max-hairs", cfg.max_hairs, "Largest hair count in the rank two comparison");
  auto* dump = app.add_subcommand("dump-matrix", "Boundary matrix out of one slice");
  common(dump);
  dump->add_option("--vertices", cfg.k, "Vertices of the source slice")->capture_default_str();
  dump->add_option("--degree", cfg.d, "Degree")->capture_default_str();
  dump->add_option("--rank", cfg.r, "Loop rank")->capture_default_str();
  dump->add_option("--hairs", cfg.h, "Hairs")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    validate(cfg);
    if (*basis) return cmd_basis(cfg);
    if (*homology) return cmd_homology(cfg);
    if (*trace) return cmd_trace_check(cfg);
    if (*tables) return cmd_tables(cfg);
    return cmd_dump_matrix(cfg);
  } catch (const CacheCorruption& e) {
    std::cerr << "cache corruption: " << e.what() << '\n';
    return kCache;
  } catch (const ComplexIntegrityError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
