#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "hairy/enumerate.hpp"
#include "hairy/serialize.hpp"

using namespace hairy;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("hairy-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST(Serialize, GraphRoundTripOverSmallBases) {
  std::size_t checked = 0;
  for (auto kind : {OperadKind::Com, OperadKind::Assoc, OperadKind::Lie})
    for (int d = 1; d <= 3; ++d)
      for (int k = 1; k <= 2; ++k)
        for (int r = 0; r <= 2; ++r)
          for (int h = 0; h <= d + 2; ++h)
            for (const auto& g : enumerate_basis({kind, 2, k, d, r, h}, true)) {
              const auto j = to_json(g.graph());
              const auto text = j.dump();
              const auto back = graph_from_json(Json::parse(text));
              const auto c = canonicalize(back);
              ASSERT_EQ(c.size(), 1u);
              EXPECT_TRUE(c.begin()->first == g);
              EXPECT_EQ(c.begin()->second, 1);
              ++checked;
            }
  EXPECT_GT(checked, 100u);
}

TEST(Serialize, ChainRoundTrip) {
  const auto basis = enumerate_basis({OperadKind::Lie, 1, 2, 3, 1, 3}, true);
  ASSERT_FALSE(basis.empty());
  Chain c;
  for (std::size_t i = 0; i < basis.size(); ++i) add_scaled(c, Chain{{basis[i], 1}}, Rational(static_cast<long>(i) + 1) / Rational(3));
  EXPECT_EQ(chain_from_json(Json::parse(to_json(c).dump())), c);
  EXPECT_EQ(chain_from_json(Json::parse(to_json(boundary(c)).dump())), boundary(c));
}

TEST(Serialize, MalformedGraphsAreRejected) {
  const auto g = enumerate_basis({OperadKind::Assoc, 1, 1, 2, 1, 2}, true).front().graph();
  auto j = to_json(g);
  auto bad = j;
  bad["schema"] = 7;
  EXPECT_THROW(graph_from_json(bad), std::invalid_argument);
  bad = j;
  bad["kind"] = "Pre-Lie";
  EXPECT_THROW(graph_from_json(bad), std::invalid_argument);
  bad = j;
  bad["hairs"][0][2] = "x9";
  EXPECT_THROW(graph_from_json(bad), std::invalid_argument);
  bad = j;
  bad["vertices"][0]["operad"] = {0, 0, 0, 0};
  EXPECT_THROW(graph_from_json(bad), std::invalid_argument);
  bad = j;
  bad.erase("edges");
  EXPECT_THROW(graph_from_json(bad), std::invalid_argument);
  EXPECT_THROW(graph_from_json(Json::array()), std::invalid_argument);
}

TEST(Serialize, DiskCacheRoundTripAndCorruption) {
  const auto dir = fresh_dir("cache");
  DiskCache cache(dir);
  EXPECT_FALSE(cache.get("Lie n=1 d=4").has_value());
  cache.put("Lie n=1 d=4", Json{{"betti", 3}});
  const auto got = cache.get("Lie n=1 d=4");
  ASSERT_TRUE(got.has_value());
  EXPECT_EQ((*got)["betti"], 3);

  // other schema versions are misses
  const auto path = dir / "Lie_n_1_d_4.json";
  ASSERT_TRUE(std::filesystem::exists(path));
  std::ofstream(path) << R"({"schema": 99, "key": "Lie n=1 d=4", "value": 1})";
  EXPECT_FALSE(cache.get("Lie n=1 d=4").has_value());

  std::ofstream(path) << "{not json";
  EXPECT_THROW(cache.get("Lie n=1 d=4"), CacheCorruption);
  std::ofstream(path) << R"({"schema": 1, "key": "something else", "value": 1})";
  EXPECT_THROW(cache.get("Lie n=1 d=4"), CacheCorruption);

  for (const auto& e : std::filesystem::directory_iterator(dir)) EXPECT_EQ(e.path().string().find(".tmp."), std::string::npos);
  std::filesystem::remove_all(dir);
}
