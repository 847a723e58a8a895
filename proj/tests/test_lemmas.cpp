#include <gtest/gtest.h>

#include "hairy/lie_lemmas.hpp"

using namespace hairy;

TEST(LieLemmas, SeparatedGraphsAndHairSwapsAreBoundaries) {
  std::size_t separated = 0, swaps = 0;
  for (int n = 1; n <= 2; ++n)
    for (int d = 1; d <= 3; ++d)
      for (int r = 0; r <= 2; ++r)
        for (int h = 0; h <= d + 2; ++h) {
          const SliceKey key{OperadKind::Lie, n, 1, d, r, h};
          for (const auto& [content, mult] : content_orbits(n, h)) {
            const BoundaryImage image(key, content);
            for (const auto& c : separated_graphs(key, content)) {
              ASSERT_TRUE(image.contains(c)) << key.str();
              ++separated;
            }
            for (const auto& c : hair_swap_differences(key, content)) {
              ASSERT_TRUE(image.contains(c)) << key.str();
              ++swaps;
            }
          }
        }
  EXPECT_GT(separated, 0u);
  EXPECT_GT(swaps, 0u);
}

TEST(LieLemmas, MembershipTestRejectsNonBoundaries) {
  // tripods carry first homology, so none of them is a boundary
  const SliceKey key{OperadKind::Lie, 2, 1, 1, 0, 3};
  const LabelContent content{1, 1, 1, 0};
  const BoundaryImage image(key, content);
  ASSERT_FALSE(image.basis().empty());
  for (const auto& g : image.basis()) EXPECT_FALSE(image.contains(Chain{{g, 1}}));
}
