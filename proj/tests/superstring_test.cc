/*
 * Copyright 2026 The seqobf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "seqobf/superstring.h"

#include <set>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "test_oracles.h"

namespace seqobf {
namespace {

using testing::IntPow;
using testing::LinearWindows;

std::set<std::uint64_t> CyclicWindows(const std::vector<Symbol>& cycle,
                                      std::size_t r, std::size_t l) {
  std::vector<Symbol> unrolled = cycle;
  unrolled.insert(unrolled.end(), cycle.begin(), cycle.begin() + (l - 1));
  return LinearWindows(unrolled, r, l);
}

TEST(DeBruijnTest, OrderOneIsAPermutation) {
  const auto b = de_bruijn(2, 1);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(std::set<Symbol>(b.begin(), b.end()), (std::set<Symbol>{0, 1}));
}

TEST(DeBruijnTest, CanonicalThreeTwo) {
  // Lyndon words of length 1 or 2 over {0,1,2} in lexicographic order.
  EXPECT_EQ(de_bruijn(3, 2),
            (std::vector<Symbol>{0, 0, 1, 0, 2, 1, 1, 2, 2}));
}

TEST(DeBruijnTest, CyclicWindowsAreExactlyAllStrings) {
  for (std::size_t r = 2; r <= 5; ++r) {
    for (std::size_t l = 1; l <= 4; ++l) {
      const auto b = de_bruijn(r, l);
      ASSERT_EQ(b.size(), IntPow(r, l));
      EXPECT_EQ(CyclicWindows(b, r, l).size(), IntPow(r, l))
          << "r=" << r << " l=" << l;
    }
  }
}

TEST(DeBruijnTest, SizeCap) {
  EXPECT_THROW(de_bruijn(2, 25), std::invalid_argument);
  EXPECT_THROW(de_bruijn(10, 3, 999), std::invalid_argument);
  EXPECT_NO_THROW(de_bruijn(10, 3, 1000));
  EXPECT_THROW(de_bruijn(1, 3), std::invalid_argument);
  EXPECT_THROW(de_bruijn(3, 0), std::invalid_argument);
}

TEST(DeBruijnTest, CanonicalCycleIsShared) {
  const auto a = CanonicalCycle(4, 3);
  const auto b = CanonicalCycle(4, 3);
  EXPECT_EQ(a.get(), b.get());
  EXPECT_EQ(*a, de_bruijn(4, 3));
}

TEST(ShortestSuperstringTest, LengthAndCoverage) {
  RandomSource src(5, 5);
  for (std::size_t r = 2; r <= 4; ++r) {
    for (std::size_t l = 1; l <= 3; ++l) {
      for (int trial = 0; trial < 20; ++trial) {
        const Superstring s = shortest_superstring(r, l, src);
        ASSERT_EQ(s.size(), IntPow(r, l) + l - 1);
        EXPECT_EQ(s.kind, SuperstringKind::kShortest);
        EXPECT_TRUE(verify_superstring(s.symbols, r, l));
        EXPECT_EQ(LinearWindows(s.symbols, r, l).size(), IntPow(r, l));
      }
    }
  }
}

TEST(ShortestSuperstringTest, RotationMatchesCanonicalCycle) {
  const auto cycle = de_bruijn(3, 2);
  for (std::size_t rot = 0; rot < cycle.size(); ++rot) {
    const Superstring s = ShortestFromRotation(3, 2, rot);
    for (std::size_t j = 0; j < s.size(); ++j) {
      ASSERT_EQ(s.symbols[j], cycle[(rot + j) % cycle.size()]);
    }
  }
  EXPECT_THROW(ShortestFromRotation(3, 2, 9), std::invalid_argument);
}

TEST(ShortestSuperstringTest, NothingShorterExists) {
  EXPECT_FALSE(testing::AnySuperstringOfLength(2, 2, 4));
  EXPECT_TRUE(testing::AnySuperstringOfLength(2, 2, 5));
  EXPECT_FALSE(testing::AnySuperstringOfLength(2, 3, 9));
  EXPECT_TRUE(testing::AnySuperstringOfLength(2, 3, 10));
}

TEST(ShortestSuperstringTest, FirstWindowIsUniform) {
  RandomSource src(77, 0);
  const std::size_t r = 3, l = 2;
  std::vector<std::uint64_t> counts(IntPow(r, l), 0);
  for (int i = 0; i < 90000; ++i) {
    const Superstring s = shortest_superstring(r, l, src);
    ++counts[s.symbols[0] * r + s.symbols[1]];
  }
  EXPECT_GT(testing::UniformChiSquarePValue(counts), 1e-3);
}

TEST(ConcatSuperstringTest, BlocksAppearOnceAtAlignedOffsets) {
  RandomSource src(8, 0);
  for (std::size_t r = 2; r <= 3; ++r) {
    for (std::size_t l = 1; l <= 3; ++l) {
      const Superstring s = concat_superstring(r, l, src);
      ASSERT_EQ(s.size(), l * IntPow(r, l));
      std::set<std::uint64_t> blocks;
      for (std::size_t b = 0; b < IntPow(r, l); ++b) {
        std::uint64_t code = 0;
        for (std::size_t j = 0; j < l; ++j) code = code * r + s.symbols[b * l + j];
        blocks.insert(code);
      }
      EXPECT_EQ(blocks.size(), IntPow(r, l));
      EXPECT_TRUE(verify_superstring(s.symbols, r, l));
    }
  }
}

TEST(ConcatSuperstringTest, BlockSlotUniformity) {
  RandomSource src(31, 0);
  const std::size_t r = 2, l = 3, blocks = 8;
  constexpr int kDraws = 100000;
  // counts[block][slot]
  std::vector<std::vector<int>> counts(blocks, std::vector<int>(blocks, 0));
  for (int i = 0; i < kDraws; ++i) {
    const Superstring s = concat_superstring(r, l, src);
    for (std::size_t slot = 0; slot < blocks; ++slot) {
      std::size_t code = 0;
      for (std::size_t j = 0; j < l; ++j) code = code * r + s.symbols[slot * l + j];
      ++counts[code][slot];
    }
  }
  for (const auto& row : counts) {
    for (int c : row) EXPECT_NEAR(static_cast<double>(c) / kDraws, 1.0 / 8, 0.01);
  }
}

TEST(VerifySuperstringTest, Examples) {
  EXPECT_TRUE(verify_superstring(std::vector<Symbol>{0, 0, 1, 1, 0}, 2, 2));
  EXPECT_FALSE(verify_superstring(std::vector<Symbol>{0, 0, 1, 1}, 2, 2));
  EXPECT_FALSE(verify_superstring(std::vector<Symbol>{}, 2, 1));
  // An out-of-alphabet symbol breaks windows rather than aliasing.
  EXPECT_FALSE(verify_superstring(std::vector<Symbol>{0, 0, 1, 2, 1, 0}, 2, 2));
  EXPECT_TRUE(verify_superstring(std::vector<Symbol>{0, 0, 1, 2, 1, 1, 0}, 2, 2));
}

TEST(VerifySuperstringTest, AgreesWithWindowSetOnRandomSequences) {
  RandomSource src(4, 4);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t r = 2 + src.uniform_int(2);
    const std::size_t l = 1 + src.uniform_int(3);
    std::vector<Symbol> seq(src.uniform_int(40));
    for (auto& s : seq) s = static_cast<Symbol>(src.uniform_int(r));
    ASSERT_EQ(verify_superstring(seq, r, l),
              LinearWindows(seq, r, l).size() == IntPow(r, l));
  }
}

TEST(KindTest, NamesRoundTrip) {
  EXPECT_EQ(ParseKind("shortest"), SuperstringKind::kShortest);
  EXPECT_EQ(ParseKind("concat"), SuperstringKind::kConcatenation);
  EXPECT_EQ(ParseKind(KindName(SuperstringKind::kConcatenation)),
            SuperstringKind::kConcatenation);
  EXPECT_FALSE(ParseKind("other").has_value());
}

}  // namespace
}  // namespace seqobf
