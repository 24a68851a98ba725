// Copyright 2026 The ahsal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "support.hpp"

#include <gtest/gtest.h>

namespace ahsal {
namespace {

using testing::Gen;

TEST(Lab, BlackIsOrigin) {
    const Lab c = color::to_lab({0, 0, 0});
    EXPECT_DOUBLE_EQ(c.l, 0.0);
    EXPECT_DOUBLE_EQ(c.a, 0.0);
    EXPECT_DOUBLE_EQ(c.b, 0.0);
}

TEST(Lab, WhiteIsFullLightnessNeutral) {
    const Lab c = color::to_lab({255, 255, 255});
    EXPECT_NEAR(c.l, 100.0, 1e-2);
    EXPECT_NEAR(c.a, 0.0, 1e-2);
    EXPECT_NEAR(c.b, 0.0, 1e-2);
}

TEST(Lab, RedMatchesReferenceFormulas) {
    const Lab c = color::to_lab({255, 0, 0});
    const Lab ref = testing::reference_lab(255, 0, 0);
    EXPECT_NEAR(c.l, ref.l, 1e-2);
    EXPECT_NEAR(c.a, ref.a, 1e-2);
    EXPECT_NEAR(c.b, ref.b, 1e-2);
    // Published value for pure sRGB red.
    EXPECT_NEAR(c.l, 53.2408, 1e-2);
    EXPECT_NEAR(c.a, 80.0925, 1e-2);
    EXPECT_NEAR(c.b, 67.2032, 1e-2);
}

TEST(Lab, RandomColoursMatchReference) {
    Gen gen(7);
    for(int i = 0; i < 2000; ++i) {
        const int r = gen.integer(0, 255), g = gen.integer(0, 255), b = gen.integer(0, 255);
        const Lab c = color::to_lab({static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b)});
        const Lab ref = testing::reference_lab(r, g, b);
        ASSERT_NEAR(c.l, ref.l, 1e-6) << r << "," << g << "," << b;
        ASSERT_NEAR(c.a, ref.a, 1e-6);
        ASSERT_NEAR(c.b, ref.b, 1e-6);
    }
}

TEST(Lab, ImageConversionKeepsShape) {
    Gen gen(3);
    const RgbImage img = gen.rgb_image(7, 5);
    const LabImage lab = rgb_to_lab(img);
    ASSERT_TRUE(lab.same_shape(img));
    for(int y = 0; y < 5; ++y)
        for(int x = 0; x < 7; ++x) {
            const Lab want = color::to_lab(img(x, y));
            EXPECT_EQ(lab(x, y).l, want.l);
            EXPECT_EQ(lab(x, y).a, want.a);
            EXPECT_EQ(lab(x, y).b, want.b);
        }
}

TEST(Grid, RejectsEmptyDimensions) {
    EXPECT_THROW(ScalarMap(0, 3), Error);
    EXPECT_THROW(ScalarMap(3, -1), Error);
    ScalarMap m(2, 2);
    EXPECT_THROW(m.at(2, 0), Error);
}

TEST(Integral, AllOnesFullSum) {
    const Grid<int> ones(3, 3, 1);
    const auto ii = integral_image(ones);
    EXPECT_EQ(ii.rect_sum(0, 0, 2, 2), 9);
    EXPECT_EQ(ii.total(), 9);
}

TEST(Integral, SinglePixel) {
    const ScalarMap m(1, 1, 0.375);
    EXPECT_EQ(integral_image(m).rect_sum(0, 0, 0, 0), 0.375);
}

TEST(Integral, PaddedLayoutFirstRowAndColumnZero) {
    Gen gen(11);
    const Grid<int> m = gen.int_map(5, 4, 1, 9);
    const auto ii = integral_image(m);
    for(int x = 0; x <= 5; ++x)
        EXPECT_EQ(ii(x, 0), 0);
    for(int y = 0; y <= 4; ++y)
        EXPECT_EQ(ii(0, y), 0);
    for(int y = 0; y <= 4; ++y)
        for(int x = 0; x <= 5; ++x)
            EXPECT_EQ(ii(x, y), x && y ? testing::naive_rect_sum(m, 0, 0, x - 1, y - 1) : 0);
}

TEST(Integral, EverySubRectangleOfRandom4x4) {
    Gen gen(5);
    const Grid<int> m = gen.int_map(4, 4, -50, 50);
    const auto ii = integral_image(m);
    for(int t = 0; t < 4; ++t)
        for(int b = t; b < 4; ++b)
            for(int l = 0; l < 4; ++l)
                for(int r = l; r < 4; ++r)
                    EXPECT_EQ(ii.rect_sum(l, t, r, b), testing::naive_rect_sum(m, l, t, r, b));
}

TEST(Integral, RandomRectanglesRealValued) {
    Gen gen(13);
    const ScalarMap m = gen.real_map(37, 23, -1.0, 1.0);
    const auto ii = integral_image(m);
    for(int k = 0; k < 1000; ++k) {
        const auto w = gen.window(37, 23);
        ASSERT_NEAR(ii.rect_sum(w.l, w.t, w.r, w.b), testing::naive_rect_sum(m, w.l, w.t, w.r, w.b), 1e-9);
    }
}

TEST(Integral, EmptyRectangleIsZero) {
    const Grid<int> ones(3, 3, 1);
    EXPECT_EQ(integral_image(ones).rect_sum(2, 0, 1, 2), 0);
}

TEST(Integral, WideAccumulatorForBytes) {
    const Grid<std::uint8_t> m(4000, 2000, 255);
    const auto ii = integral_image(m);
    static_assert(std::is_same_v<decltype(ii.total()), std::int64_t>);
    EXPECT_EQ(ii.total(), 255LL * 4000 * 2000);
}

TEST(Normalize, AffineRescale) {
    ScalarMap m(3, 1);
    m(0, 0) = 2;
    m(1, 0) = 4;
    m(2, 0) = 6;
    const ScalarMap n = normalize01(m);
    EXPECT_EQ(n(0, 0), 0.0);
    EXPECT_EQ(n(1, 0), 0.5);
    EXPECT_EQ(n(2, 0), 1.0);
}

TEST(Normalize, ConstantMapIsZero) {
    const ScalarMap n = normalize01(ScalarMap(3, 1, 5.0));
    for(double v : n.values())
        EXPECT_EQ(v, 0.0);
}

TEST(Normalize, NegativeMinimum) {
    ScalarMap m(3, 1);
    m(0, 0) = -1;
    m(1, 0) = 0;
    m(2, 0) = 3;
    const ScalarMap n = normalize01(m);
    EXPECT_EQ(n(0, 0), 0.0);
    EXPECT_EQ(n(1, 0), 0.25);
    EXPECT_EQ(n(2, 0), 1.0);
}

TEST(Normalize, IdempotentAndBounded) {
    Gen gen(17);
    for(int k = 0; k < 50; ++k) {
        const ScalarMap n = normalize01(gen.real_map(gen.integer(1, 20), gen.integer(1, 20), -5.0, 5.0));
        for(double v : n.values()) {
            ASSERT_GE(v, 0.0);
            ASSERT_LE(v, 1.0);
        }
        const ScalarMap again = normalize01(n);
        for(std::size_t i = 0; i < n.size(); ++i)
            ASSERT_NEAR(again.values()[i], n.values()[i], 1e-15);
    }
}

} // namespace
} // namespace ahsal
