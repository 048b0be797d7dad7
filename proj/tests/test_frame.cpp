#include "clearvid/frame.hpp"

#include "testutil.hpp"

#include <doctest.h>

#include <random>

using namespace clearvid;
using namespace testutil;

TEST_CASE("invert_frame maps channel endpoints") {
    Frame black = make_frame(16, 16, Rgb{0, 0, 0});
    Frame white = invert_frame(black);
    for (const Rgb& p : white.samples) CHECK(p == Rgb{255, 255, 255});
    CHECK(invert_frame(white) == black);
}

TEST_CASE("inversion is an involution on random frames") {
    std::mt19937 rng(1);
    for (int i = 0; i < 20; ++i) {
        const Frame f = random_frame(rng, 16 + int(rng() % 33), 16 + int(rng() % 33), i);
        CHECK(invert_frame(invert_frame(f)) == f);
    }
}

TEST_CASE("inversion preserves dimensions and index") {
    const Frame f = make_frame(20, 17, Rgb{1, 2, 3}, 42);
    const Frame g = invert_frame(f);
    CHECK(g.width == 20);
    CHECK(g.height == 17);
    CHECK(g.index == 42);
}

TEST_CASE("min_channel_map picks the smallest channel") {
    Frame f = make_frame(16, 16, Rgb{10, 200, 30});
    CHECK(min_channel_map(f).values[0] == 10);

    Frame gray = make_frame(16, 16, Rgb{77, 77, 77});
    for (std::uint8_t v : min_channel_map(gray).values) CHECK(v == 77);

    Frame white = make_frame(16, 16, Rgb{255, 255, 255});
    CHECK(min_channel_map(white).values[5] == 255);
}

TEST_CASE("min of inversion equals 255 minus max") {
    std::mt19937 rng(2);
    const Frame f = random_frame(rng, 24, 24);
    const GrayMap inv_min = min_channel_map(invert_frame(f));
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        const Rgb& p = f.samples[i];
        CHECK(int(inv_min.values[i]) == 255 - int(std::max({p.r, p.g, p.b})));
    }
}

TEST_CASE("rgb_to_hsv on reference pixels") {
    const HsvPixel gray = rgb_to_hsv({128, 128, 128});
    CHECK(gray.s == 0);
    CHECK(gray.v == 128);

    const HsvPixel red = rgb_to_hsv({255, 0, 0});
    CHECK(red.s == 255);
    CHECK(red.v == 255);
    CHECK(red.h == doctest::Approx(0.0));

    const HsvPixel black = rgb_to_hsv({0, 0, 0});
    CHECK(black.s == 0);
    CHECK(black.v == 0);
}

TEST_CASE("rgb_to_hsv ranges") {
    std::mt19937 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const Rgb p{rand_byte(rng), rand_byte(rng), rand_byte(rng)};
        const HsvPixel hsv = rgb_to_hsv(p);
        CHECK(hsv.v >= std::min({p.r, p.g, p.b}));
        CHECK(hsv.h >= 0.0f);
        CHECK(hsv.h < 360.0f);
    }
}

TEST_CASE("to_byte rounds half away from zero and clamps") {
    CHECK(to_byte(0.5) == 1);
    CHECK(to_byte(1.5) == 2);
    CHECK(to_byte(254.5) == 255);
    CHECK(to_byte(-0.4) == 0);
    CHECK(to_byte(-27.0) == 0);
    CHECK(to_byte(300.0) == 255);
}

TEST_CASE("make_frame rejects sub-macroblock dimensions") {
    CHECK_THROWS_AS(make_frame(15, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_frame(16, 8), std::invalid_argument);
}
