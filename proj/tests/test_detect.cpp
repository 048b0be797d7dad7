#include "clearvid/detect.hpp"

#include "testutil.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace clearvid;
using namespace testutil;

TEST_CASE("pixel_is_hazy checks both S and V ranges") {
    const DetectConfig cfg;
    CHECK(pixel_is_hazy(HsvPixel{0, 100, 150}, cfg));
    CHECK_FALSE(pixel_is_hazy(HsvPixel{0, 200, 150}, cfg));
    CHECK_FALSE(pixel_is_hazy(HsvPixel{0, 100, 50}, cfg));

    SUBCASE("range endpoints are inclusive") {
        CHECK(pixel_is_hazy(HsvPixel{0, 130, 90}, cfg));
        CHECK(pixel_is_hazy(HsvPixel{0, 0, 240}, cfg));
        CHECK_FALSE(pixel_is_hazy(HsvPixel{0, 131, 150}, cfg));
        CHECK_FALSE(pixel_is_hazy(HsvPixel{0, 100, 241}, cfg));
    }
}

TEST_CASE("classify_frame separates haze, inverted haze and normal content") {
    const DetectConfig cfg;
    std::mt19937 rng(7);
    const Frame hazy = white_blend_frame(rng, 48, 48);

    // Confirm the construction with an independent per-pixel count before
    // trusting the classifier.
    std::size_t hazy_pixels = 0;
    std::size_t hazy_pixels_inverted = 0;
    for (const Rgb& p : hazy.samples) {
        if (pixel_is_hazy(rgb_to_hsv(p), cfg)) ++hazy_pixels;
        const Rgb q{std::uint8_t(255 - p.r), std::uint8_t(255 - p.g), std::uint8_t(255 - p.b)};
        if (pixel_is_hazy(rgb_to_hsv(q), cfg)) ++hazy_pixels_inverted;
    }
    const double fraction = double(hazy_pixels) / double(hazy.pixel_count());
    REQUIRE(fraction > 0.60);
    REQUIRE(double(hazy_pixels_inverted) / double(hazy.pixel_count()) <= 0.60);

    CHECK(classify_frame(hazy, cfg) == ImpairmentClass::Hazy);
    CHECK(classify_frame(invert_frame(hazy), cfg) == ImpairmentClass::InvertedHazy);
    CHECK(classify_frame(primaries_frame(48, 48), cfg) == ImpairmentClass::Normal);
}

TEST_CASE("classification is invariant under pixel permutation") {
    const DetectConfig cfg;
    std::mt19937 rng(8);
    Frame f = white_blend_frame(rng, 32, 32);
    const ImpairmentClass before = classify_frame(f, cfg);
    std::shuffle(f.samples.begin(), f.samples.end(), rng);
    CHECK(classify_frame(f, cfg) == before);
}

TEST_CASE("classify_frame honors a strict fraction threshold") {
    DetectConfig cfg;
    // 400-pixel frame with exactly 60% hazy pixels: fraction == threshold is not hazy.
    Frame f = make_frame(20, 20, Rgb{255, 0, 0});  // saturated, never hazy
    const Rgb hazy_px{200, 200, 200};              // s=0, v=200: inside both ranges
    for (int i = 0; i < 240; ++i) f.samples[std::size_t(i)] = hazy_px;
    REQUIRE(hazy_fraction(f, cfg) == doctest::Approx(0.60));
    CHECK(classify_frame(f, cfg) == ImpairmentClass::Normal);
    f.samples[240] = hazy_px;
    CHECK(classify_frame(f, cfg) == ImpairmentClass::Hazy);
}

TEST_CASE("scene_changed compares min-channel maps") {
    const DetectConfig cfg;
    const Frame gray = make_frame(16, 16, Rgb{20, 20, 20});

    CHECK_FALSE(scene_changed(gray, gray, cfg));
    CHECK(scene_changed(gray, invert_frame(gray), cfg));  // MAD 215 > 30

    Frame nudged = gray;
    nudged.at(3, 3).g = 21;
    CHECK_FALSE(scene_changed(gray, nudged, cfg));
}

TEST_CASE("scene_changed is symmetric") {
    const DetectConfig cfg;
    std::mt19937 rng(9);
    for (int i = 0; i < 10; ++i) {
        const Frame a = random_frame(rng, 16, 16);
        const Frame b = random_frame(rng, 16, 16);
        CHECK(scene_changed(a, b, cfg) == scene_changed(b, a, cfg));
    }
}

TEST_CASE("scene_changed rejects mismatched dimensions") {
    const DetectConfig cfg;
    CHECK_THROWS_AS(scene_changed(make_frame(16, 16), make_frame(32, 16), cfg),
                    std::invalid_argument);
}
