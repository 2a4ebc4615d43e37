#include "support/test_util.hpp"

#include "quiko/audio/features.hpp"

#include <doctest.h>

#include <numbers>

using namespace quiko::audio;

TEST_CASE("theta: zero signal gives zero") {
    CHECK(theta_from_percussive(testutil::make_silence(8192.0, 8192)) == 0.0);
}

TEST_CASE("theta: a single peak saturates to pi") {
    AudioBuffer buf = testutil::make_silence(8192.0, 8192);
    testutil::add_click(buf, 4000, 0.9);
    CHECK(theta_from_percussive(buf) == doctest::Approx(std::numbers::pi).epsilon(1e-9));
}

TEST_CASE("theta: equal peaks give raw = N and normalize to pi") {
    AudioBuffer buf = testutil::make_silence(8192.0, 32768);
    // identical clicks, aligned to the hop so every frame pattern matches
    for (std::size_t at : {4096u, 12288u, 20480u, 28672u})
        testutil::add_click(buf, at, 0.8);
    CHECK(theta_from_percussive(buf) == doctest::Approx(std::numbers::pi).epsilon(1e-9));
}

TEST_CASE("phi: sine at half Nyquist maps to pi") {
    const double sr = 8192.0;
    const AudioBuffer sine = testutil::make_sine(2048.0, sr, 8192, 0.5);
    const double bin_tol = 2.0 * std::numbers::pi * (sr / 8192.0) / (sr / 2.0);
    CHECK(std::abs(phi_from_harmonic(sine, sr) - std::numbers::pi) <= bin_tol);
}

TEST_CASE("phi: zero signal gives zero") {
    CHECK(phi_from_harmonic(testutil::make_silence(8192.0, 4096), 8192.0) == 0.0);
}

TEST_CASE("phi: equal peaks at f and 3f average to 2f") {
    const double sr = 8192.0;
    AudioBuffer two = testutil::make_sine(400.0, sr, 8192, 0.4);
    const AudioBuffer second = testutil::make_sine(1200.0, sr, 8192, 0.4);
    for (std::size_t i = 0; i < two.samples.size(); ++i)
        two.samples[i] += second.samples[i];
    const double expected = 2.0 * std::numbers::pi * 800.0 / (sr / 2.0);
    const double bin_tol = 2.0 * std::numbers::pi * (sr / 8192.0) / (sr / 2.0);
    CHECK(std::abs(phi_from_harmonic(two, sr) - expected) <= bin_tol);
}

TEST_CASE("lambda: centroid of a pure sine sits on the sine") {
    const double sr = 8192.0;
    const AudioBuffer sine = testutil::make_sine(440.0, sr, 8192, 0.5);
    const double expected = 2.0 * std::numbers::pi * 440.0 / (sr / 2.0);
    const double bin_tol = 2.0 * std::numbers::pi * (sr / 8192.0) / (sr / 2.0);
    CHECK(std::abs(lambda_from_harmonic(sine, sr) - expected) <= bin_tol);
}

TEST_CASE("lambda: zero signal gives zero, white noise centers near pi") {
    CHECK(lambda_from_harmonic(testutil::make_silence(8192.0, 4096), 8192.0) == 0.0);
    const AudioBuffer noise = testutil::make_noise(8192.0, 32768, 11);
    const double lam = lambda_from_harmonic(noise, 8192.0);
    CHECK(std::abs(lam - std::numbers::pi) < 0.1 * std::numbers::pi);
}

TEST_CASE("angles stay in range on random buffers and extraction is deterministic") {
    auto rng = quiko::make_engine(5150, 0);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = 4096 + std::size_t(quiko::u01(rng) * 8192);
        const AudioBuffer buf = testutil::make_noise(8192.0, n, 1000 + trial);
        const double th = theta_from_percussive(buf);
        const double ph = phi_from_harmonic(buf, buf.sample_rate);
        const double lm = lambda_from_harmonic(buf, buf.sample_rate);
        CHECK(th >= 0.0);
        CHECK(th <= std::numbers::pi);
        CHECK(ph >= 0.0);
        CHECK(ph < 2.0 * std::numbers::pi);
        CHECK(lm >= 0.0);
        CHECK(lm < 2.0 * std::numbers::pi);
        CHECK(theta_from_percussive(buf) == th); // bit-identical rerun
        CHECK(phi_from_harmonic(buf, buf.sample_rate) == ph);
        CHECK(lambda_from_harmonic(buf, buf.sample_rate) == lm);
    }
}

TEST_CASE("extract_matrix: silence gives all-zero triples") {
    const AudioBuffer z = testutil::make_silence(8192.0, 8 * 2048);
    AudioPipelineConfig cfg;
    const EncodingMatrix m = extract_matrix(z, cfg, "silence");
    CHECK(m.n_bands == 3);
    CHECK(m.n_subdivisions == 8);
    for (const FeatureTriple& t : m.entries) {
        CHECK(t.theta == 0.0);
        CHECK(t.phi == 0.0);
        CHECK(t.lam == 0.0);
    }
}

TEST_CASE("extract_matrix: click train hits exactly subdivisions 1 and 5 (single band)") {
    const double sr = 8192.0;
    const std::size_t seg = 4096; // two STFT windows per segment
    AudioBuffer buf = testutil::make_silence(sr, 8 * seg);
    testutil::add_click(buf, 1 * seg + 100, 0.9);  // near segment start
    testutil::add_click(buf, 6 * seg - 300, 0.9);  // near segment 5 end
    AudioPipelineConfig cfg;
    cfg.n_bands = 1; // passthrough band, keeps silent segments exactly zero
    const EncodingMatrix m = extract_matrix(buf, cfg, "clicks");
    for (int s = 0; s < 8; ++s) {
        if (s == 1 || s == 5)
            CHECK(m.at(0, s).theta > 0.0);
        else
            CHECK(m.at(0, s).theta == 0.0);
    }
}

TEST_CASE("extract_matrix: full shape contract on arbitrary input") {
    AudioBuffer buf = testutil::make_noise(8192.0, 8 * 4096, 99, 0.3);
    const AudioBuffer tone = testutil::make_sine(500.0, 8192.0, buf.samples.size(), 0.3);
    for (std::size_t i = 0; i < buf.samples.size(); ++i)
        buf.samples[i] += tone.samples[i];
    AudioPipelineConfig cfg;
    const EncodingMatrix m = extract_matrix(buf, cfg, "mix");
    REQUIRE(m.entries.size() == 24);
    for (const FeatureTriple& t : m.entries) {
        CHECK(t.theta >= 0.0);
        CHECK(t.theta <= std::numbers::pi);
        CHECK(t.phi >= 0.0);
        CHECK(t.phi < 2.0 * std::numbers::pi);
        CHECK(t.lam >= 0.0);
        CHECK(t.lam < 2.0 * std::numbers::pi);
    }
}

TEST_CASE("extract_matrix rejects input shorter than the subdivision grid") {
    const AudioBuffer buf = testutil::make_silence(8192.0, 8192);
    AudioPipelineConfig cfg; // 8 subdivisions x 2048 window needs 16384
    CHECK_THROWS_WITH_AS(extract_matrix(buf, cfg, "short"),
                         doctest::Contains("longer input or fewer subdivisions"),
                         std::invalid_argument);
}

TEST_CASE("encoding matrix JSON round trip keeps 12 significant digits") {
    EncodingMatrix m = EncodingMatrix::zeros("rt", 3, 8);
    auto rng = quiko::make_engine(7, 0);
    for (FeatureTriple& t : m.entries) {
        t.theta = std::numbers::pi * quiko::u01(rng);
        t.phi = 2.0 * std::numbers::pi * quiko::u01(rng);
        t.lam = 2.0 * std::numbers::pi * quiko::u01(rng);
    }
    const EncodingMatrix back = EncodingMatrix::from_json_string(m.to_json_string(2));
    CHECK(back.source_id == "rt");
    for (int b = 0; b < 3; ++b)
        for (int s = 0; s < 8; ++s) {
            CHECK(back.at(b, s).theta == doctest::Approx(m.at(b, s).theta).epsilon(1e-11));
            CHECK(back.at(b, s).theta == round_sig12(m.at(b, s).theta));
        }
}
