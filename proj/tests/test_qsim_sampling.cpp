#include "support/test_util.hpp"

#include "quiko/qsim/qft.hpp"
#include "quiko/qsim/simulator.hpp"

#include <doctest.h>

#include <numbers>

using namespace quiko::qsim;

namespace {

Circuit uniform3() {
    Circuit c(3, 3);
    for (int q = 0; q < 3; ++q)
        c.h(q);
    for (int q = 0; q < 3; ++q)
        c.measure(q, q);
    return c;
}

} // namespace

TEST_CASE("exact probabilities of H x3 are uniform eighths") {
    const auto probs = exact_probabilities(uniform3());
    REQUIRE(probs.size() == 8);
    double total = 0.0;
    for (const auto& [key, p] : probs) {
        CHECK(p == doctest::Approx(0.125).epsilon(1e-12));
        total += p;
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("exact probabilities on an empty 1-qubit circuit") {
    Circuit c(1, 1);
    const auto probs = exact_probabilities(c);
    REQUIRE(probs.size() == 1);
    CHECK(probs.at("0") == doctest::Approx(1.0));
}

TEST_CASE("exact mode refuses noise") {
    NoiseConfig noise;
    noise.enabled = true;
    CHECK_THROWS_AS(exact_probabilities(uniform3(), noise), std::invalid_argument);
}

TEST_CASE("run_shots rejects zero shots and bad noise") {
    CHECK_THROWS_AS(run_shots(uniform3(), 0, NoiseConfig{}, 1), std::invalid_argument);
    NoiseConfig bad;
    bad.p1 = 1.5;
    CHECK_THROWS_AS(run_shots(uniform3(), 16, bad, 1), std::invalid_argument);
}

TEST_CASE("QPE circuit sampled noiselessly lands every shot on '001'") {
    const Circuit c = qpe_circuit(std::numbers::pi / 4.0, 3);
    const ShotHistogram h = run_shots(c, 1024, NoiseConfig{}, 7);
    REQUIRE(h.counts.size() == 1);
    CHECK(h.counts.at("001") == 1024);
}

TEST_CASE("H + measure concentrates near one half") {
    Circuit c(1, 1);
    c.h(0);
    c.measure(0, 0);
    const ShotHistogram h = run_shots(c, 4096, NoiseConfig{}, 99);
    REQUIRE(h.counts.count("0"));
    REQUIRE(h.counts.count("1"));
    const double p0 = double(h.counts.at("0")) / 4096.0;
    CHECK(std::abs(p0 - 0.5) < 0.05);
}

TEST_CASE("same seed, same histogram") {
    const Circuit c = uniform3();
    const ShotHistogram a = run_shots(c, 512, NoiseConfig{}, 1234);
    const ShotHistogram b = run_shots(c, 512, NoiseConfig{}, 1234);
    CHECK(a.counts == b.counts);
    const ShotHistogram other = run_shots(c, 512, NoiseConfig{}, 1235);
    CHECK(a.counts != other.counts); // different stream actually differs
}

TEST_CASE("sampled frequencies converge to exact probabilities") {
    const Circuit c = uniform3();
    const auto exact = exact_probabilities(c);
    const ShotHistogram h = run_shots(c, 8192, NoiseConfig{}, 5);
    CHECK(testutil::total_variation(exact, testutil::histogram_freqs(h)) < 0.03);
}

TEST_CASE("p_readout = 0.5 flattens every measured bit") {
    NoiseConfig noise;
    noise.enabled = true;
    noise.p1 = 0.0;
    noise.p2 = 0.0;
    noise.p_readout = 0.5;

    // deterministic circuit: q0 = 1, q1 = 0
    Circuit c(2, 2);
    c.x(0);
    c.measure(0, 0);
    c.measure(1, 1);
    const ShotHistogram h = run_shots(c, 8192, noise, 17);
    double m0 = 0, m1 = 0;
    for (const auto& [key, count] : h.counts) {
        if (key[1] == '1')
            m0 += double(count);
        if (key[0] == '1')
            m1 += double(count);
    }
    CHECK(std::abs(m0 / 8192.0 - 0.5) < 0.05);
    CHECK(std::abs(m1 / 8192.0 - 0.5) < 0.05);
}

TEST_CASE("mid-circuit measurement collapses the state per Born rule") {
    // H, measure, then X conditioned on nothing: re-measuring gives the
    // complement of the first record.
    Circuit c(1, 2);
    c.h(0);
    c.measure(0, 0);
    c.x(0);
    c.measure(0, 1);
    const ShotHistogram h = run_shots(c, 1024, NoiseConfig{}, 3);
    for (const auto& [key, count] : h.counts)
        CHECK(key[0] != key[1]); // clbit1 = NOT clbit0 always
    const auto probs = exact_probabilities(c); // branch-enumerated path
    CHECK(probs.at("10") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(probs.at("01") == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("reset reinitializes a qubit to |0>") {
    Circuit c(1, 1);
    c.x(0);
    c.reset(0);
    c.measure(0, 0);
    const auto probs = exact_probabilities(c);
    CHECK(probs.at("0") == doctest::Approx(1.0));
    const ShotHistogram h = run_shots(c, 256, NoiseConfig{}, 8);
    CHECK(h.counts.at("0") == 256);
}

TEST_CASE("reset of an entangled qubit keeps the partner marginal") {
    // Bell pair, reset one side: the other remains uniformly random.
    Circuit c(2, 1);
    c.h(0);
    c.cx(0, 1);
    c.reset(0);
    c.measure(1, 0);
    const auto probs = exact_probabilities(c);
    CHECK(probs.at("0") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(probs.at("1") == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("branch enumeration enforces its cap") {
    Circuit c(1, 4);
    for (int i = 0; i < 4; ++i) {
        c.h(0);
        c.measure(0, i);
    }
    CHECK_THROWS_AS(enumerate_branches(c, 8), std::runtime_error);
    CHECK_NOTHROW(enumerate_branches(c, 16));
}

TEST_CASE("histogram JSON round trip and validation") {
    const ShotHistogram h = run_shots(uniform3(), 64, NoiseConfig{}, 2);
    const ShotHistogram back = ShotHistogram::from_json_string(h.to_json_string(2));
    CHECK(back.counts == h.counts);
    CHECK(back.shots == h.shots);

    // tampered counts are rejected
    std::string text = h.to_json_string();
    const auto pos = text.find("\"shots\":64");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 10, "\"shots\":65");
    CHECK_THROWS_AS(ShotHistogram::from_json_string(text), std::invalid_argument);
}

TEST_CASE("depolarizing noise perturbs a deterministic circuit") {
    NoiseConfig noise;
    noise.enabled = true;
    noise.p1 = 0.05;
    noise.p2 = 0.05;
    noise.p_readout = 0.0;
    Circuit c(1, 1);
    c.x(0);
    c.measure(0, 0);
    const ShotHistogram h = run_shots(c, 4096, noise, 21);
    CHECK(h.counts.count("0"));              // some shots flipped
    CHECK(h.counts.at("1") > 3500);          // most survive
}
