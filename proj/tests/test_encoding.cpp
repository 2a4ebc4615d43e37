#include "support/test_util.hpp"

#include "quiko/decode/decode.hpp"
#include "quiko/encoding/encoders.hpp"
#include "quiko/qsim/unitary_oracle.hpp"

#include <doctest.h>

#include <numbers>

using namespace quiko;
using namespace quiko::enc;
using qsim::Circuit;
using qsim::GateKind;
using qsim::StateVector;

namespace {

std::string timbre_key(int t) {
    return {char('0' + ((t >> 2) & 1)), char('0' + ((t >> 1) & 1)), char('0' + (t & 1))};
}

// X preparation of the spinal register onto basis subdivision s (q3 = MSB).
void prep_spinal(Circuit& c, int s) {
    if ((s >> 2) & 1)
        c.x(3);
    if ((s >> 1) & 1)
        c.x(4);
    if (s & 1)
        c.x(5);
}

EncodingMatrix random_matrix(std::uint64_t seed) {
    EncodingMatrix m = EncodingMatrix::zeros("rand", 3, 8);
    auto rng = make_engine(seed, 0xE);
    for (FeatureTriple& t : m.entries) {
        t.theta = std::numbers::pi * u01(rng);
        t.phi = 2.0 * std::numbers::pi * u01(rng);
        t.lam = 2.0 * std::numbers::pi * u01(rng);
    }
    return m;
}

} // namespace

TEST_CASE("database circuit: all-zero triples measure '000' with certainty") {
    const Circuit c = database_circuit(std::vector<FeatureTriple>(3));
    const auto probs = qsim::exact_probabilities(c);
    CHECK(probs.at("000") == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("database circuit: theta = pi on the low band flips q0 -> '001'") {
    std::vector<FeatureTriple> triples(3);
    triples[0].theta = std::numbers::pi;
    const auto probs = qsim::exact_probabilities(database_circuit(triples));
    CHECK(probs.at("001") == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("database circuit: three balanced qubits give the uniform eighth") {
    std::vector<FeatureTriple> triples(3);
    for (auto& t : triples)
        t.theta = std::numbers::pi / 2.0;
    const auto probs = qsim::exact_probabilities(database_circuit(triples));
    REQUIRE(probs.size() == 8);
    for (const auto& [key, p] : probs)
        CHECK(p == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("database circuit rejects wrong band counts") {
    CHECK_THROWS_AS(database_circuit(std::vector<FeatureTriple>(2)), std::invalid_argument);
}

TEST_CASE("all-zero static encoder: spinal collapses to 000, timbre stays uniform") {
    const EncodingMatrix zeros = EncodingMatrix::zeros("z", 3, 8);
    const QuikoCircuitBundle bundle = static_circuit(zeros);
    const auto probs = qsim::exact_probabilities(bundle.circuit);

    const auto spinal = decode::spinal_marginal(probs, 8);
    CHECK(spinal[0] == doctest::Approx(1.0).epsilon(1e-10));
    for (int s = 1; s < 8; ++s)
        CHECK(std::abs(spinal[s]) < 1e-10);

    const auto conditionals = decode::conditional_timbre(probs, 8);
    CHECK_FALSE(conditionals[0].low_confidence);
    for (int t = 0; t < 8; ++t)
        CHECK(conditionals[0].probs[t] == doctest::Approx(0.125).epsilon(1e-10));
    for (int s = 1; s < 8; ++s)
        CHECK(conditionals[s].low_confidence);
}

TEST_CASE("static encoder construction arithmetic") {
    const QuikoCircuitBundle bundle = static_circuit(random_matrix(1));
    int h = 0, mcu3 = 0, invqft = 0, measure = 0;
    for (const auto& op : bundle.circuit.ops) {
        if (op.kind == GateKind::H)
            ++h;
        else if (op.kind == GateKind::U3 && op.controls.size() == 3)
            ++mcu3;
        else if (op.kind == GateKind::InvQft)
            ++invqft;
        else if (op.kind == GateKind::Measure)
            ++measure;
    }
    CHECK(h == 6);
    CHECK(mcu3 == 3 * 8);
    CHECK(invqft == 1);
    CHECK(measure == 6);
    CHECK(bundle.circuit.ops.size() == 6 + 24 + 1 + 6);
}

TEST_CASE("static control polarity: forcing the spinal basis triggers exactly one triple") {
    const EncodingMatrix m = random_matrix(2);
    const QuikoCircuitBundle bundle = static_circuit(m);
    for (int s = 0; s < 8; ++s) {
        Circuit forced(6, 6);
        prep_spinal(forced, s);
        for (int i = bundle.n_pulse_ops; i < bundle.n_prefix_ops; ++i)
            forced.add(bundle.circuit.ops[i]);

        Circuit expected(6, 6);
        prep_spinal(expected, s);
        for (int b = 0; b < 3; ++b) {
            const FeatureTriple& t = m.at(b, s);
            expected.u3(t.theta, t.phi, t.lam, b);
        }

        const StateVector got = testutil::run_unitaries(forced);
        const StateVector want = testutil::run_unitaries(expected);
        CHECK(testutil::max_amp_diff(got, want) < 1e-10);

        // cross-check the forced circuit against the Kronecker oracle
        const auto u = qsim::brute_force_unitary(forced);
        std::vector<qsim::cplx> e0(u.dim, {0, 0});
        e0[0] = 1.0;
        const auto via_oracle = u.apply(e0);
        double mx = 0.0;
        for (std::size_t i = 0; i < u.dim; ++i)
            mx = std::max(mx, std::abs(via_oracle[i] - got.amplitude(i)));
        CHECK(mx < 1e-10);
    }
}

TEST_CASE("pkbse matrix: half (1,2,3,4) becomes (-1,-3,-6,+10)") {
    EncodingMatrix m = EncodingMatrix::zeros("toy", 1, 8);
    for (int s = 0; s < 4; ++s)
        m.at(0, s).theta = double(s + 1);
    const PkbseMatrix pm = pkbse_matrix(m);
    CHECK(pm.at(0, 0, 0, 0) == doctest::Approx(-1.0));
    CHECK(pm.at(0, 0, 0, 1) == doctest::Approx(-3.0));
    CHECK(pm.at(0, 0, 0, 2) == doctest::Approx(-6.0));
    CHECK(pm.at(0, 0, 0, 3) == doctest::Approx(10.0));
    for (int j = 0; j < 4; ++j)
        CHECK(pm.at(0, 0, 1, j) == 0.0); // untouched half stays zero
}

TEST_CASE("pkbse matrix: (a,0,0,0) becomes (-a,-a,-a,+a)") {
    EncodingMatrix m = EncodingMatrix::zeros("toy", 1, 8);
    m.at(0, 4).phi = 0.7; // first subdivision of half 1
    const PkbseMatrix pm = pkbse_matrix(m);
    CHECK(pm.at(0, 1, 1, 0) == doctest::Approx(-0.7));
    CHECK(pm.at(0, 1, 1, 1) == doctest::Approx(-0.7));
    CHECK(pm.at(0, 1, 1, 2) == doctest::Approx(-0.7));
    CHECK(pm.at(0, 1, 1, 3) == doctest::Approx(0.7));
}

TEST_CASE("pkbse matrix: zero features give zero entries") {
    const PkbseMatrix pm = pkbse_matrix(EncodingMatrix::zeros("z", 3, 8));
    for (double v : pm.values)
        CHECK(v == 0.0);
}

TEST_CASE("pkbse telescoping over random halves (hand-applied steps as oracle)") {
    auto rng = make_engine(77, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        EncodingMatrix m = EncodingMatrix::zeros("t", 1, 8);
        double vals[8];
        for (int s = 0; s < 8; ++s) {
            vals[s] = 2.0 * u01(rng) - 1.0;
            m.at(0, s).theta = vals[s];
        }
        const PkbseMatrix pm = pkbse_matrix(m);
        for (int h = 0; h < 2; ++h) {
            double cum = 0.0;
            for (int j = 0; j < 4; ++j) {
                cum += vals[h * 4 + j];
                const double expect = (j == 3) ? cum : -cum;
                CHECK(pm.at(0, 0, h, j) == doctest::Approx(expect).epsilon(1e-12));
            }
            // final entry is the positive half sum
            CHECK(pm.at(0, 0, h, 3) ==
                  doctest::Approx(vals[h * 4] + vals[h * 4 + 1] + vals[h * 4 + 2] +
                                  vals[h * 4 + 3]));
        }
    }
}

TEST_CASE("all-zero pkbse and static encoders have identical exact distributions") {
    const EncodingMatrix zeros = EncodingMatrix::zeros("z", 3, 8);
    const auto p_static = qsim::exact_probabilities(static_circuit(zeros).circuit);
    const auto p_pkbse = qsim::exact_probabilities(pkbse_circuit(pkbse_matrix(zeros)).circuit);
    for (int key = 0; key < 64; ++key) {
        std::string k(6, '0');
        for (int b = 0; b < 6; ++b)
            if ((key >> b) & 1)
                k[5 - b] = '1';
        const double a = p_static.count(k) ? p_static.at(k) : 0.0;
        const double b = p_pkbse.count(k) ? p_pkbse.at(k) : 0.0;
        CHECK(std::abs(a - b) < 1e-10);
    }
}

TEST_CASE("pkbse uses 3 x n_subdivisions singly-controlled gates and is cheaper than static") {
    const EncodingMatrix m = random_matrix(3);
    const QuikoCircuitBundle st = static_circuit(m);
    const QuikoCircuitBundle pk = pkbse_circuit(pkbse_matrix(m));

    int single_controlled = 0;
    for (const auto& op : pk.circuit.ops)
        if (op.kind == GateKind::U3 && op.controls.size() == 1)
            ++single_controlled;
    CHECK(single_controlled == 3 * 8);

    CHECK(qsim::decomposition_cost(pk.circuit) < qsim::decomposition_cost(st.circuit));
}

TEST_CASE("pkbse accumulated rotation: low-band half-1 triggers only on q3 = 1") {
    PkbseMatrix pm;
    pm.n_bands = 3;
    pm.n_subdivisions = 8;
    pm.values.assign(3 * 3 * 2 * 4, 0.0);
    for (int j = 0; j < 4; ++j)
        pm.at(0, 0, 1, j) = (j == 3) ? std::numbers::pi : 0.0;

    const QuikoCircuitBundle bundle = pkbse_circuit(pm);
    for (int s : {0, 4}) { // q3 = 0 vs q3 = 1
        Circuit forced(6, 6);
        prep_spinal(forced, s);
        for (int i = bundle.n_pulse_ops; i < bundle.n_prefix_ops; ++i)
            forced.add(bundle.circuit.ops[i]);
        const StateVector state = testutil::run_unitaries(forced);
        const double q0_one = state.prob_one(0);
        if (s == 4)
            CHECK(q0_one == doctest::Approx(1.0).epsilon(1e-10));
        else
            CHECK(q0_one == doctest::Approx(0.0).epsilon(1e-10));

        const auto u = qsim::brute_force_unitary(forced);
        std::vector<qsim::cplx> e0(u.dim, {0, 0});
        e0[0] = 1.0;
        const auto via_oracle = u.apply(e0);
        for (std::size_t i = 0; i < u.dim; ++i)
            CHECK(std::abs(via_oracle[i] - state.amplitude(i)) < 1e-10);
    }
}

TEST_CASE("band order within a subdivision is immaterial (targets commute)") {
    const QuikoCircuitBundle bundle = pkbse_circuit(pkbse_matrix(random_matrix(4)));
    Circuit reversed(6, 6);
    for (int i = 0; i < bundle.n_pulse_ops; ++i)
        reversed.add(bundle.circuit.ops[i]);
    for (int i = bundle.n_prefix_ops - 1; i >= bundle.n_pulse_ops; --i)
        reversed.add(bundle.circuit.ops[i]);
    // reversing the whole cascade also reverses the X brackets; the gate set
    // it brackets is identical, so the unitary must match when every gate in
    // between acts on distinct target qubits.
    Circuit forward(6, 6);
    for (int i = 0; i < bundle.n_prefix_ops; ++i)
        forward.add(bundle.circuit.ops[i]);

    const auto uf = qsim::brute_force_unitary(forward);
    const auto ur = qsim::brute_force_unitary(reversed);
    double mx = 0.0;
    for (std::size_t i = 0; i < uf.m.size(); ++i)
        mx = std::max(mx, std::abs(uf.m[i] - ur.m[i]));
    CHECK(mx < 1e-10);
}

TEST_CASE("phase kickback is visible on the spinal register") {
    EncodingMatrix probe = EncodingMatrix::zeros("probe", 3, 8);
    probe.at(0, 2).phi = std::numbers::pi / 2.0;

    const auto base =
        decode::spinal_marginal(qsim::exact_probabilities(static_circuit(
                                    EncodingMatrix::zeros("z", 3, 8)).circuit), 8);
    const auto kicked =
        decode::spinal_marginal(qsim::exact_probabilities(static_circuit(probe).circuit), 8);
    double tv = 0.0;
    for (int s = 0; s < 8; ++s)
        tv += std::abs(base[s] - kicked[s]);
    CHECK(tv / 2.0 > 1e-6);
}

TEST_CASE("equal superposition circuit") {
    const auto exact3 = qsim::exact_probabilities(equal_superposition_circuit(3));
    REQUIRE(exact3.size() == 8);
    for (const auto& [k, p] : exact3)
        CHECK(p == doctest::Approx(0.125).epsilon(1e-12));

    const auto exact1 = qsim::exact_probabilities(equal_superposition_circuit(1));
    CHECK(exact1.at("0") == doctest::Approx(0.5));
    CHECK(exact1.at("1") == doctest::Approx(0.5));

    const auto hist = qsim::run_shots(equal_superposition_circuit(3), 1024, {}, 99);
    const auto freqs = testutil::histogram_freqs(hist);
    CHECK(testutil::total_variation(exact3, freqs) < 0.08);
}

TEST_CASE("Ry(pi/2) internal pulse reproduces the equal-superposition statistics") {
    const EncodingMatrix m = random_matrix(5);
    EncoderOptions ry_pulse;
    ry_pulse.internal_pulse_alpha = std::numbers::pi / 2.0;
    const auto with_h = qsim::exact_probabilities(static_circuit(m).circuit);
    const auto with_ry = qsim::exact_probabilities(static_circuit(m, ry_pulse).circuit);
    for (const auto& [k, p] : with_h)
        CHECK(p == doctest::Approx(with_ry.count(k) ? with_ry.at(k) : 0.0).epsilon(1e-12));
}

TEST_CASE("pkbse circuit requires the 3-band / 8-subdivision layout") {
    EncodingMatrix m4 = EncodingMatrix::zeros("m4", 3, 4);
    CHECK_THROWS_AS(pkbse_circuit(pkbse_matrix(m4)), std::invalid_argument);
    EncodingMatrix b1 = EncodingMatrix::zeros("b1", 1, 8);
    CHECK_THROWS_AS(pkbse_circuit(pkbse_matrix(b1)), std::invalid_argument);
}

TEST_CASE("pkbse matrix JSON round trip") {
    const PkbseMatrix pm = pkbse_matrix(random_matrix(6));
    const PkbseMatrix back = PkbseMatrix::from_json_string(pm.to_json_string(2));
    REQUIRE(back.values.size() == pm.values.size());
    for (std::size_t i = 0; i < pm.values.size(); ++i)
        CHECK(back.values[i] == doctest::Approx(pm.values[i]).epsilon(1e-11));
}
