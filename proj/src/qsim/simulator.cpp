#include "quiko/qsim/simulator.hpp"

#include "quiko/common/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quiko::qsim {

using nlohmann::json;

void NoiseConfig::validate() const {
    for (double p : {p1, p2, p_readout})
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("NoiseConfig: probabilities must lie in [0,1]");
}

namespace {

struct ControlMask {
    std::size_t mask = 0;
    std::size_t val = 0;
};

ControlMask control_mask(const GateOp& op) {
    ControlMask cm;
    for (const Control& c : op.controls) {
        const std::size_t bit = std::size_t(1) << c.qubit;
        cm.mask |= bit;
        if (c.closed)
            cm.val |= bit;
    }
    return cm;
}

void apply_primitive(StateVector& state, const GateOp& op) {
    const auto [mask, val] = control_mask(op);
    switch (op.kind) {
    case GateKind::H:
        state.apply_1q(h_matrix().data(), op.targets[0], mask, val);
        break;
    case GateKind::X:
        state.apply_1q(x_matrix().data(), op.targets[0], mask, val);
        break;
    case GateKind::P:
        state.apply_phase(op.angles[0], op.targets[0], mask, val);
        break;
    case GateKind::U3:
        state.apply_1q(u3_matrix(op.angles[0], op.angles[1], op.angles[2]).data(), op.targets[0],
                       mask, val);
        break;
    case GateKind::Swap:
        state.apply_swap(op.targets[0], op.targets[1], mask, val);
        break;
    case GateKind::Barrier:
        break;
    default:
        throw std::invalid_argument("apply_unitary_op: non-unitary op " + to_string(op.kind));
    }
}

} // namespace

void apply_unitary_op(StateVector& state, const GateOp& op) {
    if (op.kind == GateKind::Qft || op.kind == GateKind::InvQft) {
        for (const GateOp& g : qft_block_ops(op.targets, op.kind == GateKind::InvQft))
            apply_primitive(state, g);
        return;
    }
    apply_primitive(state, op);
}

void apply_circuit_unitaries(StateVector& state, const Circuit& circuit) {
    for (const GateOp& op : circuit.ops)
        apply_unitary_op(state, op);
}

std::string render_key(const std::vector<std::uint8_t>& clbits) {
    std::string key(clbits.size(), '0');
    for (std::size_t i = 0; i < clbits.size(); ++i)
        key[clbits.size() - 1 - i] = clbits[i] ? '1' : '0';
    return key;
}

namespace {

const std::array<cplx, 4>& pauli(int which) {
    static const std::array<cplx, 4> mats[3] = {x_matrix(), y_matrix(), z_matrix()};
    return mats[which];
}

void depolarize(StateVector& state, const GateOp& op, const NoiseConfig& noise,
                std::mt19937_64& rng) {
    const bool multi = !op.controls.empty() || op.kind == GateKind::Swap;
    const double p = multi ? noise.p2 : noise.p1;
    if (p <= 0.0)
        return;
    // Deterministic qubit order: targets, then controls.
    const auto kick = [&](int q) {
        const double u = u01(rng);
        if (u < p)
            state.apply_1q(pauli(static_cast<int>(u / (p / 3.0))).data(), q);
    };
    for (int t : op.targets)
        kick(t);
    for (const Control& c : op.controls)
        kick(c.qubit);
}

int sample_and_collapse(StateVector& state, int qubit, std::mt19937_64& rng) {
    double p1 = state.prob_one(qubit);
    p1 = std::clamp(p1, 0.0, 1.0);
    const int outcome = (u01(rng) < p1) ? 1 : 0;
    state.project(qubit, outcome, outcome ? p1 : 1.0 - p1);
    return outcome;
}

} // namespace

ShotHistogram run_shots(const Circuit& circuit, std::uint64_t shots, const NoiseConfig& noise,
                        std::uint64_t seed) {
    if (shots == 0)
        throw std::invalid_argument("run_shots: shots must be >= 1");
    noise.validate();

    const Circuit prog = circuit.expanded();
    ShotHistogram hist;
    hist.n_clbits = prog.n_clbits;
    hist.shots = shots;

    StateVector state(prog.n_qubits);
    std::vector<std::uint8_t> clbits;
    for (std::uint64_t s = 0; s < shots; ++s) {
        auto rng = make_engine(seed, streams::kShots, s);
        state.reset_zero_state();
        clbits.assign(prog.n_clbits, 0);
        for (const GateOp& op : prog.ops) {
            switch (op.kind) {
            case GateKind::Measure: {
                int outcome = sample_and_collapse(state, op.targets[0], rng);
                if (noise.enabled && noise.p_readout > 0.0 && u01(rng) < noise.p_readout)
                    outcome ^= 1;
                clbits[op.clbits[0]] = static_cast<std::uint8_t>(outcome);
                break;
            }
            case GateKind::Reset: {
                const int outcome = sample_and_collapse(state, op.targets[0], rng);
                if (outcome == 1)
                    state.apply_1q(x_matrix().data(), op.targets[0]);
                break;
            }
            case GateKind::Barrier:
                break;
            default:
                apply_primitive(state, op);
                if (noise.enabled)
                    depolarize(state, op, noise, rng);
                break;
            }
        }
        ++hist.counts[render_key(clbits)];
    }
    return hist;
}

std::vector<Branch> enumerate_branches(const Circuit& circuit, std::size_t max_branches) {
    const Circuit prog = circuit.expanded();
    std::vector<Branch> branches;
    branches.push_back(
        {StateVector(prog.n_qubits), 1.0, std::vector<std::uint8_t>(prog.n_clbits, 0)});

    constexpr double kPruneBelow = 1e-18;
    for (const GateOp& op : prog.ops) {
        if (op.kind == GateKind::Measure || op.kind == GateKind::Reset) {
            std::vector<Branch> next;
            next.reserve(branches.size() * 2);
            for (Branch& b : branches) {
                const int q = op.targets[0];
                const double p1 = std::clamp(b.state.prob_one(q), 0.0, 1.0);
                for (int outcome : {0, 1}) {
                    const double p = outcome ? p1 : 1.0 - p1;
                    if (p < kPruneBelow)
                        continue;
                    Branch nb{b.state, b.weight * p, b.clbits};
                    if (op.kind == GateKind::Measure) {
                        nb.state.project(q, outcome, p);
                        nb.clbits[op.clbits[0]] = static_cast<std::uint8_t>(outcome);
                    } else {
                        nb.state.reset_qubit(q, outcome, p);
                    }
                    next.push_back(std::move(nb));
                }
            }
            branches = std::move(next);
            if (branches.size() > max_branches)
                throw std::runtime_error("enumerate_branches: branch count exceeds limit");
        } else {
            for (Branch& b : branches)
                apply_unitary_op(b.state, op);
        }
    }
    return branches;
}

namespace {

// Fast path applies when the circuit is purely unitary followed by terminal
// measurements (no reset anywhere, nothing but measures after the first
// measure). Later measures may overwrite earlier classical bits, handled by
// processing them in order.
bool is_terminal_measurement(const Circuit& prog) {
    bool seen_measure = false;
    for (const GateOp& op : prog.ops) {
        if (op.kind == GateKind::Reset)
            return false;
        if (op.kind == GateKind::Measure) {
            seen_measure = true;
        } else if (op.kind == GateKind::Barrier) {
            continue;
        } else if (seen_measure) {
            return false;
        }
    }
    return true;
}

} // namespace

std::map<std::string, double> exact_probabilities(const Circuit& circuit,
                                                  const NoiseConfig& noise,
                                                  std::size_t max_branches) {
    if (noise.enabled)
        throw std::invalid_argument("exact_probabilities: exact mode is noiseless only");

    const Circuit prog = circuit.expanded();
    std::map<std::string, double> probs;

    if (is_terminal_measurement(prog)) {
        StateVector state(prog.n_qubits);
        std::vector<std::pair<int, int>> measures; // (qubit, clbit) in program order
        for (const GateOp& op : prog.ops) {
            if (op.kind == GateKind::Measure)
                measures.emplace_back(op.targets[0], op.clbits[0]);
            else if (op.kind != GateKind::Barrier)
                apply_unitary_op(state, op);
        }
        std::vector<std::uint8_t> clbits(prog.n_clbits, 0);
        for (std::size_t i = 0; i < state.dim(); ++i) {
            const cplx a = state.amplitude(i);
            const double p = a.real() * a.real() + a.imag() * a.imag();
            if (p == 0.0)
                continue;
            std::fill(clbits.begin(), clbits.end(), 0);
            for (const auto& [q, c] : measures)
                clbits[c] = static_cast<std::uint8_t>((i >> q) & 1);
            probs[render_key(clbits)] += p;
        }
        return probs;
    }

    for (const Branch& b : enumerate_branches(circuit, max_branches))
        probs[render_key(b.clbits)] += b.weight;
    return probs;
}

std::string ShotHistogram::to_json_string(int indent) const {
    json j;
    j["key_order"] = kKeyOrder;
    j["n_clbits"] = n_clbits;
    j["shots"] = shots;
    j["counts"] = counts;
    return j.dump(indent);
}

ShotHistogram ShotHistogram::from_json_string(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("key_order").get<std::string>() != kKeyOrder)
        throw std::invalid_argument("histogram json: unsupported key order");
    ShotHistogram h;
    h.n_clbits = j.at("n_clbits").get<int>();
    h.shots = j.at("shots").get<std::uint64_t>();
    h.counts = j.at("counts").get<std::map<std::string, std::uint64_t>>();
    std::uint64_t total = 0;
    for (const auto& [key, count] : h.counts) {
        if (static_cast<int>(key.size()) != h.n_clbits)
            throw std::invalid_argument("histogram json: key width mismatch");
        total += count;
    }
    if (total != h.shots)
        throw std::invalid_argument("histogram json: counts do not sum to shots");
    return h;
}

} // namespace quiko::qsim
