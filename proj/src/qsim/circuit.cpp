#include "quiko/qsim/circuit.hpp"

#include <json.hpp>

#include <numbers>
#include <set>
#include <stdexcept>

namespace quiko::qsim {

using nlohmann::json;

std::string to_string(GateKind k) {
    switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::P: return "P";
    case GateKind::U3: return "U3";
    case GateKind::Swap: return "SWAP";
    case GateKind::Qft: return "QFT";
    case GateKind::InvQft: return "INVQFT";
    case GateKind::Measure: return "MEASURE";
    case GateKind::Reset: return "RESET";
    case GateKind::Barrier: return "BARRIER";
    }
    throw std::invalid_argument("unknown GateKind");
}

GateKind gate_kind_from_string(const std::string& s) {
    if (s == "H") return GateKind::H;
    if (s == "X") return GateKind::X;
    if (s == "P") return GateKind::P;
    if (s == "U3") return GateKind::U3;
    if (s == "SWAP") return GateKind::Swap;
    if (s == "QFT") return GateKind::Qft;
    if (s == "INVQFT") return GateKind::InvQft;
    if (s == "MEASURE") return GateKind::Measure;
    if (s == "RESET") return GateKind::Reset;
    if (s == "BARRIER") return GateKind::Barrier;
    throw std::invalid_argument("unknown gate kind: " + s);
}

namespace {

std::size_t expected_angles(GateKind k) {
    switch (k) {
    case GateKind::P: return 1;
    case GateKind::U3: return 3;
    default: return 0;
    }
}

void validate_op(const Circuit& c, const GateOp& op) {
    const auto bad = [&](const std::string& what) {
        throw std::invalid_argument("Circuit: " + what + " (op " + to_string(op.kind) + ")");
    };

    switch (op.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::P:
    case GateKind::U3:
    case GateKind::Measure:
    case GateKind::Reset:
        if (op.targets.size() != 1)
            bad("expected exactly one target");
        break;
    case GateKind::Swap:
        if (op.targets.size() != 2 || op.targets[0] == op.targets[1])
            bad("SWAP needs two distinct targets");
        break;
    case GateKind::Qft:
    case GateKind::InvQft:
        if (op.targets.empty())
            bad("QFT block needs a non-empty qubit range");
        break;
    case GateKind::Barrier:
        break;
    }

    if (op.angles.size() != expected_angles(op.kind))
        bad("wrong angle count");

    std::set<int> seen;
    for (int t : op.targets) {
        if (t < 0 || t >= c.n_qubits)
            bad("target qubit out of range");
        if (!seen.insert(t).second)
            bad("duplicate target qubit");
    }
    if (!op.controls.empty()) {
        if (!is_unitary_kind(op.kind) || op.kind == GateKind::Qft || op.kind == GateKind::InvQft)
            bad("controls not supported on this kind");
        for (const Control& ctl : op.controls) {
            if (ctl.qubit < 0 || ctl.qubit >= c.n_qubits)
                bad("control qubit out of range");
            if (!seen.insert(ctl.qubit).second)
                bad("control qubit collides with target or another control");
        }
    }

    if (op.kind == GateKind::Measure) {
        if (op.clbits.size() != 1 || op.clbits[0] < 0 || op.clbits[0] >= c.n_clbits)
            bad("MEASURE needs one classical bit in range");
    } else if (!op.clbits.empty()) {
        bad("classical bits only valid on MEASURE");
    }
}

} // namespace

Circuit& Circuit::add(GateOp op) {
    validate_op(*this, op);
    ops.push_back(std::move(op));
    return *this;
}

std::vector<GateOp> qft_block_ops(std::span<const int> qs, bool inverse) {
    const int m = static_cast<int>(qs.size());
    std::vector<GateOp> out;
    if (!inverse) {
        for (int j = m - 1; j >= 0; --j) {
            out.push_back({GateKind::H, {qs[j]}, {}, {}, {}});
            for (int k = j - 1; k >= 0; --k) {
                const double angle = std::numbers::pi / double(std::size_t(1) << (j - k));
                out.push_back({GateKind::P, {qs[j]}, {{qs[k], true}}, {}, {angle}});
            }
        }
        for (int i = 0; i < m / 2; ++i)
            out.push_back({GateKind::Swap, {qs[i], qs[m - 1 - i]}, {}, {}, {}});
    } else {
        for (int i = 0; i < m / 2; ++i)
            out.push_back({GateKind::Swap, {qs[i], qs[m - 1 - i]}, {}, {}, {}});
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k < j; ++k) {
                const double angle = -std::numbers::pi / double(std::size_t(1) << (j - k));
                out.push_back({GateKind::P, {qs[j]}, {{qs[k], true}}, {}, {angle}});
            }
            out.push_back({GateKind::H, {qs[j]}, {}, {}, {}});
        }
    }
    return out;
}

Circuit Circuit::expanded() const {
    Circuit out(n_qubits, n_clbits);
    for (const GateOp& op : ops) {
        if (op.kind == GateKind::Qft || op.kind == GateKind::InvQft) {
            for (GateOp& g : qft_block_ops(op.targets, op.kind == GateKind::InvQft))
                out.add(std::move(g));
        } else {
            out.add(op);
        }
    }
    return out;
}

bool Circuit::has_measurement() const {
    for (const GateOp& op : ops)
        if (op.kind == GateKind::Measure)
            return true;
    return false;
}

namespace {

// N(c): two-qubit gates needed for a c-controlled single-qubit gate.
std::uint64_t controlled_units(int c) {
    std::uint64_t n = 1;
    for (int i = 2; i <= c; ++i)
        n = 3 * n + 2;
    return n;
}

} // namespace

std::uint64_t decomposition_cost(const Circuit& circuit) {
    std::uint64_t total = 0;
    for (const GateOp& op : circuit.expanded().ops) {
        const int c = static_cast<int>(op.controls.size());
        switch (op.kind) {
        case GateKind::Measure:
        case GateKind::Reset:
        case GateKind::Barrier:
            break;
        case GateKind::Swap:
            total += 3 * 2 * controlled_units(c + 1);
            break;
        default:
            total += (c == 0) ? 1 : 2 * controlled_units(c);
            break;
        }
    }
    return total;
}

namespace {

json op_to_json(const GateOp& op) {
    json j;
    j["kind"] = to_string(op.kind);
    j["targets"] = op.targets;
    if (!op.controls.empty()) {
        json ctrls = json::array();
        for (const Control& c : op.controls)
            ctrls.push_back({{"qubit", c.qubit}, {"polarity", c.closed ? "closed" : "open"}});
        j["controls"] = std::move(ctrls);
    }
    if (!op.angles.empty())
        j["angles"] = op.angles;
    if (!op.clbits.empty())
        j["clbits"] = op.clbits;
    return j;
}

GateOp op_from_json(const json& j) {
    GateOp op;
    op.kind = gate_kind_from_string(j.at("kind").get<std::string>());
    op.targets = j.at("targets").get<std::vector<int>>();
    if (j.contains("controls")) {
        for (const json& c : j.at("controls")) {
            const std::string pol = c.at("polarity").get<std::string>();
            if (pol != "closed" && pol != "open")
                throw std::invalid_argument("circuit json: bad control polarity: " + pol);
            op.controls.push_back({c.at("qubit").get<int>(), pol == "closed"});
        }
    }
    if (j.contains("angles"))
        op.angles = j.at("angles").get<std::vector<double>>();
    if (j.contains("clbits"))
        op.clbits = j.at("clbits").get<std::vector<int>>();
    return op;
}

} // namespace

std::string Circuit::to_json_string(int indent) const {
    json j;
    j["n_qubits"] = n_qubits;
    j["n_clbits"] = n_clbits;
    json ops_json = json::array();
    for (const GateOp& op : ops)
        ops_json.push_back(op_to_json(op));
    j["ops"] = std::move(ops_json);
    return j.dump(indent);
}

Circuit Circuit::from_json_string(const std::string& text) {
    const json j = json::parse(text);
    Circuit c(j.at("n_qubits").get<int>(), j.at("n_clbits").get<int>());
    for (const json& oj : j.at("ops"))
        c.add(op_from_json(oj));
    return c;
}

} // namespace quiko::qsim
