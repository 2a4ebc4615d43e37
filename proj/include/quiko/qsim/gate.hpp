#pragma once

#include "quiko/qsim/kernels.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace quiko::qsim {

enum class GateKind {
    H,
    X,
    P,       // diag(1, e^{i lambda})
    U3,      // general single-qubit rotation, angles (theta, phi, lambda)
    Swap,
    Qft,     // QFT block; targets listed LSB-first
    InvQft,
    Measure,
    Reset,
    Barrier,
};

// closed = trigger on |1>, open = trigger on |0>.
struct Control {
    int qubit = 0;
    bool closed = true;

    friend bool operator==(const Control&, const Control&) = default;
};

struct GateOp {
    GateKind kind = GateKind::Barrier;
    std::vector<int> targets;
    std::vector<Control> controls;
    std::vector<int> clbits; // Measure only
    std::vector<double> angles;

    friend bool operator==(const GateOp&, const GateOp&) = default;
};

inline bool is_unitary_kind(GateKind k) {
    return k != GateKind::Measure && k != GateKind::Reset && k != GateKind::Barrier;
}

std::string to_string(GateKind k);
GateKind gate_kind_from_string(const std::string& s);

// U(theta, phi, lambda) =
//   [ cos(t/2)              -e^{i lambda} sin(t/2)      ]
//   [ e^{i phi} sin(t/2)     e^{i(phi+lambda)} cos(t/2) ]
inline std::array<cplx, 4> u3_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {cplx(c, 0.0), -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda)};
}

inline std::array<cplx, 4> h_matrix() {
    const double r = 1.0 / std::sqrt(2.0);
    return {cplx(r, 0), cplx(r, 0), cplx(r, 0), cplx(-r, 0)};
}

inline std::array<cplx, 4> x_matrix() {
    return {cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)};
}

inline std::array<cplx, 4> y_matrix() {
    return {cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0)};
}

inline std::array<cplx, 4> z_matrix() {
    return {cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(-1, 0)};
}

inline std::array<cplx, 4> p_matrix(double lambda) {
    return {cplx(1, 0), cplx(0, 0), cplx(0, 0), std::polar(1.0, lambda)};
}

inline std::array<cplx, 4> ry_matrix(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {cplx(c, 0), cplx(-s, 0), cplx(s, 0), cplx(c, 0)};
}

} // namespace quiko::qsim
