#include "bornuq/qsim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bornuq::qsim {

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > max_qubits)
        throw std::invalid_argument("StateVector: n_qubits must be in [1, " +
                                    std::to_string(max_qubits) + "]");
    amps_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps_)
        s += std::norm(a);
    return s;
}

namespace {

void check_qubit(const StateVector& state, int qubit, const char* what) {
    if (qubit < 0 || qubit >= state.n_qubits())
        throw std::out_of_range(std::string(what) + ": qubit index " + std::to_string(qubit) +
                                " out of range for " + std::to_string(state.n_qubits()) +
                                " qubits");
}

// real 2x2 rotation on the (pair, pair+step) amplitude pairs of `target`
inline void apply_ry(StateVector& state, int target, double angle) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    const std::size_t step = std::size_t{1} << target;
    const std::size_t n = state.dim();
    for (std::size_t base = 0; base < n; base += 2 * step) {
        for (std::size_t i = base; i < base + step; ++i) {
            const std::complex<double> a0 = state.amp(i);
            const std::complex<double> a1 = state.amp(i + step);
            state.amp(i) = c * a0 - s * a1;
            state.amp(i + step) = s * a0 + c * a1;
        }
    }
}

inline void apply_rz(StateVector& state, int target, double angle) {
    const std::complex<double> p0 = std::polar(1.0, -0.5 * angle);
    const std::complex<double> p1 = std::polar(1.0, +0.5 * angle);
    const std::size_t step = std::size_t{1} << target;
    const std::size_t n = state.dim();
    for (std::size_t base = 0; base < n; base += 2 * step) {
        for (std::size_t i = base; i < base + step; ++i) {
            state.amp(i) *= p0;
            state.amp(i + step) *= p1;
        }
    }
}

inline void apply_cnot(StateVector& state, int control, int target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    const std::size_t n = state.dim();
    for (std::size_t i = 0; i < n; ++i) {
        if ((i & cbit) && !(i & tbit))
            std::swap(state.amp(i), state.amp(i | tbit));
    }
}

} // namespace

void apply_gate(StateVector& state, const Gate& gate) {
    check_qubit(state, gate.target, "apply_gate");
    switch (gate.kind) {
    case Gate::Kind::ry:
        apply_ry(state, gate.target, gate.angle);
        break;
    case Gate::Kind::rz:
        apply_rz(state, gate.target, gate.angle);
        break;
    case Gate::Kind::cnot:
        check_qubit(state, gate.control, "apply_gate");
        if (gate.control == gate.target)
            throw std::invalid_argument("apply_gate: cnot control equals target");
        apply_cnot(state, gate.control, gate.target);
        break;
    }
}

void apply_circuit(StateVector& state, std::span<const Gate> gates) {
    for (const Gate& g : gates)
        apply_gate(state, g);
}

double expectation_z(const StateVector& state, int qubit) {
    check_qubit(state, qubit, "expectation_z");
    const std::size_t bit = std::size_t{1} << qubit;
    const std::size_t n = state.dim();
    double plus = 0.0, minus = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = std::norm(state.amp(i));
        if (i & bit)
            minus += p;
        else
            plus += p;
    }
    return plus - minus;
}

ShotRecord sample_shots(const StateVector& state, int qubit, long n_shots, rng::Stream& rng) {
    check_qubit(state, qubit, "sample_shots");
    if (n_shots < 1)
        throw std::invalid_argument("sample_shots: n_shots must be >= 1");

    const double z = expectation_z(state, qubit);
    double p_plus = 0.5 * (1.0 + z);
    if (p_plus < 0.0) p_plus = 0.0;
    if (p_plus > 1.0) p_plus = 1.0;

    long plus = 0;
    for (long s = 0; s < n_shots; ++s)
        if (rng.uniform() < p_plus)
            ++plus;
    return ShotRecord{n_shots, plus, n_shots - plus, qubit};
}

double born_variance(double expectation, long n_shots) {
    if (!(std::abs(expectation) <= 1.0))
        throw std::invalid_argument("born_variance: |expectation| must be <= 1");
    if (n_shots < 1)
        throw std::invalid_argument("born_variance: n_shots must be >= 1");
    return (1.0 - expectation * expectation) / static_cast<double>(n_shots);
}

double shot_mean(const ShotRecord& record) {
    return static_cast<double>(record.count_plus - record.count_minus) /
           static_cast<double>(record.n_shots);
}

} // namespace bornuq::qsim
