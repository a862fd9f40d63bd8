#ifndef BORNUQ_QSIM_HPP
#define BORNUQ_QSIM_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "bornuq/rng.hpp"

namespace bornuq::qsim {

/*
 * Dense statevector simulation of few-qubit circuits.
 *
 * Conventions (fixed once, used everywhere):
 *   - qubit 0 is the least-significant bit of the basis index, so basis
 *     state |b> has qubit q in state (b >> q) & 1;
 *   - RY(t) = exp(-i t Y / 2), RZ(t) = exp(-i t Z / 2).
 * With these, RY(t) applied to |0> gives <Z> = cos(t), which the tests
 * use as a closed-form oracle.
 */

inline constexpr int max_qubits = 12;

class StateVector {
public:
    // |0...0> on n qubits
    explicit StateVector(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    std::complex<double>& amp(std::size_t basis) { return amps_[basis]; }
    const std::complex<double>& amp(std::size_t basis) const { return amps_[basis]; }
    std::span<const std::complex<double>> amplitudes() const { return amps_; }

    double norm_sq() const;

private:
    int n_qubits_;
    std::vector<std::complex<double>> amps_;
};

struct Gate {
    enum class Kind { ry, rz, cnot };

    Kind kind;
    int target;
    int control; // -1 unless cnot
    double angle; // radians, rotations only

    static Gate ry(int target, double angle) { return {Kind::ry, target, -1, angle}; }
    static Gate rz(int target, double angle) { return {Kind::rz, target, -1, angle}; }
    static Gate cnot(int control, int target) { return {Kind::cnot, target, control, 0.0}; }
};

// In-place application of the gate's unitary. Throws std::out_of_range on
// bad qubit indices and std::invalid_argument when control == target.
void apply_gate(StateVector& state, const Gate& gate);

void apply_circuit(StateVector& state, std::span<const Gate> gates);

// <Z_qubit> = sum over basis states of (+-1) |amplitude|^2
double expectation_z(const StateVector& state, int qubit);

struct ShotRecord {
    long n_shots;
    long count_plus;
    long count_minus;
    int qubit;
};

// N independent Born-rule draws of the +-1 Pauli-Z outcome on one qubit,
// from the qubit's marginal P(+1) = (1 + <Z>)/2. Deterministic given the
// stream state.
ShotRecord sample_shots(const StateVector& state, int qubit, long n_shots, rng::Stream& rng);

// (1 - expectation^2) / N, the exact finite-shot variance of the mean of
// N +-1 outcomes
double born_variance(double expectation, long n_shots);

// (count_plus - count_minus) / n_shots
double shot_mean(const ShotRecord& record);

} // namespace bornuq::qsim

#endif
