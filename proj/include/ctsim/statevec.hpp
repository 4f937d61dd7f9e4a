// statevec.hpp
// Exact dense pure-state linear algebra for few-qubit simulation:
// construction, tensor products, gate application, projective measurement
// with Born-rule sampling, fidelity, and reduced density matrices.
//
// Conventions. Tensor slot 0 is the leftmost ket label; a basis index is
// read as a big-endian bitstring over slots, so |011⟩ is index 3 and the
// slot-q bit of index i is (i >> (n-1-q)) & 1. States are immutable after
// construction; every operation returns a new value. Algebraic identities
// hold to 1e-12, constructor admission is 1e-9 followed by exact
// renormalization.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ctsim/errors.hpp"
#include "ctsim/random.hpp"

namespace ctsim {

using Amplitude = std::complex<double>;

constexpr double kAlgebraTol = 1e-12;
constexpr double kAdmissionTol = 1e-9;
constexpr double kDegenerateProb = 1e-14;

// Normalized amplitude vector over num_qubits labeled qubits.
class PureState {
public:
    // Admits any finite vector of length 2^num_qubits with norm within
    // kAdmissionTol of 1 (larger deviations are healed too, as long as the
    // vector is not numerically zero), then renormalizes exactly.
    PureState(std::vector<Amplitude> amps, std::size_t num_qubits);

    // Constructs from a vector that is already unit-norm to within
    // kAlgebraTol; no renormalization. Internal operations use this so the
    // norm-preservation invariant stays observable rather than being
    // silently repaired.
    static PureState unit(std::vector<Amplitude> amps, std::size_t num_qubits);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const Amplitude& operator[](std::size_t i) const { return amps_[i]; }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }

private:
    PureState() = default;
    std::size_t num_qubits_ = 0;
    std::vector<Amplitude> amps_;
};

// Unitary matrix on one or two qubits (dim 2 or 4), row-major.
class GateMatrix {
public:
    GateMatrix(std::size_t dim, std::vector<Amplitude> entries);

    std::size_t dim() const { return dim_; }
    const Amplitude& at(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }

private:
    std::size_t dim_;
    std::vector<Amplitude> entries_;
};

namespace gates {
const GateMatrix& identity();
const GateMatrix& pauli_x();
const GateMatrix& pauli_y();
const GateMatrix& pauli_z();
const GateMatrix& hadamard();
} // namespace gates

// Hermitian, unit-trace, positive semidefinite matrix. Diagnostic only:
// protocol states are always pure, density matrices verify marginals.
class DensityMatrix {
public:
    DensityMatrix(std::size_t dim, std::vector<Amplitude> entries);

    static DensityMatrix from_pure(const PureState& state);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const { return dim_; }
    const Amplitude& at(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }

private:
    std::size_t dim_;
    std::vector<Amplitude> entries_;
};

// Weighted mixture Σ w_i |ψ_i⟩⟨ψ_i|; weights must be nonnegative and sum
// to 1 within kAlgebraTol, states must share a qubit count.
DensityMatrix mixed_state(const std::vector<std::pair<double, PureState>>& ensemble);

// Orthonormal measurement basis over an ordered subset of qubits. The
// first listed target is the most significant bit of a basis state's
// index; outcome order is the listed state order (the sampling order).
class MeasurementBasis {
public:
    MeasurementBasis(std::vector<std::size_t> target_qubits,
                     std::vector<PureState> basis_states);

    // Computational basis {|0..0⟩, ..., |1..1⟩} on the given targets.
    static MeasurementBasis computational(std::vector<std::size_t> target_qubits);

    // Product basis: outcome bit j selects between (zero_state, one_state)
    // on target j. E.g. the all-qubits |±⟩ basis used for X-type checks.
    static MeasurementBasis product(std::vector<std::size_t> target_qubits,
                                    const PureState& zero_state,
                                    const PureState& one_state);

    const std::vector<std::size_t>& targets() const { return targets_; }
    std::size_t num_targets() const { return targets_.size(); }
    std::size_t num_outcomes() const { return states_.size(); }
    const PureState& state(std::size_t outcome) const { return states_[outcome]; }

private:
    std::vector<std::size_t> targets_;
    std::vector<PureState> states_;
};

struct MeasureResult {
    int outcome;
    double probability;
    // Renormalized projection on the full register.
    PureState collapsed;
    // State of the unmeasured qubits (ascending slot order, measured slots
    // removed); absent when the basis covers every qubit.
    std::optional<PureState> residual;
};

// --- Operations ------------------------------------------------------

// Builds a state from raw amplitudes (renormalizing admission path).
PureState make_state(std::vector<Amplitude> amps, std::size_t num_qubits);

// Computational basis ket |index⟩ over num_qubits qubits.
PureState basis_ket(std::size_t num_qubits, std::size_t index);

// Single-qubit state drawn uniformly from the Bloch sphere (uniform cos θ
// plus uniform phase; two rng draws).
PureState random_bloch_state(RandomSource& rng);

// left ⊗ right; left's qubits occupy the lower slot indices.
PureState tensor(const PureState& left, const PureState& right);

// Applies gate on the ordered targets (identity elsewhere). The first
// target is the most significant bit of the gate's sub-index.
PureState apply_gate(const PureState& state, const GateMatrix& gate,
                     const std::vector<std::size_t>& targets);

// ⟨s1|s2⟩.
Amplitude inner_product(const PureState& s1, const PureState& s2);

// |⟨s1|s2⟩|²; invariant under a global phase of either argument.
double fidelity(const PureState& s1, const PureState& s2);

double norm(const PureState& state);

// Exact Born probabilities of every basis outcome, in basis order.
std::vector<double> outcome_probabilities(const PureState& state,
                                          const MeasurementBasis& basis);

// Projective measurement. The outcome is drawn by the Born rule using the
// provided uniform sample against cumulative probabilities in basis order;
// the collapsed state is the renormalized projection. Throws
// DegenerateBranch if the selected outcome has probability below
// kDegenerateProb (possible only for forced or inconsistent selections).
MeasureResult measure(const PureState& state, const MeasurementBasis& basis,
                      double uniform_sample);

// Same, drawing from rng; honors a queued forced outcome (which is then
// collapsed onto with its true Born probability).
MeasureResult measure(const PureState& state, const MeasurementBasis& basis,
                      RandomSource& rng);

// Partial trace onto the kept qubits (given as a set; output qubit order
// is ascending slot order).
DensityMatrix reduced_density(const PureState& state,
                              const std::vector<std::size_t>& keep);

// ½ Σ |eigenvalues of (d1 - d2)|.
double trace_distance(const DensityMatrix& d1, const DensityMatrix& d2);

} // namespace ctsim
