// teleport.cpp

#include "ctsim/teleport.hpp"

#include <cmath>

namespace ctsim {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState bell_pair(int which) {
    // 0: Φ⁺  1: Ψ⁺  2: Φ⁻  3: Ψ⁻
    std::vector<Amplitude> amps(4, Amplitude{0.0, 0.0});
    const double sign = (which >= 2) ? -1.0 : 1.0;
    if (which % 2 == 0) { // Φ: |00⟩ ± |11⟩
        amps[0b00] = kInvSqrt2;
        amps[0b11] = sign * kInvSqrt2;
    } else { // Ψ: |01⟩ ± |10⟩
        amps[0b01] = kInvSqrt2;
        amps[0b10] = sign * kInvSqrt2;
    }
    return PureState::unit(std::move(amps), 2);
}

} // namespace

const char* to_label(CharlieBit bit) {
    return bit == CharlieBit::Zero ? "0" : "1";
}

const char* to_label(BellOutcome outcome) {
    switch (outcome) {
        case BellOutcome::PhiPlus: return "phi+";
        case BellOutcome::PsiPlus: return "psi+";
        case BellOutcome::PhiMinus: return "phi-";
        case BellOutcome::PsiMinus: return "psi-";
    }
    return "?";
}

const char* to_label(CorrectionOp op) {
    switch (op) {
        case CorrectionOp::I: return "I";
        case CorrectionOp::X: return "X";
        case CorrectionOp::Z: return "Z";
        case CorrectionOp::ZX: return "ZX";
    }
    return "?";
}

PureState channel_state() {
    // ½(|000⟩+|110⟩+|011⟩+|101⟩) over slots A,B,C: the even-parity kets.
    std::vector<Amplitude> amps(8, Amplitude{0.0, 0.0});
    amps[0b000] = 0.5;
    amps[0b110] = 0.5;
    amps[0b011] = 0.5;
    amps[0b101] = 0.5;
    return PureState::unit(std::move(amps), 3);
}

MeasurementBasis bell_basis() {
    return MeasurementBasis({kCanonicalRegisters.m_slot, kCanonicalRegisters.a_slot},
                            {bell_pair(0), bell_pair(1), bell_pair(2), bell_pair(3)});
}

PureState joint_state(const PureState& input) {
    if (input.num_qubits() != 1)
        throw DimMismatch("teleport input must be a single qubit");
    return tensor(input, channel_state());
}

CharlieMeasurement charlie_measure(const PureState& joint, RandomSource& rng) {
    if (joint.num_qubits() != 4)
        throw DimMismatch("charlie_measure expects the 4-qubit joint state");
    const auto basis = MeasurementBasis::computational({kCanonicalRegisters.c_slot});
    auto result = measure(joint, basis, rng);
    return CharlieMeasurement{
        result.outcome == 0 ? CharlieBit::Zero : CharlieBit::One,
        std::move(*result.residual),
        MeasurementRecord{"charlie", "computational", result.outcome, result.probability}};
}

BellMeasurement alice_bell_measure(const PureState& mab, RandomSource& rng) {
    if (mab.num_qubits() != 3)
        throw DimMismatch("alice_bell_measure expects the 3-qubit M,A,B state");
    auto result = measure(mab, bell_basis(), rng);
    return BellMeasurement{
        static_cast<BellOutcome>(result.outcome),
        std::move(*result.residual),
        MeasurementRecord{"alice", "bell", result.outcome, result.probability}};
}

CorrectionOp correction_for(CharlieBit charlie, BellOutcome bell) {
    // Outcome order Φ⁺, Ψ⁺, Φ⁻, Ψ⁻ maps to I, X, Z, ZX when Charlie saw 0
    // and to X, I, ZX, Z when he saw 1.
    static constexpr CorrectionOp table[2][4] = {
        {CorrectionOp::I, CorrectionOp::X, CorrectionOp::Z, CorrectionOp::ZX},
        {CorrectionOp::X, CorrectionOp::I, CorrectionOp::ZX, CorrectionOp::Z},
    };
    return table[static_cast<int>(charlie)][static_cast<int>(bell)];
}

PureState apply_correction(const PureState& bob, CorrectionOp op) {
    switch (op) {
        case CorrectionOp::I:
            return bob;
        case CorrectionOp::X:
            return apply_gate(bob, gates::pauli_x(), {0});
        case CorrectionOp::Z:
            return apply_gate(bob, gates::pauli_z(), {0});
        case CorrectionOp::ZX:
            return apply_gate(apply_gate(bob, gates::pauli_x(), {0}),
                              gates::pauli_z(), {0});
    }
    throw SimError("unknown correction");
}

TeleportResult teleport_through(const PureState& input, const PureState& triplet,
                                RandomSource& rng) {
    if (input.num_qubits() != 1)
        throw DimMismatch("teleport input must be a single qubit");
    if (triplet.num_qubits() != 3)
        throw DimMismatch("teleport channel must be a 3-qubit triplet");

    const PureState joint = tensor(input, triplet);
    auto charlie = charlie_measure(joint, rng);
    auto alice = alice_bell_measure(charlie.mab, rng);
    const CorrectionOp op = correction_for(charlie.bit, alice.outcome);
    PureState bob = apply_correction(alice.bob, op);
    return TeleportResult{charlie.bit, alice.outcome, op, std::move(bob),
                          {std::move(charlie.record), std::move(alice.record)}};
}

TeleportResult teleport(const PureState& input, RandomSource& rng) {
    return teleport_through(input, channel_state(), rng);
}

} // namespace ctsim
