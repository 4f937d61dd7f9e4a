// teleport.hpp
// Controlled teleportation of one qubit through a shared three-particle
// entangled channel. Charlie gates the protocol by measuring his particle
// C in the computational basis and broadcasting the bit; Alice then makes
// a Bell measurement on (M, A) and broadcasts the outcome; Bob applies the
// correction selected by both broadcasts and recovers the input exactly.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ctsim/random.hpp"
#include "ctsim/statevec.hpp"

namespace ctsim {

// Binds the particle labels to tensor slots of the 4-qubit joint state.
struct QubitRegisterMap {
    std::size_t m_slot = 0;
    std::size_t a_slot = 1;
    std::size_t b_slot = 2;
    std::size_t c_slot = 3;
};

inline constexpr QubitRegisterMap kCanonicalRegisters{};

enum class CharlieBit { Zero = 0, One = 1 };

// Fixed enumeration order; also the Bell-measurement sampling order.
enum class BellOutcome { PhiPlus = 0, PsiPlus = 1, PhiMinus = 2, PsiMinus = 3 };

// Bob's recovery operator. ZX is the matrix product Z·X (X first, then Z).
enum class CorrectionOp { I = 0, X = 1, Z = 2, ZX = 3 };

const char* to_label(CharlieBit bit);
const char* to_label(BellOutcome outcome);
const char* to_label(CorrectionOp op);

// One classical broadcast: who measured, in which basis, what came out.
struct MeasurementRecord {
    std::string party;
    std::string basis;
    int outcome = 0;
    double probability = 0.0;
};

struct TeleportResult {
    CharlieBit charlie;
    BellOutcome bell;
    CorrectionOp correction;
    PureState bob_state;
    std::vector<MeasurementRecord> records; // Charlie's, then Alice's
};

// The shared channel ½(|000⟩+|110⟩+|011⟩+|101⟩) on slots A,B,C.
PureState channel_state();

// {Φ⁺, Ψ⁺, Φ⁻, Ψ⁻} on slots (M, A) of the 3-qubit M,A,B state.
MeasurementBasis bell_basis();

// input ⊗ channel under the canonical register map (M,A,B,C).
PureState joint_state(const PureState& input);

struct CharlieMeasurement {
    CharlieBit bit;
    PureState mab; // 3-qubit state on M,A,B; the C slot is removed
    MeasurementRecord record;
};

// Charlie measures slot C in {|0⟩, |1⟩} and broadcasts the bit.
CharlieMeasurement charlie_measure(const PureState& joint, RandomSource& rng);

struct BellMeasurement {
    BellOutcome outcome;
    PureState bob; // 1-qubit residual on B; M and A slots are removed
    MeasurementRecord record;
};

// Alice measures (M, A) in the Bell basis and broadcasts the outcome.
BellMeasurement alice_bell_measure(const PureState& mab, RandomSource& rng);

// The eight-row recovery table keyed by both broadcasts.
CorrectionOp correction_for(CharlieBit charlie, BellOutcome bell);

PureState apply_correction(const PureState& bob, CorrectionOp op);

// Full pipeline over the ideal channel. Post-correction fidelity with the
// input is 1 (to 1e-12) on every outcome branch.
TeleportResult teleport(const PureState& input, RandomSource& rng);

// Same pipeline through a caller-supplied 3-qubit triplet; used by the
// direct-communication layer, whose verified channel copies may in
// principle be anything an adversary left behind.
TeleportResult teleport_through(const PureState& input, const PureState& triplet,
                                RandomSource& rng);

} // namespace ctsim
