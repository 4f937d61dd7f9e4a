// sdc.hpp
// Controlled secure direct communication on top of the teleportation
// pipeline: bits ride as |+⟩/|−⟩ states through verified channel triplets.
// A batch of triplets is distributed (possibly through an adversary), a
// random subset is sacrificed to parity / all-equal checks, and only after
// the checks pass and Charlie grants permission does Alice teleport the
// encoded bits, which Bob reads out in the {|+⟩, |−⟩} basis.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctsim/random.hpp"
#include "ctsim/statevec.hpp"
#include "ctsim/teleport.hpp"

namespace ctsim {

using MessageBits = std::vector<int>; // values 0/1, nonempty for a session

enum class AdversaryKind { None = 0, InterceptResendZ, InterceptResendX, Depolarize };

// Which in-transit particle of each triplet is attacked.
enum class AttackTarget { QubitA = 0, QubitB = 1 };

struct AdversaryModel {
    AdversaryKind kind = AdversaryKind::None;
    double p = 0.0; // Depolarize only
    AttackTarget target = AttackTarget::QubitB;
};

const char* to_label(AdversaryKind kind);
const char* to_label(AttackTarget target);

struct VerificationPolicy {
    double sacrifice_fraction = 0.25;  // in (0,1)
    std::size_t min_sacrifice = 16;
    double z_test_weight = 0.5;        // P(test a sacrificed triplet in Z vs ±)
    double failure_threshold = 0.0;    // a perfect channel never fails
};

struct VerificationReport {
    std::size_t tested = 0;
    std::size_t z_failures = 0;
    std::size_t x_failures = 0;
    double failure_rate = 0.0;
    bool passed = false;
};

struct PerBitEntry {
    int encoded_bit;
    CharlieBit charlie;
    BellOutcome bell;
    CorrectionOp correction;
    int decoded_bit;
};

struct SessionTranscript {
    std::uint64_t seed = 0;
    bool permission = false;
    std::optional<VerificationReport> verification;
    std::vector<PerBitEntry> entries;
    std::optional<MessageBits> decoded;
    std::optional<std::string> aborted_reason;
};

// Out-of-protocol instrumentation: WithholdCharlie drops Charlie's
// broadcast so Bob cannot correct, evidencing that the uncorrected qubit
// carries no message. Never used in a normal session.
enum class BroadcastMode { Normal = 0, WithholdCharlie };

// bit 1 → |+⟩, bit 0 → |−⟩.
PureState encode_bit(int bit);

// Born measurement in {|+⟩, |−⟩}; |+⟩ reads as 1, |−⟩ as 0.
int decode_bit(const PureState& bob, RandomSource& rng);

// n channel triplets, each passed through the adversary while in transit.
// Intercept-resend measures the target qubit in the named basis and keeps
// the collapsed state; Depolarize applies one of {I,X,Y,Z} uniformly at
// random with probability p.
std::vector<PureState> prepare_channel(std::size_t n, const AdversaryModel& adversary,
                                       RandomSource& rng);

// Single sacrificed-triplet checks (true = pass). A clean channel passes
// both with certainty: it is supported on even-parity kets and equals
// (|+++⟩+|−−−⟩)/√2 in the Hadamard basis.
bool z_parity_check(const PureState& triplet, RandomSource& rng);
bool x_agreement_check(const PureState& triplet, RandomSource& rng);

struct VerifyOutcome {
    VerificationReport report;
    std::vector<PureState> survivors; // untouched, in batch order
};

// Sacrifices a uniformly random sacrifice_fraction subset (at least
// min_sacrifice). Each sacrificed triplet gets one of two checks: all
// three qubits measured in the computational basis must have even bit
// parity, or all three measured in {|+⟩,|−⟩} must agree. Throws
// BatchTooSmall when the batch cannot fund min_sacrifice.
VerifyOutcome verify_channel(const std::vector<PureState>& triplets,
                             const VerificationPolicy& policy, RandomSource& rng);

// One full session: channel preparation sized for the message plus
// sacrifice headroom, verification, Charlie's permission gate, then one
// teleported triplet per message bit. Aborts are encoded in the
// transcript, never thrown.
SessionTranscript run_session(const MessageBits& message, bool permission,
                              const VerificationPolicy& policy,
                              const AdversaryModel& adversary, RandomSource& rng,
                              BroadcastMode mode = BroadcastMode::Normal);

} // namespace ctsim
