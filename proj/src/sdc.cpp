// sdc.cpp

#include "ctsim/sdc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace ctsim {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState plus_state() {
    return PureState::unit({kInvSqrt2, kInvSqrt2}, 1);
}

PureState minus_state() {
    return PureState::unit({kInvSqrt2, -kInvSqrt2}, 1);
}

const GateMatrix& pauli(std::size_t index) {
    switch (index) {
        case 0: return gates::identity();
        case 1: return gates::pauli_x();
        case 2: return gates::pauli_y();
        default: return gates::pauli_z();
    }
}

bool even_parity(int outcome) {
    return (std::popcount(static_cast<unsigned>(outcome)) & 1) == 0;
}

void check_policy(const VerificationPolicy& policy) {
    if (!(policy.sacrifice_fraction > 0.0) || !(policy.sacrifice_fraction < 1.0))
        throw SimError("sacrifice_fraction must lie in (0,1)");
    if (policy.min_sacrifice == 0)
        throw SimError("min_sacrifice must be positive");
    if (policy.z_test_weight < 0.0 || policy.z_test_weight > 1.0)
        throw SimError("z_test_weight must lie in [0,1]");
    if (policy.failure_threshold < 0.0 || policy.failure_threshold >= 1.0)
        throw SimError("failure_threshold must lie in [0,1)");
}

} // namespace

const char* to_label(AdversaryKind kind) {
    switch (kind) {
        case AdversaryKind::None: return "none";
        case AdversaryKind::InterceptResendZ: return "ir-z";
        case AdversaryKind::InterceptResendX: return "ir-x";
        case AdversaryKind::Depolarize: return "depol";
    }
    return "?";
}

const char* to_label(AttackTarget target) {
    return target == AttackTarget::QubitA ? "A" : "B";
}

PureState encode_bit(int bit) {
    if (bit != 0 && bit != 1) throw SimError("message bit must be 0 or 1");
    return bit == 1 ? plus_state() : minus_state();
}

int decode_bit(const PureState& bob, RandomSource& rng) {
    if (bob.num_qubits() != 1)
        throw DimMismatch("decode_bit expects a single qubit");
    const auto basis = MeasurementBasis::product({0}, plus_state(), minus_state());
    return measure(bob, basis, rng).outcome == 0 ? 1 : 0;
}

std::vector<PureState> prepare_channel(std::size_t n, const AdversaryModel& adversary,
                                       RandomSource& rng) {
    if (n < 1) throw InvalidCount("channel batch size must be at least 1");
    if (adversary.kind == AdversaryKind::Depolarize &&
        (adversary.p < 0.0 || adversary.p > 1.0))
        throw SimError("depolarizing probability must lie in [0,1]");

    const std::size_t slot = (adversary.target == AttackTarget::QubitA) ? 0 : 1;
    std::vector<PureState> triplets;
    triplets.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        PureState triplet = channel_state();
        switch (adversary.kind) {
            case AdversaryKind::None:
                break;
            case AdversaryKind::InterceptResendZ:
                triplet = measure(triplet, MeasurementBasis::computational({slot}), rng)
                              .collapsed;
                break;
            case AdversaryKind::InterceptResendX:
                triplet = measure(triplet,
                                  MeasurementBasis::product({slot}, plus_state(),
                                                            minus_state()),
                                  rng)
                              .collapsed;
                break;
            case AdversaryKind::Depolarize:
                if (rng.uniform() < adversary.p)
                    triplet = apply_gate(triplet, pauli(rng.uniform_index(4)), {slot});
                break;
        }
        triplets.push_back(std::move(triplet));
    }
    return triplets;
}

bool z_parity_check(const PureState& triplet, RandomSource& rng) {
    if (triplet.num_qubits() != 3)
        throw DimMismatch("channel checks expect a 3-qubit triplet");
    const int outcome =
        measure(triplet, MeasurementBasis::computational({0, 1, 2}), rng).outcome;
    return even_parity(outcome);
}

bool x_agreement_check(const PureState& triplet, RandomSource& rng) {
    if (triplet.num_qubits() != 3)
        throw DimMismatch("channel checks expect a 3-qubit triplet");
    const auto basis = MeasurementBasis::product({0, 1, 2}, plus_state(), minus_state());
    const int outcome = measure(triplet, basis, rng).outcome;
    return outcome == 0 || outcome == 0b111;
}

VerifyOutcome verify_channel(const std::vector<PureState>& triplets,
                             const VerificationPolicy& policy, RandomSource& rng) {
    check_policy(policy);
    const std::size_t batch = triplets.size();
    if (batch < policy.min_sacrifice)
        throw BatchTooSmall("batch of " + std::to_string(batch) +
                            " cannot fund the minimum sacrifice of " +
                            std::to_string(policy.min_sacrifice));

    // min_sacrifice is a floor: small batches sacrifice more than the
    // nominal fraction. Session sizing adds matching headroom.
    const auto n_sacrifice = std::max(
        policy.min_sacrifice,
        static_cast<std::size_t>(policy.sacrifice_fraction * static_cast<double>(batch)));

    // Partial Fisher-Yates: the first n_sacrifice entries become a
    // uniformly random subset, consumed in selection order.
    std::vector<std::size_t> order(batch);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < n_sacrifice; ++i)
        std::swap(order[i], order[i + rng.uniform_index(batch - i)]);

    VerificationReport report;
    report.tested = n_sacrifice;
    for (std::size_t i = 0; i < n_sacrifice; ++i) {
        const PureState& triplet = triplets[order[i]];
        if (rng.uniform() < policy.z_test_weight) {
            if (!z_parity_check(triplet, rng)) ++report.z_failures;
        } else {
            if (!x_agreement_check(triplet, rng)) ++report.x_failures;
        }
    }
    report.failure_rate = static_cast<double>(report.z_failures + report.x_failures) /
                          static_cast<double>(report.tested);
    report.passed = report.failure_rate <= policy.failure_threshold;

    std::vector<bool> sacrificed(batch, false);
    for (std::size_t i = 0; i < n_sacrifice; ++i) sacrificed[order[i]] = true;
    std::vector<PureState> survivors;
    survivors.reserve(batch - n_sacrifice);
    for (std::size_t i = 0; i < batch; ++i)
        if (!sacrificed[i]) survivors.push_back(triplets[i]);
    return VerifyOutcome{report, std::move(survivors)};
}

SessionTranscript run_session(const MessageBits& message, bool permission,
                              const VerificationPolicy& policy,
                              const AdversaryModel& adversary, RandomSource& rng,
                              BroadcastMode mode) {
    if (message.empty()) throw InvalidCount("message must be nonempty");
    for (int bit : message)
        if (bit != 0 && bit != 1) throw SimError("message bits must be 0 or 1");
    check_policy(policy);

    SessionTranscript transcript;
    transcript.seed = rng.seed();
    transcript.permission = permission;

    // Size the batch so verification leaves one triplet per message bit.
    const auto needed = static_cast<std::size_t>(
        std::ceil(static_cast<double>(message.size()) /
                  (1.0 - policy.sacrifice_fraction))) + policy.min_sacrifice;

    const auto triplets = prepare_channel(needed, adversary, rng);
    auto verified = verify_channel(triplets, policy, rng);
    transcript.verification = verified.report;
    if (!verified.report.passed) {
        transcript.aborted_reason = "verification failed";
        return transcript;
    }
    if (!permission) {
        transcript.aborted_reason = "permission denied";
        return transcript;
    }

    MessageBits decoded;
    decoded.reserve(message.size());
    for (std::size_t i = 0; i < message.size(); ++i) {
        const int bit = message[i];
        PerBitEntry entry{};
        entry.encoded_bit = bit;
        std::optional<PureState> bob;
        if (mode == BroadcastMode::Normal) {
            auto result = teleport_through(encode_bit(bit), verified.survivors[i], rng);
            entry.charlie = result.charlie;
            entry.bell = result.bell;
            entry.correction = result.correction;
            bob = std::move(result.bob_state);
        } else {
            // Withheld broadcast: Bob never learns Charlie's bit, so no
            // correction is applied to his qubit.
            const PureState joint = tensor(encode_bit(bit), verified.survivors[i]);
            auto charlie = charlie_measure(joint, rng);
            auto alice = alice_bell_measure(charlie.mab, rng);
            entry.charlie = charlie.bit;
            entry.bell = alice.outcome;
            entry.correction = correction_for(charlie.bit, alice.outcome);
            bob = std::move(alice.bob);
        }
        entry.decoded_bit = decode_bit(*bob, rng);
        decoded.push_back(entry.decoded_bit);
        transcript.entries.push_back(entry);
    }
    transcript.decoded = std::move(decoded);
    return transcript;
}

} // namespace ctsim
