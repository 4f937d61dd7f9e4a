// ctsim_main.cpp
// Command-line harness: teleportation trials, direct-communication
// sessions, channel-verification experiments, and the correction table.
// All randomness flows from --seed (or SIM_SEED), so identical configs
// produce byte-identical output files.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctsim/sdc.hpp"
#include "ctsim/statevec.hpp"
#include "ctsim/teleport.hpp"
#include "ctsim/transcript.hpp"

namespace {

using namespace ctsim;
using nlohmann::ordered_json;

constexpr double kFidelityFloor = 1.0 - 1e-9;

enum class Subcommand { Teleport, Sdc, Verify, Table };

struct RunConfig {
    Subcommand subcommand = Subcommand::Table;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::string message;
    bool permission = true;
    AdversaryModel adversary;
    VerificationPolicy policy;
    std::string out_path;
};

struct AggregateStats {
    std::vector<std::size_t> outcome_counts = std::vector<std::size_t>(8, 0);
    double mean_fidelity = 0.0;
    double min_fidelity = 1.0;
};

ordered_json adversary_json(const AdversaryModel& adversary) {
    ordered_json j{{"kind", to_label(adversary.kind)},
                   {"target", to_label(adversary.target)}};
    if (adversary.kind == AdversaryKind::Depolarize) j["p"] = adversary.p;
    return j;
}

ordered_json policy_json(const VerificationPolicy& policy) {
    return ordered_json{{"sacrifice_fraction", policy.sacrifice_fraction},
                        {"min_sacrifice", policy.min_sacrifice},
                        {"z_test_weight", policy.z_test_weight},
                        {"failure_threshold", policy.failure_threshold}};
}

void write_output(const std::string& path, const ordered_json& doc) {
    if (!path.empty()) write_text_file(path, dump_json(doc));
}

// Wald 95% interval, clamped to [0,1].
ordered_json ci95(std::size_t failures, std::size_t tested) {
    if (tested == 0) return ordered_json::array({0.0, 0.0});
    const double rate = static_cast<double>(failures) / static_cast<double>(tested);
    const double half = 1.96 * std::sqrt(rate * (1.0 - rate) / static_cast<double>(tested));
    return ordered_json::array(
        {std::max(0.0, rate - half), std::min(1.0, rate + half)});
}

int cmd_table() {
    std::printf("charlie  bell  correction\n");
    for (int c = 0; c < 2; ++c)
        for (int b = 0; b < 4; ++b) {
            const auto charlie = static_cast<CharlieBit>(c);
            const auto bell = static_cast<BellOutcome>(b);
            std::printf("%-7s  %-4s  %s\n", to_label(charlie), to_label(bell),
                        to_label(correction_for(charlie, bell)));
        }
    return 0;
}

int cmd_teleport(const RunConfig& config) {
    AggregateStats stats;
    ordered_json records = ordered_json::array();
    double fidelity_sum = 0.0;

    for (std::size_t trial = 0; trial < config.trials; ++trial) {
        RandomSource rng(derive_seed(config.seed, trial));
        const PureState input = random_bloch_state(rng);
        const TeleportResult result = teleport(input, rng);
        const double fid = fidelity(result.bob_state, input);

        const std::size_t pair =
            static_cast<std::size_t>(result.charlie) * 4 +
            static_cast<std::size_t>(result.bell);
        ++stats.outcome_counts[pair];
        fidelity_sum += fid;
        stats.min_fidelity = std::min(stats.min_fidelity, fid);
        records.push_back(ordered_json{{"trial", trial},
                                       {"charlie", static_cast<int>(result.charlie)},
                                       {"bell", to_label(result.bell)},
                                       {"correction", to_label(result.correction)},
                                       {"fidelity", fid}});
    }
    stats.mean_fidelity = fidelity_sum / static_cast<double>(config.trials);

    ordered_json doc{
        {"schema_version", kTranscriptSchemaVersion},
        {"command", "teleport"},
        {"config", ordered_json{{"trials", config.trials}, {"seed", config.seed}}},
        {"records", std::move(records)},
        {"summary", ordered_json{{"outcome_counts", stats.outcome_counts},
                                 {"mean_fidelity", stats.mean_fidelity},
                                 {"min_fidelity", stats.min_fidelity}}}};
    write_output(config.out_path, doc);

    std::printf("trials          %zu\n", config.trials);
    std::printf("mean fidelity   %.17g\n", stats.mean_fidelity);
    std::printf("min fidelity    %.17g\n", stats.min_fidelity);
    std::printf("outcome counts ");
    for (const auto count : stats.outcome_counts) std::printf(" %zu", count);
    std::printf("\n");

    return stats.min_fidelity < kFidelityFloor ? 1 : 0;
}

int cmd_sdc(const RunConfig& config) {
    const MessageBits message = parse_bits(config.message);
    RandomSource rng(config.seed);
    const SessionTranscript transcript =
        run_session(message, config.permission, config.policy, config.adversary, rng);

    double accuracy = 0.0;
    if (transcript.decoded) {
        std::size_t match = 0;
        for (std::size_t i = 0; i < message.size(); ++i)
            if ((*transcript.decoded)[i] == message[i]) ++match;
        accuracy = static_cast<double>(match) / static_cast<double>(message.size());
    }

    ordered_json summary{
        {"aborted", transcript.aborted_reason.has_value()},
        {"reason",
         transcript.aborted_reason ? ordered_json(*transcript.aborted_reason)
                                   : ordered_json()},
        {"decoded", transcript.decoded ? ordered_json(bits_to_string(*transcript.decoded))
                                       : ordered_json()},
        {"accuracy", transcript.decoded ? ordered_json(accuracy) : ordered_json()}};

    ordered_json doc{{"schema_version", kTranscriptSchemaVersion},
                     {"command", "sdc"},
                     {"config", ordered_json{{"message", config.message},
                                             {"permission", config.permission},
                                             {"adversary", adversary_json(config.adversary)},
                                             {"policy", policy_json(config.policy)},
                                             {"seed", config.seed}}},
                     {"session", to_json(transcript)},
                     {"summary", summary}};
    write_output(config.out_path, doc);

    if (transcript.aborted_reason) {
        std::printf("aborted: %s\n", transcript.aborted_reason->c_str());
        if (transcript.verification)
            std::printf("verification failure rate %.17g over %zu triplets\n",
                        transcript.verification->failure_rate,
                        transcript.verification->tested);
    } else {
        std::printf("decoded  %s\n", bits_to_string(*transcript.decoded).c_str());
        std::printf("accuracy %.17g\n", accuracy);
    }
    return 0;
}

int cmd_verify(const RunConfig& config) {
    RandomSource rng(config.seed);
    const auto triplets = prepare_channel(config.trials, config.adversary, rng);

    std::size_t z_tested = 0, z_failures = 0, x_tested = 0, x_failures = 0;
    for (const auto& triplet : triplets) {
        if (rng.uniform() < config.policy.z_test_weight) {
            ++z_tested;
            if (!z_parity_check(triplet, rng)) ++z_failures;
        } else {
            ++x_tested;
            if (!x_agreement_check(triplet, rng)) ++x_failures;
        }
    }
    const auto rate = [](std::size_t failures, std::size_t tested) {
        return tested ? static_cast<double>(failures) / static_cast<double>(tested) : 0.0;
    };

    ordered_json report{{"z_tested", z_tested},
                        {"z_failures", z_failures},
                        {"z_rate", rate(z_failures, z_tested)},
                        {"z_ci95", ci95(z_failures, z_tested)},
                        {"x_tested", x_tested},
                        {"x_failures", x_failures},
                        {"x_rate", rate(x_failures, x_tested)},
                        {"x_ci95", ci95(x_failures, x_tested)}};
    ordered_json doc{{"schema_version", kTranscriptSchemaVersion},
                     {"command", "verify"},
                     {"config", ordered_json{{"trials", config.trials},
                                             {"adversary", adversary_json(config.adversary)},
                                             {"z_test_weight", config.policy.z_test_weight},
                                             {"seed", config.seed}}},
                     {"report", report}};
    write_output(config.out_path, doc);

    std::printf("z-test  %zu tested  %zu failed  rate %.17g\n", z_tested, z_failures,
                rate(z_failures, z_tested));
    std::printf("x-test  %zu tested  %zu failed  rate %.17g\n", x_tested, x_failures,
                rate(x_failures, x_tested));
    return 0;
}

void add_adversary_options(CLI::App* cmd, RunConfig& config, std::string& kind,
                           std::string& target) {
    cmd->add_option("--adversary", kind, "none|ir-z|ir-x|depol")
        ->check(CLI::IsMember({"none", "ir-z", "ir-x", "depol"}));
    cmd->add_option("--p", config.adversary.p, "depolarizing probability")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--target", target, "attacked in-transit qubit: A|B")
        ->check(CLI::IsMember({"A", "B"}));
}

void finish_adversary(RunConfig& config, const std::string& kind,
                      const std::string& target) {
    if (kind == "ir-z") config.adversary.kind = AdversaryKind::InterceptResendZ;
    else if (kind == "ir-x") config.adversary.kind = AdversaryKind::InterceptResendX;
    else if (kind == "depol") config.adversary.kind = AdversaryKind::Depolarize;
    else config.adversary.kind = AdversaryKind::None;
    config.adversary.target =
        (target == "A") ? AttackTarget::QubitA : AttackTarget::QubitB;
}

void add_policy_options(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--sacrifice-fraction", config.policy.sacrifice_fraction)
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
    cmd->add_option("--min-sacrifice", config.policy.min_sacrifice)
        ->check(CLI::PositiveNumber);
    cmd->add_option("--z-test-weight", config.policy.z_test_weight)
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--failure-threshold", config.policy.failure_threshold)
        ->check(CLI::Range(0.0, 1.0));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ctsim: controlled teleportation and direct-communication simulator"};
    app.require_subcommand(1);

    RunConfig config;
    std::string adversary_kind = "none";
    std::string adversary_target = "B";
    std::string permission = "true";

    auto* teleport_cmd = app.add_subcommand("teleport", "run teleportation trials");
    teleport_cmd->add_option("--trials", config.trials)->check(CLI::PositiveNumber);
    teleport_cmd->add_option("--seed", config.seed)->envname("SIM_SEED");
    teleport_cmd->add_option("--out", config.out_path, "output JSON path");

    auto* sdc_cmd = app.add_subcommand("sdc", "run one direct-communication session");
    sdc_cmd->add_option("--message", config.message, "bitstring, e.g. 101001")
        ->required()
        ->check(CLI::Validator(
            [](std::string& value) -> std::string {
                if (value.empty()) return "message must be nonempty";
                for (char c : value)
                    if (c != '0' && c != '1') return "message must match [01]+";
                return {};
            },
            "BITS"));
    sdc_cmd->add_option("--permission", permission, "true|false")
        ->check(CLI::IsMember({"true", "false"}));
    add_adversary_options(sdc_cmd, config, adversary_kind, adversary_target);
    add_policy_options(sdc_cmd, config);
    sdc_cmd->add_option("--seed", config.seed)->envname("SIM_SEED");
    sdc_cmd->add_option("--out", config.out_path, "output JSON path");

    auto* verify_cmd = app.add_subcommand("verify", "channel verification statistics");
    verify_cmd->add_option("--trials", config.trials)->check(CLI::PositiveNumber);
    add_adversary_options(verify_cmd, config, adversary_kind, adversary_target);
    verify_cmd->add_option("--z-test-weight", config.policy.z_test_weight)
        ->check(CLI::Range(0.0, 1.0));
    verify_cmd->add_option("--seed", config.seed)->envname("SIM_SEED");
    verify_cmd->add_option("--out", config.out_path, "output JSON path");

    auto* table_cmd = app.add_subcommand("table", "print the correction table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    finish_adversary(config, adversary_kind, adversary_target);
    config.permission = (permission == "true");

    try {
        if (table_cmd->parsed()) return cmd_table();
        if (teleport_cmd->parsed()) {
            config.subcommand = Subcommand::Teleport;
            return cmd_teleport(config);
        }
        if (sdc_cmd->parsed()) {
            config.subcommand = Subcommand::Sdc;
            return cmd_sdc(config);
        }
        config.subcommand = Subcommand::Verify;
        return cmd_verify(config);
    } catch (const SimError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
