// statevec.cpp

#include "ctsim/statevec.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ctsim {

namespace {

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

double norm_squared(const std::vector<Amplitude>& amps) {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
}

void check_finite(const std::vector<Amplitude>& amps) {
    for (const auto& a : amps) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw SimError("non-finite amplitude");
    }
}

// Distinct, in-range target slots.
void check_targets(const std::vector<std::size_t>& targets, std::size_t num_qubits) {
    if (targets.empty()) throw TargetOutOfRange("empty target list");
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= num_qubits)
            throw TargetOutOfRange("target slot " + std::to_string(targets[i]) +
                                   " out of range for " + std::to_string(num_qubits) +
                                   " qubits");
        for (std::size_t j = i + 1; j < targets.size(); ++j)
            if (targets[i] == targets[j])
                throw TargetOutOfRange("repeated target slot " + std::to_string(targets[i]));
    }
}

// Placement table: maps a sub-index over the given slots (first slot =
// most significant bit) to its contribution to the full big-endian index.
std::vector<std::size_t> placement_table(const std::vector<std::size_t>& slots,
                                         std::size_t num_qubits) {
    const std::size_t k = slots.size();
    std::vector<std::size_t> table(std::size_t{1} << k, 0);
    for (std::size_t sub = 0; sub < table.size(); ++sub) {
        std::size_t full = 0;
        for (std::size_t j = 0; j < k; ++j)
            if ((sub >> (k - 1 - j)) & 1u)
                full |= std::size_t{1} << (num_qubits - 1 - slots[j]);
        table[sub] = full;
    }
    return table;
}

std::vector<std::size_t> complement_slots(const std::vector<std::size_t>& slots,
                                          std::size_t num_qubits) {
    std::vector<bool> used(num_qubits, false);
    for (auto s : slots) used[s] = true;
    std::vector<std::size_t> rest;
    for (std::size_t q = 0; q < num_qubits; ++q)
        if (!used[q]) rest.push_back(q);
    return rest;
}

Eigen::MatrixXcd to_eigen(std::size_t dim, const std::vector<Amplitude>& entries) {
    Eigen::MatrixXcd m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                entries[r * dim + c];
    return m;
}

std::vector<double> hermitian_eigenvalues(std::size_t dim,
                                          const std::vector<Amplitude>& entries) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(dim, entries),
                                                           Eigen::EigenvaluesOnly);
    std::vector<double> eigs(dim);
    for (std::size_t i = 0; i < dim; ++i)
        eigs[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    return eigs;
}

// Probabilities plus the residual (unmeasured-slot) vector of one outcome.
struct OutcomeProjection {
    std::vector<double> probabilities;
    std::vector<Amplitude> residual; // unnormalized, for `residual_for`
};

std::vector<Amplitude> residual_vector(const PureState& state,
                                       const MeasurementBasis& basis,
                                       const std::vector<std::size_t>& t_place,
                                       const std::vector<std::size_t>& r_place,
                                       std::size_t outcome) {
    const PureState& b = basis.state(outcome);
    std::vector<Amplitude> residual(r_place.size(), Amplitude{0.0, 0.0});
    for (std::size_t r = 0; r < r_place.size(); ++r) {
        Amplitude acc{0.0, 0.0};
        for (std::size_t t = 0; t < t_place.size(); ++t)
            acc += std::conj(b[t]) * state[t_place[t] | r_place[r]];
        residual[r] = acc;
    }
    return residual;
}

} // namespace

// --- PureState --------------------------------------------------------

PureState::PureState(std::vector<Amplitude> amps, std::size_t num_qubits) {
    if (num_qubits == 0) throw LengthMismatch("num_qubits must be positive");
    if (amps.size() != (std::size_t{1} << num_qubits))
        throw LengthMismatch("expected " + std::to_string(std::size_t{1} << num_qubits) +
                             " amplitudes, got " + std::to_string(amps.size()));
    check_finite(amps);
    const double n = std::sqrt(norm_squared(amps));
    if (n < kAdmissionTol) throw ZeroVector("amplitude vector has near-zero norm");
    for (auto& a : amps) a /= n;
    num_qubits_ = num_qubits;
    amps_ = std::move(amps);
}

PureState PureState::unit(std::vector<Amplitude> amps, std::size_t num_qubits) {
    if (num_qubits == 0) throw LengthMismatch("num_qubits must be positive");
    if (amps.size() != (std::size_t{1} << num_qubits))
        throw LengthMismatch("expected " + std::to_string(std::size_t{1} << num_qubits) +
                             " amplitudes, got " + std::to_string(amps.size()));
    check_finite(amps);
    if (std::abs(norm_squared(amps) - 1.0) > kAlgebraTol)
        throw SimError("unit() given a non-unit vector");
    PureState s;
    s.num_qubits_ = num_qubits;
    s.amps_ = std::move(amps);
    return s;
}

PureState make_state(std::vector<Amplitude> amps, std::size_t num_qubits) {
    return PureState(std::move(amps), num_qubits);
}

PureState basis_ket(std::size_t num_qubits, std::size_t index) {
    if (num_qubits == 0) throw LengthMismatch("num_qubits must be positive");
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (index >= dim) throw TargetOutOfRange("basis index out of range");
    std::vector<Amplitude> amps(dim, Amplitude{0.0, 0.0});
    amps[index] = Amplitude{1.0, 0.0};
    return PureState::unit(std::move(amps), num_qubits);
}

PureState random_bloch_state(RandomSource& rng) {
    const double cos_theta = 1.0 - 2.0 * rng.uniform();
    const double phi = 2.0 * M_PI * rng.uniform();
    const double a = std::sqrt(0.5 * (1.0 + cos_theta));
    const double b = std::sqrt(0.5 * (1.0 - cos_theta));
    return make_state({Amplitude{a, 0.0}, std::polar(b, phi)}, 1);
}

// --- GateMatrix -------------------------------------------------------

GateMatrix::GateMatrix(std::size_t dim, std::vector<Amplitude> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ != 2 && dim_ != 4) throw DimMismatch("gate dim must be 2 or 4");
    if (entries_.size() != dim_ * dim_)
        throw DimMismatch("gate entry count does not match dim");
    check_finite(entries_);
    // U†U = I, entrywise
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            Amplitude acc{0.0, 0.0};
            for (std::size_t k = 0; k < dim_; ++k)
                acc += std::conj(entries_[k * dim_ + r]) * entries_[k * dim_ + c];
            const Amplitude expect = (r == c) ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
            if (std::abs(acc - expect) > kAlgebraTol)
                throw SimError("gate matrix is not unitary");
        }
    }
}

namespace gates {

const GateMatrix& identity() {
    static const GateMatrix g(2, {{1, 0}, {0, 0}, {0, 0}, {1, 0}});
    return g;
}

const GateMatrix& pauli_x() {
    static const GateMatrix g(2, {{0, 0}, {1, 0}, {1, 0}, {0, 0}});
    return g;
}

const GateMatrix& pauli_y() {
    static const GateMatrix g(2, {{0, 0}, {0, -1}, {0, 1}, {0, 0}});
    return g;
}

const GateMatrix& pauli_z() {
    static const GateMatrix g(2, {{1, 0}, {0, 0}, {0, 0}, {-1, 0}});
    return g;
}

const GateMatrix& hadamard() {
    static const double r = 1.0 / std::sqrt(2.0);
    static const GateMatrix g(2, {{r, 0}, {r, 0}, {r, 0}, {-r, 0}});
    return g;
}

} // namespace gates

// --- DensityMatrix ----------------------------------------------------

DensityMatrix::DensityMatrix(std::size_t dim, std::vector<Amplitude> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0 || !is_power_of_two(dim_))
        throw DimMismatch("density matrix dim must be a power of two");
    if (entries_.size() != dim_ * dim_)
        throw DimMismatch("density matrix entry count does not match dim");
    check_finite(entries_);
    double trace = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        trace += entries_[r * dim_ + r].real();
        if (std::abs(entries_[r * dim_ + r].imag()) > kAlgebraTol)
            throw SimError("density matrix has a non-real diagonal entry");
        for (std::size_t c = r + 1; c < dim_; ++c)
            if (std::abs(entries_[r * dim_ + c] - std::conj(entries_[c * dim_ + r])) > kAlgebraTol)
                throw SimError("density matrix is not Hermitian");
    }
    if (std::abs(trace - 1.0) > kAlgebraTol)
        throw SimError("density matrix trace is not 1");
    for (double eig : hermitian_eigenvalues(dim_, entries_))
        if (eig < -1e-10) throw SimError("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
    const std::size_t dim = state.dim();
    std::vector<Amplitude> entries(dim * dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            entries[r * dim + c] = state[r] * std::conj(state[c]);
    return DensityMatrix(dim, std::move(entries));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    std::vector<Amplitude> entries(dim * dim, Amplitude{0.0, 0.0});
    for (std::size_t r = 0; r < dim; ++r)
        entries[r * dim + r] = Amplitude{1.0 / static_cast<double>(dim), 0.0};
    return DensityMatrix(dim, std::move(entries));
}

DensityMatrix mixed_state(const std::vector<std::pair<double, PureState>>& ensemble) {
    if (ensemble.empty()) throw InvalidCount("empty ensemble");
    const std::size_t dim = ensemble.front().second.dim();
    double total = 0.0;
    std::vector<Amplitude> entries(dim * dim, Amplitude{0.0, 0.0});
    for (const auto& [weight, state] : ensemble) {
        if (weight < 0.0) throw SimError("negative ensemble weight");
        if (state.dim() != dim) throw DimMismatch("ensemble states differ in qubit count");
        total += weight;
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c)
                entries[r * dim + c] += weight * state[r] * std::conj(state[c]);
    }
    if (std::abs(total - 1.0) > kAlgebraTol)
        throw SimError("ensemble weights do not sum to 1");
    return DensityMatrix(dim, std::move(entries));
}

// --- MeasurementBasis -------------------------------------------------

MeasurementBasis::MeasurementBasis(std::vector<std::size_t> target_qubits,
                                   std::vector<PureState> basis_states)
    : targets_(std::move(target_qubits)), states_(std::move(basis_states)) {
    if (targets_.empty()) throw TargetOutOfRange("basis needs at least one target");
    for (std::size_t i = 0; i < targets_.size(); ++i)
        for (std::size_t j = i + 1; j < targets_.size(); ++j)
            if (targets_[i] == targets_[j])
                throw TargetOutOfRange("repeated basis target");
    const std::size_t k = targets_.size();
    if (states_.size() != (std::size_t{1} << k))
        throw DimMismatch("basis needs exactly 2^k states");
    for (const auto& s : states_)
        if (s.num_qubits() != k)
            throw DimMismatch("basis state qubit count does not match target count");
    // pairwise ⟨i|j⟩ = δ_ij
    for (std::size_t i = 0; i < states_.size(); ++i)
        for (std::size_t j = i; j < states_.size(); ++j) {
            const Amplitude ip = inner_product(states_[i], states_[j]);
            const Amplitude expect = (i == j) ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
            if (std::abs(ip - expect) > kAlgebraTol)
                throw SimError("basis states are not orthonormal");
        }
}

MeasurementBasis MeasurementBasis::computational(std::vector<std::size_t> target_qubits) {
    const std::size_t k = target_qubits.size();
    std::vector<PureState> states;
    states.reserve(std::size_t{1} << k);
    for (std::size_t i = 0; i < (std::size_t{1} << k); ++i)
        states.push_back(basis_ket(k, i));
    return MeasurementBasis(std::move(target_qubits), std::move(states));
}

MeasurementBasis MeasurementBasis::product(std::vector<std::size_t> target_qubits,
                                           const PureState& zero_state,
                                           const PureState& one_state) {
    if (zero_state.num_qubits() != 1 || one_state.num_qubits() != 1)
        throw DimMismatch("product basis expects single-qubit states");
    const std::size_t k = target_qubits.size();
    std::vector<PureState> states;
    states.reserve(std::size_t{1} << k);
    for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) {
        PureState acc = ((i >> (k - 1)) & 1u) ? one_state : zero_state;
        for (std::size_t j = 1; j < k; ++j)
            acc = tensor(acc, ((i >> (k - 1 - j)) & 1u) ? one_state : zero_state);
        states.push_back(std::move(acc));
    }
    return MeasurementBasis(std::move(target_qubits), std::move(states));
}

// --- Operations -------------------------------------------------------

PureState tensor(const PureState& left, const PureState& right) {
    std::vector<Amplitude> amps(left.dim() * right.dim());
    for (std::size_t i = 0; i < left.dim(); ++i)
        for (std::size_t j = 0; j < right.dim(); ++j)
            amps[(i << right.num_qubits()) | j] = left[i] * right[j];
    return PureState::unit(std::move(amps), left.num_qubits() + right.num_qubits());
}

PureState apply_gate(const PureState& state, const GateMatrix& gate,
                     const std::vector<std::size_t>& targets) {
    check_targets(targets, state.num_qubits());
    const std::size_t k = targets.size();
    if (gate.dim() != (std::size_t{1} << k))
        throw DimMismatch("gate dim does not match target count");

    const auto t_place = placement_table(targets, state.num_qubits());
    const auto rest = complement_slots(targets, state.num_qubits());
    const auto r_place = placement_table(rest, state.num_qubits());

    std::vector<Amplitude> out(state.dim(), Amplitude{0.0, 0.0});
    std::vector<Amplitude> sub(gate.dim());
    for (std::size_t r = 0; r < r_place.size(); ++r) {
        for (std::size_t t = 0; t < gate.dim(); ++t)
            sub[t] = state[t_place[t] | r_place[r]];
        for (std::size_t row = 0; row < gate.dim(); ++row) {
            Amplitude acc{0.0, 0.0};
            for (std::size_t col = 0; col < gate.dim(); ++col)
                acc += gate.at(row, col) * sub[col];
            out[t_place[row] | r_place[r]] = acc;
        }
    }
    return PureState::unit(std::move(out), state.num_qubits());
}

Amplitude inner_product(const PureState& s1, const PureState& s2) {
    if (s1.num_qubits() != s2.num_qubits())
        throw DimMismatch("inner product of states with different qubit counts");
    Amplitude acc{0.0, 0.0};
    for (std::size_t i = 0; i < s1.dim(); ++i)
        acc += std::conj(s1[i]) * s2[i];
    return acc;
}

double fidelity(const PureState& s1, const PureState& s2) {
    return std::norm(inner_product(s1, s2));
}

double norm(const PureState& state) {
    return std::sqrt(norm_squared(state.amplitudes()));
}

std::vector<double> outcome_probabilities(const PureState& state,
                                          const MeasurementBasis& basis) {
    check_targets(basis.targets(), state.num_qubits());
    const auto t_place = placement_table(basis.targets(), state.num_qubits());
    const auto rest = complement_slots(basis.targets(), state.num_qubits());
    const auto r_place = placement_table(rest, state.num_qubits());

    std::vector<double> probs(basis.num_outcomes(), 0.0);
    double total = 0.0;
    for (std::size_t o = 0; o < basis.num_outcomes(); ++o) {
        const auto residual = residual_vector(state, basis, t_place, r_place, o);
        probs[o] = norm_squared(residual);
        total += probs[o];
    }
    if (std::abs(total - 1.0) > kAlgebraTol)
        throw SimError("Born probabilities do not sum to 1");
    return probs;
}

MeasureResult measure(const PureState& state, const MeasurementBasis& basis,
                      double uniform_sample) {
    const auto probs = outcome_probabilities(state, basis);
    std::size_t outcome = probs.size() - 1;
    double acc = 0.0;
    for (std::size_t o = 0; o < probs.size(); ++o) {
        acc += probs[o];
        if (uniform_sample < acc) {
            outcome = o;
            break;
        }
    }
    // Cumulative rounding can land the sample in a ~zero band; move to the
    // nearest outcome that actually carries probability.
    if (probs[outcome] < kDegenerateProb) {
        for (std::size_t d = 1; d < probs.size(); ++d) {
            if (outcome + d < probs.size() && probs[outcome + d] >= kDegenerateProb) {
                outcome += d;
                break;
            }
            if (outcome >= d && probs[outcome - d] >= kDegenerateProb) {
                outcome -= d;
                break;
            }
        }
    }

    const auto t_place = placement_table(basis.targets(), state.num_qubits());
    const auto rest = complement_slots(basis.targets(), state.num_qubits());
    const auto r_place = placement_table(rest, state.num_qubits());

    const double p = probs[outcome];
    if (p < kDegenerateProb)
        throw DegenerateBranch("sampled outcome has ~zero probability");
    auto residual = residual_vector(state, basis, t_place, r_place, outcome);
    const double scale = 1.0 / std::sqrt(norm_squared(residual));
    for (auto& a : residual) a *= scale;

    const PureState& b = basis.state(outcome);
    std::vector<Amplitude> collapsed(state.dim(), Amplitude{0.0, 0.0});
    for (std::size_t t = 0; t < t_place.size(); ++t)
        for (std::size_t r = 0; r < r_place.size(); ++r)
            collapsed[t_place[t] | r_place[r]] = b[t] * residual[r];

    std::optional<PureState> residual_state;
    if (!rest.empty())
        residual_state = PureState::unit(std::move(residual), rest.size());
    return MeasureResult{static_cast<int>(outcome), p,
                         PureState::unit(std::move(collapsed), state.num_qubits()),
                         std::move(residual_state)};
}

MeasureResult measure(const PureState& state, const MeasurementBasis& basis,
                      RandomSource& rng) {
    if (auto forced = rng.pop_forced_outcome()) {
        const auto probs = outcome_probabilities(state, basis);
        if (*forced < 0 || static_cast<std::size_t>(*forced) >= probs.size())
            throw TargetOutOfRange("forced outcome index out of range");
        if (probs[static_cast<std::size_t>(*forced)] < kDegenerateProb)
            throw DegenerateBranch("forced outcome has ~zero probability");
        // land the sample in the forced outcome's cumulative band
        double below = 0.0;
        for (int o = 0; o < *forced; ++o) below += probs[static_cast<std::size_t>(o)];
        return measure(state, basis,
                       below + 0.5 * probs[static_cast<std::size_t>(*forced)]);
    }
    return measure(state, basis, rng.uniform());
}

DensityMatrix reduced_density(const PureState& state,
                              const std::vector<std::size_t>& keep) {
    auto kept = keep;
    std::sort(kept.begin(), kept.end());
    check_targets(kept, state.num_qubits());

    const auto k_place = placement_table(kept, state.num_qubits());
    const auto rest = complement_slots(kept, state.num_qubits());
    const auto e_place = placement_table(rest, state.num_qubits());

    const std::size_t dim = k_place.size();
    std::vector<Amplitude> entries(dim * dim, Amplitude{0.0, 0.0});
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            Amplitude acc{0.0, 0.0};
            for (std::size_t e = 0; e < e_place.size(); ++e)
                acc += state[k_place[r] | e_place[e]] *
                       std::conj(state[k_place[c] | e_place[e]]);
            entries[r * dim + c] = acc;
        }
    return DensityMatrix(dim, std::move(entries));
}

double trace_distance(const DensityMatrix& d1, const DensityMatrix& d2) {
    if (d1.dim() != d2.dim())
        throw DimMismatch("trace distance of matrices with different dims");
    const std::size_t dim = d1.dim();
    std::vector<Amplitude> diff(dim * dim);
    for (std::size_t i = 0; i < dim * dim; ++i)
        diff[i] = d1.at(i / dim, i % dim) - d2.at(i / dim, i % dim);
    double sum = 0.0;
    for (double eig : hermitian_eigenvalues(dim, diff)) sum += std::abs(eig);
    return 0.5 * sum;
}

} // namespace ctsim
