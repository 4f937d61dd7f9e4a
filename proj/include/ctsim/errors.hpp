// errors.hpp
// Error types thrown by the simulator core.

#pragma once

#include <stdexcept>
#include <string>

namespace ctsim {

// Base class for everything thrown by this library.
class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

// Amplitude vector length does not match the declared qubit count.
class LengthMismatch : public SimError {
public:
    explicit LengthMismatch(const std::string& what) : SimError(what) {}
};

// Amplitude vector has (near-)zero norm and cannot be normalized.
class ZeroVector : public SimError {
public:
    explicit ZeroVector(const std::string& what) : SimError(what) {}
};

// A qubit index is out of range or repeated.
class TargetOutOfRange : public SimError {
public:
    explicit TargetOutOfRange(const std::string& what) : SimError(what) {}
};

// Operand dimensions are incompatible.
class DimMismatch : public SimError {
public:
    explicit DimMismatch(const std::string& what) : SimError(what) {}
};

// A measurement branch with ~zero probability was selected; the collapsed
// state cannot be renormalized. Signals internal inconsistency (or a forced
// outcome onto an impossible branch), never a correctly sampled outcome.
class DegenerateBranch : public SimError {
public:
    explicit DegenerateBranch(const std::string& what) : SimError(what) {}
};

// Nonpositive or otherwise invalid count parameter.
class InvalidCount : public SimError {
public:
    explicit InvalidCount(const std::string& what) : SimError(what) {}
};

// Channel batch too small for the verification policy's minimum sacrifice.
class BatchTooSmall : public SimError {
public:
    explicit BatchTooSmall(const std::string& what) : SimError(what) {}
};

} // namespace ctsim
