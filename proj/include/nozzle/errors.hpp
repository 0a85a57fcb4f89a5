#pragma once

#include <stdexcept>
#include <string>

namespace nozzle {

// Density would be nonpositive: the local speed reached or exceeded the
// limit speed sqrt(2*C0).
class CavitationError : public std::runtime_error {
public:
    explicit CavitationError(const std::string& what) : std::runtime_error(what) {}
};

// The radial direction stopped being time-like: (d_r Phi)^2 - c^2 fell
// below the guard floor.
class HyperbolicityLoss : public std::runtime_error {
public:
    explicit HyperbolicityLoss(const std::string& what) : std::runtime_error(what) {}
};

class StepRejected : public std::runtime_error {
public:
    explicit StepRejected(const std::string& what) : std::runtime_error(what) {}
};

class NoConvergence : public std::runtime_error {
public:
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

// A root finder landed on the subsonic branch.
class BranchError : public std::runtime_error {
public:
    explicit BranchError(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Reflected sample points fall outside the available data.
class ResolutionError : public std::runtime_error {
public:
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

class DegenerateInput : public std::runtime_error {
public:
    explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

class InsufficientSlices : public std::runtime_error {
public:
    explicit InsufficientSlices(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nozzle
