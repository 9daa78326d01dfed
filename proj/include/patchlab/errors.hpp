#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace patchlab {

// Base for all structured errors. `code` is a stable machine-readable tag,
// `witness` holds the offending data (element indices, pairs, triples) so
// reports can carry it verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message, std::vector<int> witness = {})
        : std::runtime_error(code + ": " + message), code_(std::move(code)), witness_(std::move(witness)) {}

    const std::string& code() const { return code_; }
    const std::vector<int>& witness() const { return witness_; }

private:
    std::string code_;
    std::vector<int> witness_;
};

// Invalid input data: a group axiom fails, a map is not a homomorphism,
// a system's squares do not commute. CLI exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A search exceeded the configured order/size bounds. CLI exit code 3.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

// A stated hypothesis of a conditional operation does not hold on the
// given instance (named in the message).
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

// The cocycle-orientation calibration disagreed with the object oracle.
class CalibrationMismatch : public Error {
public:
    using Error::Error;
};

// A lift guaranteed by the hypercohomology sequence did not exist.
class LiftFailed : public Error {
public:
    using Error::Error;
};

}  // namespace patchlab
