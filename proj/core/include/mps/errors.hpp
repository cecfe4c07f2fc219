#pragma once

#include <stdexcept>
#include <string>

namespace mps {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- graph construction ---

struct DuplicateEdge final : Error {
    using Error::Error;
};
struct SelfLoop final : Error {
    using Error::Error;
};
struct NonPositiveWeight final : Error {
    using Error::Error;
};
struct LengthMismatch final : Error {
    using Error::Error;
};
struct TooFewNodes final : Error {
    using Error::Error;
};

// --- planarity / embeddings ---

struct NotNonPlanar final : Error {
    using Error::Error;
};
struct InconsistentRotation final : Error {
    using Error::Error;
};

// --- preprocessing / pipeline ---

struct Disconnected final : Error {
    using Error::Error;
};
struct NotPlanarInput final : Error {
    using Error::Error;
};
struct NonPlanarCoreSolution final : Error {
    using Error::Error;
};

// --- oracle ---

struct InstanceTooLarge final : Error {
    using Error::Error;
};

// --- solver ---

struct SeparatorContractViolation final : Error {
    using Error::Error;
};

// --- formulations ---

struct MalformedTree final : Error {
    using Error::Error;
};
struct NoFreeEdge final : Error {
    using Error::Error;
};

// --- parsing / generation ---

struct ParseError final : Error {
    ParseError(const std::string& msg, int line) : Error(msg + " (line " + std::to_string(line) + ")"), line_no(line) {}
    explicit ParseError(const std::string& msg) : Error(msg), line_no(0) {}
    int line_no;
};
struct FormatMismatch final : Error {
    using Error::Error;
};
struct InfeasibleDegree final : Error {
    using Error::Error;
};

} // namespace mps
