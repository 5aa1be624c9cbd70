#pragma once
#include <stdexcept>
#include <string>

namespace mqc {

// ---------- typed error hierarchy ----------
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// radicand algebra
struct DependentRadicands : Error {
    explicit DependentRadicands(const std::string& m) : Error("dependent radicands: " + m) {}
};
struct AlreadyContained : Error {
    explicit AlreadyContained(const std::string& m) : Error("radicand already contained: " + m) {}
};

// class-number machinery
struct BoundExceeded : Error {
    explicit BoundExceeded(const std::string& m) : Error("feasibility bound exceeded: " + m) {}
};
struct MissingClassNumber : Error {
    explicit MissingClassNumber(const std::string& m) : Error("missing class number: " + m) {}
};

// oracle
struct OracleUnavailable : Error {
    explicit OracleUnavailable(const std::string& m) : Error("oracle unavailable: " + m) {}
};
struct ResponderError : Error {
    explicit ResponderError(const std::string& m) : Error("responder error: " + m) {}
};
struct TimeoutError : Error {
    explicit TimeoutError(const std::string& m) : Error("timeout: " + m) {}
};

// cli / io
struct UnknownTable : Error {
    explicit UnknownTable(const std::string& m) : Error("unknown table: " + m) {}
};
struct IoError : Error {
    explicit IoError(const std::string& m) : Error("i/o error: " + m) {}
};

} // namespace mqc
