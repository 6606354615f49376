#pragma once

#include <stdexcept>
#include <string>

namespace qharm {

// Every library failure derives from Error; the CLI maps the categories
// onto its exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error { using Error::Error; };
class PoleError : public Error { using Error::Error; };
class DivergenceError : public Error { using Error::Error; };
class PrecisionError : public Error { using Error::Error; };
class InconsistencyError : public Error { using Error::Error; };
class UnsupportedRegion : public Error { using Error::Error; };
class ConvergenceFailure : public Error { using Error::Error; };

// Window endpoints carry mass; suggested_* is a window that would likely pass.
class WindowError : public Error {
public:
    WindowError(const std::string& what, int suggested_lo, int suggested_hi)
        : Error(what), suggested_lo(suggested_lo), suggested_hi(suggested_hi) {}
    int suggested_lo;
    int suggested_hi;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at byte " + std::to_string(offset)), offset(offset) {}
    std::size_t offset;
};

class CoverageError : public Error { using Error::Error; };

} // namespace qharm
