#ifndef NCCLARK_ERRORS_HPP
#define NCCLARK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ncclark {

// Every library failure derives from Error; kind() is the stable name used in
// CLI error reports.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

class ArityError : public Error {
public:
    explicit ArityError(const std::string& msg) : Error("ArityError", msg) {}
};

// Singular or ill-conditioned solve.  cond is the 1-norm condition estimate
// (infinity for an exactly singular matrix).
class DomainError : public Error {
public:
    DomainError(const std::string& msg, double cond)
        : Error("DomainError", msg), cond_(cond) {}
    double cond() const { return cond_; }

private:
    double cond_;
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error("PreconditionError", msg) {}
};

class IterationError : public Error {
public:
    explicit IterationError(const std::string& msg) : Error("IterationError", msg) {}
};

class HeuristicError : public Error {
public:
    explicit HeuristicError(const std::string& msg) : Error("HeuristicError", msg) {}
};

class RegularityError : public Error {
public:
    explicit RegularityError(const std::string& msg) : Error("RegularityError", msg) {}
};

// Malformed input document (JSON shape, missing field).
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error("InputError", msg) {}
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t pos)
        : Error("SyntaxError", msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

} // namespace ncclark

#endif
