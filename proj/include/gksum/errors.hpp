#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gksum {

// Base class for everything the engine can throw on purpose.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Intermediate polynomial exceeded the degree or coefficient-size cap.
class ResourceLimitError : public Error {
public:
    explicit ResourceLimitError(const std::string& what) : Error("ResourceLimit", what) {}
};

class ZeroDenominatorError : public Error {
public:
    explicit ZeroDenominatorError(const std::string& what) : Error("ZeroDenominator", what) {}
};

// Evaluation left the validity domain (negative factorial argument,
// division by zero, negative sequence index, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("DomainError", what) {}
};

// The consecutive-term ratio of the expression is not a rational function
// the term model can certify.
class NotHypergeometricError : public Error {
public:
    explicit NotHypergeometricError(const std::string& what)
        : Error("NotHypergeometric", what) {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
        : Error("ParseError", what), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class NoPrefixSumError : public Error {
public:
    explicit NoPrefixSumError(const std::string& what) : Error("NoPrefixSum", what) {}
};

class InvalidPrefixSumError : public Error {
public:
    explicit InvalidPrefixSumError(const std::string& what) : Error("InvalidPrefixSum", what) {}
};

class NotPolynomialError : public Error {
public:
    explicit NotPolynomialError(const std::string& what) : Error("NotPolynomial", what) {}
};

class CorpusError : public Error {
public:
    CorpusError(std::size_t line, const std::string& what)
        : Error("CorpusError", what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace gksum
