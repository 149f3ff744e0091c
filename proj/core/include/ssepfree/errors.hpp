#ifndef SSEPFREE_ERRORS_HPP
#define SSEPFREE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ssepfree {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input exceeds a documented size cap.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// A partition-order precondition (refinement) does not hold.
class OrderError : public Error {
public:
    using Error::Error;
};

class ConnectivityError : public Error {
public:
    using Error::Error;
};

/// Graph does not belong to the required class.
class ClassError : public Error {
public:
    using Error::Error;
};

class IncompleteTableError : public Error {
public:
    using Error::Error;
};

class CoincidenceError : public Error {
public:
    using Error::Error;
};

/// Evaluation point on or inside the support of a resolvent.
class BranchError : public Error {
public:
    using Error::Error;
};

/// Root too close to the edge of the admissible interval.
class EdgeError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, long line) : ValidationError(what), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

/// Iterative solver failed; carries the last iterate's diagnostics.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, long iterations, double residual)
        : Error(what), iterations_(iterations), residual_(residual) {}
    long iterations() const { return iterations_; }
    double residual() const { return residual_; }

private:
    long iterations_;
    double residual_;
};

}  // namespace ssepfree

#endif
