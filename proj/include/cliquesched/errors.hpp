#pragma once

#include <stdexcept>
#include <string>

namespace cliquesched {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A processing time of INFINITY reached arithmetic or a placement.
class InfiniteTime : public Error {
public:
    using Error::Error;
};

/// Instance data violates a structural invariant.
class InvalidInstance : public Error {
public:
    using Error::Error;
};

/// Input does not satisfy the preconditions of the called solver.
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

/// A clique has more jobs than there are machines.
class CliqueTooLarge : public Error {
public:
    using Error::Error;
};

/// No feasible schedule exists.
class Infeasible : public Error {
public:
    using Error::Error;
};

/// A search exceeded its configured state budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class NoPerfectMatching : public Error {
public:
    using Error::Error;
};

/// Raised when a matching that must exist was not found; always a bug.
class MatchingFailed : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class InfeasibleModel : public Error {
public:
    using Error::Error;
};

class InvalidSize : public Error {
public:
    using Error::Error;
};

class InvalidTimes : public Error {
public:
    using Error::Error;
};

class ValuationNotSatisfying : public Error {
public:
    using Error::Error;
};

/// The requested algorithm does not apply to the instance.
class NoApplicableAlgorithm : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace cliquesched
