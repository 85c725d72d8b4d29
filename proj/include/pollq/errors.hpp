#pragma once

#include <stdexcept>
#include <string>

namespace pollq {

// Parameter outside its valid domain (negative rate, zero servers, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Arrival fractions that do not sum to one.
class NormalizationError : public DomainError {
public:
    explicit NormalizationError(const std::string& what) : DomainError(what) {}
};

// Caller broke an input ordering contract (e.g. unsorted arrivals).
class PreconditionError : public std::logic_error {
public:
    explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

// Requested work exceeds the configured replication budget.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pollq
