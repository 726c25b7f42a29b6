#pragma once

#include <stdexcept>
#include <string>

namespace mincollector {

// Parameter outside the documented domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Two independent high-precision evaluations disagreed after the automatic
// precision doubling.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation would exceed its configured big-number operation budget.
class WorkBudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require_domain(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

}  // namespace mincollector
