#ifndef snlab_errors_hpp
#define snlab_errors_hpp

#include <stdexcept>
#include <string>

namespace snlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violated operation precondition (empty set, bad parameter, unvalidated graph, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Malformed input file or text; line is 0 when not applicable.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// An enumeration or search ran past its configured point cap or budget.
class HorizonExceeded : public Error {
public:
    using Error::Error;
};

// A supplied distance table is not a metric.
class MetricAxiomError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

}

#endif /* snlab_errors_hpp */
