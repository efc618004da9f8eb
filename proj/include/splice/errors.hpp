#ifndef SPLICE_ERRORS_HPP
#define SPLICE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace splice {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input document. line/column are 1-based; 0 means unknown.
struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& msg, int line_ = 0, int column_ = 0)
        : Error(msg), line(line_), column(column_) {}
};

// Precondition or invariant violation on otherwise well-formed data.
struct DomainError : Error {
    using Error::Error;
};

}  // namespace splice

#endif
