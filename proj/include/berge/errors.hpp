#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace berge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `pos` is a 0-based offset into the input.
struct SyntaxError : Error {
    SyntaxError(std::size_t pos, const std::string& msg)
        : Error("syntax error at position " + std::to_string(pos) + ": " + msg), pos(pos) {}
    std::size_t pos;
};

/// Variable index outside the declared dimension of its axis.
struct DimensionError : Error {
    using Error::Error;
};

/// Undefined extended-real operation (0/0, inf - inf, log of a nonpositive, ...).
struct DomainError : Error {
    using Error::Error;
};

struct InvalidWindow : Error {
    using Error::Error;
};

/// A feasibility map produced an empty image; carries the offending x.
struct EmptyImageError : Error {
    EmptyImageError(std::size_t x_index, std::vector<double> x_coords, const std::string& msg)
        : Error(msg), x_index(x_index), x_coords(std::move(x_coords)) {}
    std::size_t x_index;
    std::vector<double> x_coords;
};

/// Problem-file validation failure; names the offending field.
struct SchemaError : Error {
    SchemaError(const std::string& field, const std::string& reason)
        : Error("schema error in field \"" + field + "\": " + reason), field(field) {}
    std::string field;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace berge
