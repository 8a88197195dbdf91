#pragma once

#include <stdexcept>
#include <string>

namespace rectforge {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfRangeError : Error {
    using Error::Error;
};
struct PositionOccupiedError : Error {
    using Error::Error;
};
struct SelfLoopError : Error {
    using Error::Error;
};
struct DimensionMismatchError : Error {
    using Error::Error;
};
struct IncompleteInputError : Error {
    using Error::Error;
};

// The canonical labeler's BFS starved before covering every row and column,
// i.e. the rectangle has a proper matched sub-rectangle.
struct NotCoveredError : Error {
    using Error::Error;
};
struct NotAdequateError : Error {
    using Error::Error;
};
struct TooSmallError : Error {
    using Error::Error;
};

struct OddCellCountError : Error {
    using Error::Error;
};
struct TooLargeError : Error {
    using Error::Error;
};
struct WrongRowCountError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

}  // namespace rectforge
