#pragma once

#include <stdexcept>
#include <string>

namespace volwriter {

/// Invalid configuration or command-line input. CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Market-data problems: malformed files, coverage gaps, crossed quotes.
/// CLI exit code 3.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No quote within the staleness window at a required decision time.
class StaleDataError : public DataError {
public:
    using DataError::DataError;
};

/// Not enough usable observations (quotes, history) for an operation.
class InsufficientDataError : public DataError {
public:
    using DataError::DataError;
};

/// Numerical failure: non-convergence, domain violation, bad grid.
/// CLI exit code 4.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Target value lies outside the range attainable by the model.
class NoSolutionError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Fourier grid cannot meet the accuracy contract; message suggests a size.
class GridError : public NumericError {
public:
    using NumericError::NumericError;
};

} // namespace volwriter
