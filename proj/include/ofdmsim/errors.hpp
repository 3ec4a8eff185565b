#pragma once

#include <stdexcept>
#include <string>

namespace ofdmsim {

// Base of every error raised by the simulator library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Sequence length does not fit the requested operation (e.g. bits vs bits/symbol).
class LengthError : public Error {
public:
    using Error::Error;
};

// Modulation order is not a power of two >= 2.
class OrderError : public Error {
public:
    using Error::Error;
};

// Transform or frame size mismatch, or a non power-of-two transform length.
class SizeError : public Error {
public:
    using Error::Error;
};

// Cyclic prefix longer than the symbol, or a CP fraction with non-integer length.
class CpLengthError : public Error {
public:
    using Error::Error;
};

// Invalid user supplied configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace ofdmsim
