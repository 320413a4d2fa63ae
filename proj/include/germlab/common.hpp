#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace germlab {

inline constexpr const char* kVersion = "0.1.0";

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed user input (expression syntax, bad flags, inconsistent spec).
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

/// Expression syntax error carrying the byte offset of the offending token.
class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t position)
        : InputError(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// A violated internal invariant; indicates a bug, not bad input.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what)
        : Error("internal invariant violation: " + what) {}
};

/// SplitMix64; used wherever the library needs a deterministic pseudo-random
/// stream (sampling policy, test generators). Never seeded from time.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

}  // namespace germlab
