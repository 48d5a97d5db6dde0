#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qlp {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidNodeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what_arg)
      : Error("parse error on line " + std::to_string(line) + ": " + what_arg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmptyGraphError : public Error {
 public:
  using Error::Error;
};

// Weighted sampling over a weight vector whose total mass is zero.
class EmptySupportError : public Error {
 public:
  using Error::Error;
};

class InvalidWeightError : public Error {
 public:
  using Error::Error;
};

// Dense N x N work was requested above the configured size cap.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

// Rejection sampling hit its attempt cap before collecting the requested
// number of useful samples. Carries the empirical acceptance rate so callers
// can report how close the run was (zero-support graphs simply never accept).
class SupportExhaustedError : public Error {
 public:
  SupportExhaustedError(std::uint64_t raw_draws, std::int64_t accepted,
                        std::int64_t requested)
      : Error("sampler support exhausted: accepted " +
              std::to_string(accepted) + "/" + std::to_string(requested) +
              " useful samples in " + std::to_string(raw_draws) +
              " raw draws (acceptance rate " +
              std::to_string(raw_draws > 0
                                 ? static_cast<double>(accepted) /
                                       static_cast<double>(raw_draws)
                                 : 0.0) +
              ")"),
        raw_draws_(raw_draws),
        accepted_(accepted),
        requested_(requested) {}

  std::uint64_t raw_draws() const { return raw_draws_; }
  std::int64_t accepted() const { return accepted_; }
  std::int64_t requested() const { return requested_; }
  double acceptance_rate() const {
    return raw_draws_ > 0
               ? static_cast<double>(accepted_) / static_cast<double>(raw_draws_)
               : 0.0;
  }

 private:
  std::uint64_t raw_draws_;
  std::int64_t accepted_;
  std::int64_t requested_;
};

// Chebyshev truncation order below the bound needed for the target accuracy.
class TruncationBoundError : public Error {
 public:
  using Error::Error;
};

// Holdout solution overlaps the train graph's edges (or is otherwise not a
// valid set of candidate missing links).
class InvalidHoldoutError : public Error {
 public:
  using Error::Error;
};

// Scale-free exponent outside the gamma > 2 regime.
class OutOfRegimeError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class UnnormalizedDistributionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qlp
