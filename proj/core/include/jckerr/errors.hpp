#pragma once

#include <stdexcept>
#include <string>

namespace jckerr {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input outside the documented domain of a parameter (χ ≤ 0, ε < 0, ...).
class InvalidParams : public Error {
public:
  using Error::Error;
};

class InvalidTruncation : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class SectorOutOfRange : public Error {
public:
  using Error::Error;
};

class NotSymmetric : public Error {
public:
  using Error::Error;
};

class NoConvergence : public Error {
public:
  using Error::Error;
};

/// Ground level is (near-)degenerate; its geometric phase is ill-defined.
class DegenerateGround : public Error {
public:
  explicit DegenerateGround(double gap)
      : Error("degenerate ground level (gap " + std::to_string(gap) + ")"), gap_(gap) {}
  double gap() const noexcept { return gap_; }

private:
  double gap_;
};

class LoopTooCoarse : public Error {
public:
  using Error::Error;
};

class NotDensityMatrix : public Error {
public:
  using Error::Error;
};

class OutsideCurveDomain : public Error {
public:
  using Error::Error;
};

class EpsilonZero : public Error {
public:
  using Error::Error;
};

class NoInteriorMaximum : public Error {
public:
  using Error::Error;
};

class NoCrossingsFound : public Error {
public:
  using Error::Error;
};

}  // namespace jckerr
