#pragma once

#include <stdexcept>
#include <string>

namespace bjacobi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter outside the validity domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, int degree, double tail)
      : Error(what), degree_(degree), tail_(tail) {}
  int degree() const noexcept { return degree_; }
  double tail_estimate() const noexcept { return tail_; }

 private:
  int degree_;
  double tail_;
};

// A lower-parameter Pochhammer vanished while the numerator did not.
class IllConditioned : public Error {
 public:
  using Error::Error;
};

// c - a - b is an integer; the two-term connection formula degenerates.
class LogarithmicCase : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  QuadratureFailure(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace bjacobi
