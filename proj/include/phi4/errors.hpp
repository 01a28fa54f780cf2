#ifndef PHI4_ERRORS_HPP
#define PHI4_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace phi4 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument: non-positive coupling, even index, out-of-range n.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Objects built for different couplings or truncations were combined.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// A sequence left the admissible set at level n.
class MembershipError : public Error {
 public:
  MembershipError(int n, const std::string& what)
      : Error(what + " (n=" + std::to_string(n) + ")"), n_(n) {}
  int n() const { return n_; }

 private:
  int n_;
};

// The strict closure was asked for H^{n+3} beyond the truncation.
class TruncationError : public Error {
 public:
  explicit TruncationError(int n)
      : Error("closure is strict; H^" + std::to_string(n + 3) +
              " lies beyond the truncation"),
        n_(n) {}
  int n() const { return n_; }

 private:
  int n_;
};

// Division by an exact zero (H^{n+1}, C^{n+1} or H^{n-1}).
class DegenerateInputError : public Error {
 public:
  DegenerateInputError(int n, const std::string& what)
      : Error(what + " (n=" + std::to_string(n) + ")"), n_(n) {}
  int n() const { return n_; }

 private:
  int n_;
};

// An iterate of M* lost the alternating sign structure or left the envelopes.
class StabilityError : public Error {
 public:
  StabilityError(int n, int iteration, const std::string& what)
      : Error(what + " (n=" + std::to_string(n) +
              ", iteration=" + std::to_string(iteration) + ")"),
        n_(n),
        iteration_(iteration) {}
  int n() const { return n_; }
  int iteration() const { return iteration_; }

 private:
  int n_;
  int iteration_;
};

}  // namespace phi4

#endif
