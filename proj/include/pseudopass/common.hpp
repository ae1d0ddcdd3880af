#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace pseudopass {

using Complex = std::complex<double>;

inline constexpr int kDefaultMaxDiracOrder = 16;
inline constexpr int kMaxJetOrder = 48;
inline constexpr double kDefaultFalsifyTol = 1e-7;
inline constexpr double kDefaultPoleTol = 1e-9;
inline constexpr double kDefaultDiscriminantTol = 1e-12;
inline constexpr const char* kToolName = "pseudopass";
inline constexpr const char* kToolVersion = "0.1.0";

inline double inf() { return std::numeric_limits<double>::infinity(); }

// Input that violates a documented precondition or invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation requested outside a function's domain of definition
// (e.g. a Laplace transform left of its abscissa of convergence).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Operation not defined for the given representation.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric failure; carries the last estimate when one exists.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what, Complex last_estimate = {})
      : std::runtime_error(what), last_estimate_(last_estimate) {}
  Complex last_estimate() const { return last_estimate_; }

 private:
  Complex last_estimate_;
};

bool finite(Complex z);

// Fixed-width float formatting used by every serialized artifact
// (17 significant digits via %.17g).
std::string format_double(double v);
std::string format_complex(Complex z);  // "a" or "a+bi" / "a-bi"

uint64_t fnv1a(const void* data, size_t len);
std::string hex64(uint64_t v);

// Thread count from PSEUDOPASS_MAX_THREADS (default 1, clamped to [1, 64]).
int max_threads();

// Runs fn(i) for i in [0, n). Results must be written to index-addressed
// slots; reductions happen afterwards in index order, so the outcome does
// not depend on the schedule.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace pseudopass
