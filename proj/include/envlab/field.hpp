#pragma once

// Exact scalar types for the workbench: arbitrary-precision rationals and
// prime fields with a runtime modulus.  Floating point is banned everywhere;
// every arithmetic operation below is exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace envlab {

/// Error codes surfaced by the library.  Checks report verdicts; these are
/// thrown only for malformed input or broken preconditions.
enum class ErrorCode {
  BadInput,        // E_BAD_INPUT
  NotFiniteDim,    // E_NOT_FD
  DimMismatch,     // E_DIM_MISMATCH
  AxiomFail,       // E_AXIOM_FAIL
  SearchExhausted, // E_SEARCH_EXHAUSTED
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::BadInput: return "E_BAD_INPUT";
    case ErrorCode::NotFiniteDim: return "E_NOT_FD";
    case ErrorCode::DimMismatch: return "E_DIM_MISMATCH";
    case ErrorCode::AxiomFail: return "E_AXIOM_FAIL";
    case ErrorCode::SearchExhausted: return "E_SEARCH_EXHAUSTED";
  }
  return "E_UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

/// Field of rational numbers, exact and of arbitrary precision.
class Rational {
 public:
  using Backend = boost::multiprecision::cpp_rational;

  Rational() : v_(0) {}
  Rational(long long n) : v_(n) {}
  Rational(long long num, long long den) : v_(0) {
    if (den == 0) fail(ErrorCode::BadInput, "rational with zero denominator");
    v_ = Backend(num, den);
  }
  explicit Rational(Backend v) : v_(std::move(v)) {}

  static Rational parse(const std::string& s) {
    try {
      return Rational(Backend(s));
    } catch (const std::exception&) {
      fail(ErrorCode::BadInput, "cannot parse rational '" + s + "'");
    }
  }

  Rational operator+(const Rational& o) const { return Rational(Backend(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(Backend(v_ - o.v_)); }
  Rational operator*(const Rational& o) const { return Rational(Backend(v_ * o.v_)); }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) fail(ErrorCode::BadInput, "division by zero");
    return Rational(Backend(v_ / o.v_));
  }
  Rational operator-() const { return Rational(Backend(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool is_zero() const { return v_.is_zero(); }
  bool is_one() const { return v_ == 1; }

  Rational inverse() const {
    if (is_zero()) fail(ErrorCode::BadInput, "inverse of zero");
    return Rational(Backend(Backend(1) / v_));
  }

  std::string str() const { return v_.str(); }

 private:
  Backend v_;
};

/// Prime field F_p with runtime modulus.  Elements carry their modulus; a
/// modulus of 0 marks an integer literal not yet attached to a field (the
/// additive unit and small constants produced inside generic code).  Mixed
/// operations adopt the concrete modulus.
class Fp {
 public:
  Fp() : v_(0), p_(0) {}
  Fp(long long n) : v_(n), p_(0) {}
  Fp(long long n, long long p) : v_(n), p_(p) { reduce(); }

  static Fp of(long long n, long long p) { return Fp(n, p); }

  long long value() const { return v_; }
  long long modulus() const { return p_; }

  Fp operator+(const Fp& o) const { auto [a, b, p] = align(*this, o); return make(a + b, p); }
  Fp operator-(const Fp& o) const { auto [a, b, p] = align(*this, o); return make(a - b, p); }
  Fp operator*(const Fp& o) const { auto [a, b, p] = align(*this, o); return make(a * b, p); }
  Fp operator-() const { return p_ ? Fp(p_ - v_, p_) : Fp(-v_); }
  Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
  Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
  Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }

  Fp operator/(const Fp& o) const { return *this * o.inverse(); }

  Fp inverse() const {
    if (p_ == 0) {
      if (v_ == 1 || v_ == -1) return Fp(v_);
      fail(ErrorCode::BadInput, "inverse of detached integer literal in F_p");
    }
    if (v_ == 0) fail(ErrorCode::BadInput, "inverse of zero");
    // Extended Euclid.
    long long a = v_, b = p_, x0 = 1, x1 = 0;
    while (b) {
      long long q = a / b;
      long long t = a - q * b; a = b; b = t;
      t = x0 - q * x1; x0 = x1; x1 = t;
    }
    return Fp(x0, p_);
  }

  bool operator==(const Fp& o) const {
    auto [a, b, p] = align(*this, o);
    if (p) return a == b;
    return a == b;
  }
  bool operator!=(const Fp& o) const { return !(*this == o); }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return p_ ? v_ == 1 : v_ == 1; }

  std::string str() const { return std::to_string(v_); }

 private:
  static Fp make(long long n, long long p) { return p ? Fp(n, p) : Fp(n); }

  void reduce() {
    if (p_ > 0) {
      v_ %= p_;
      if (v_ < 0) v_ += p_;
    }
  }

  struct Aligned { long long a, b, p; };
  static Aligned align(const Fp& x, const Fp& y) {
    long long p = x.p_ ? x.p_ : y.p_;
    if (x.p_ && y.p_ && x.p_ != y.p_)
      fail(ErrorCode::BadInput, "mixing F_p elements with different moduli");
    auto norm = [p](long long v) {
      if (!p) return v;
      v %= p; if (v < 0) v += p; return v;
    };
    return {norm(x.v_), norm(y.v_), p};
  }

  long long v_;
  long long p_;
};

/// Runtime descriptor of the scalar field named by an input file.
struct FieldSpec {
  enum class Kind { Rationals, Prime };
  Kind kind = Kind::Rationals;
  long long p = 0;

  static FieldSpec rationals() { return FieldSpec{Kind::Rationals, 0}; }
  static FieldSpec prime(long long p) {
    if (p < 2) fail(ErrorCode::BadInput, "field modulus must be a prime >= 2");
    for (long long d = 2; d * d <= p; ++d)
      if (p % d == 0) fail(ErrorCode::BadInput, "field modulus " + std::to_string(p) + " is not prime");
    if (p > (1LL << 31)) fail(ErrorCode::BadInput, "field modulus too large");
    return FieldSpec{Kind::Prime, p};
  }
};

/// Uniform construction/printing hooks used by generic code.
template <class K>
struct FieldOps;

template <>
struct FieldOps<Rational> {
  static Rational from_long(const FieldSpec&, long long n) { return Rational(n); }
  static Rational parse(const FieldSpec&, const std::string& s) { return Rational::parse(s); }
  static Rational attach(const FieldSpec&, const Rational& x) { return x; }
  static std::string name(const FieldSpec&) { return "Q"; }
};

template <>
struct FieldOps<Fp> {
  static Fp from_long(const FieldSpec& f, long long n) { return Fp(n, f.p); }
  /// Detached integer literals pick up the concrete modulus here.
  static Fp attach(const FieldSpec& f, const Fp& x) { return x + Fp(0, f.p); }
  static Fp parse(const FieldSpec& f, const std::string& s) {
    try {
      return Fp(std::stoll(s), f.p);
    } catch (const std::exception&) {
      fail(ErrorCode::BadInput, "cannot parse F_p scalar '" + s + "'");
    }
  }
  static std::string name(const FieldSpec& f) { return "F_" + std::to_string(f.p); }
};

}  // namespace envlab
