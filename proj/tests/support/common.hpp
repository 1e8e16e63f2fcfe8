#pragma once

// Shared helpers for the test suites: scalar builders for each field and an
// error-code extractor, so suites can pin exact failure codes.

#include <catch2/catch_amalgamated.hpp>

#include "envlab/field.hpp"

#include <functional>

namespace testsupport {

constexpr long long kTestPrime = 101;

template <class K>
K sc(long long n);

template <>
inline envlab::Rational sc<envlab::Rational>(long long n) {
  return envlab::Rational(n);
}
template <>
inline envlab::Fp sc<envlab::Fp>(long long n) {
  return envlab::Fp(n, kTestPrime);
}

template <class K>
envlab::FieldSpec spec();

template <>
inline envlab::FieldSpec spec<envlab::Rational>() {
  return envlab::FieldSpec::rationals();
}
template <>
inline envlab::FieldSpec spec<envlab::Fp>() {
  return envlab::FieldSpec::prime(kTestPrime);
}

inline envlab::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const envlab::Error& e) {
    return e.code();
  }
  FAIL("expected an envlab::Error to be thrown");
  return envlab::ErrorCode::BadInput;
}

}  // namespace testsupport
