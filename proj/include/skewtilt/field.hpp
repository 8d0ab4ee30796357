#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace skewtilt {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

enum class ErrorCode {
  MalformedRelation,
  CapExceeded,
  NotAdmissibleAtCap,
  UnsupportedCharacteristic,
  NonSplitQuotient,
  PresentationDegreeOverflow,
  SearchBudgetExceeded,
  NotAutomorphism,
  NotHomomorphism,
  RelationsNotPreserved,
  BadCharacteristic,
  NotStable,
  NonCoherentStabilizers,
  NotEquivariant,
  HasProjectiveSummand,
  HasInjectiveSummand,
  NonSplitEndo,
  NotRepFinite,
  SimpleProjectiveInjective,
  OrbitNotClosed,
  KnittingStuck,
  NotTauEquivariant,
  SliceImagesInconsistent,
  WindowExhausted,
  SectionEndoNotHereditary,
  InvalidInput,
  Internal,
};

/// Typed error used across the library; the CLI maps codes to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::MalformedRelation: return "MalformedRelation";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotAdmissibleAtCap: return "NotAdmissibleAtCap";
    case ErrorCode::UnsupportedCharacteristic: return "UnsupportedCharacteristic";
    case ErrorCode::NonSplitQuotient: return "NonSplitQuotient";
    case ErrorCode::PresentationDegreeOverflow: return "PresentationDegreeOverflow";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::NotHomomorphism: return "NotHomomorphism";
    case ErrorCode::RelationsNotPreserved: return "RelationsNotPreserved";
    case ErrorCode::BadCharacteristic: return "BadCharacteristic";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::NonCoherentStabilizers: return "NonCoherentStabilizers";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::HasProjectiveSummand: return "HasProjectiveSummand";
    case ErrorCode::HasInjectiveSummand: return "HasInjectiveSummand";
    case ErrorCode::NonSplitEndo: return "NonSplitEndo";
    case ErrorCode::NotRepFinite: return "NotRepFinite";
    case ErrorCode::SimpleProjectiveInjective: return "SimpleProjectiveInjective";
    case ErrorCode::OrbitNotClosed: return "OrbitNotClosed";
    case ErrorCode::KnittingStuck: return "KnittingStuck";
    case ErrorCode::NotTauEquivariant: return "NotTauEquivariant";
    case ErrorCode::SliceImagesInconsistent: return "SliceImagesInconsistent";
    case ErrorCode::WindowExhausted: return "WindowExhausted";
    case ErrorCode::SectionEndoNotHereditary: return "SectionEndoNotHereditary";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// Base field: the rationals or a prime field GF(p).
struct FieldSpec {
  enum class Kind { Rationals, PrimeField };
  Kind kind = Kind::Rationals;
  std::int64_t p = 0;

  static FieldSpec rationals() { return FieldSpec{Kind::Rationals, 0}; }

  static FieldSpec gf(std::int64_t p) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidInput, "GF(p) modulus must be prime, got " + std::to_string(p));
    return FieldSpec{Kind::PrimeField, p};
  }

  static bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  bool is_rationals() const { return kind == Kind::Rationals; }
  std::int64_t characteristic() const { return is_rationals() ? 0 : p; }

  bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
  bool operator!=(const FieldSpec& o) const { return !(*this == o); }

  std::string to_string() const { return is_rationals() ? "Q" : ("GF(" + std::to_string(p) + ")"); }
};

/// Exact scalar in the given field. Rationals are arbitrary precision and
/// kept reduced with positive denominator; GF(p) values live in [0, p).
class Scalar {
 public:
  Scalar() : field_(FieldSpec::rationals()), q_(0), r_(0) {}

  static Scalar zero(const FieldSpec& f) { return Scalar(f, 0); }
  static Scalar one(const FieldSpec& f) { return Scalar(f, 1); }

  Scalar(const FieldSpec& f, std::int64_t n) : field_(f) {
    if (f.is_rationals()) {
      q_ = n;
      r_ = 0;
    } else {
      r_ = n % f.p;
      if (r_ < 0) r_ += f.p;
    }
  }

  static Scalar from_rational(const FieldSpec& f, const BigRat& v) {
    Scalar s;
    s.field_ = f;
    if (f.is_rationals()) {
      s.q_ = v;
    } else {
      BigInt num = boost::multiprecision::numerator(v);
      BigInt den = boost::multiprecision::denominator(v);
      s.r_ = reduce_mod(num, f.p);
      std::int64_t d = reduce_mod(den, f.p);
      if (d == 0) throw Error(ErrorCode::InvalidInput, "denominator vanishes in GF(p)");
      s.r_ = mulmod(s.r_, invmod(d, f.p), f.p);
    }
    return s;
  }

  const FieldSpec& field() const { return field_; }
  bool is_zero() const { return field_.is_rationals() ? q_.is_zero() : r_ == 0; }
  bool is_one() const { return field_.is_rationals() ? q_ == 1 : r_ == 1; }

  const BigRat& rational() const { return q_; }
  std::int64_t residue() const { return r_; }

  Scalar operator+(const Scalar& o) const {
    check(o);
    Scalar s(*this);
    if (field_.is_rationals()) s.q_ += o.q_;
    else s.r_ = (s.r_ + o.r_) % field_.p;
    return s;
  }
  Scalar operator-(const Scalar& o) const {
    check(o);
    Scalar s(*this);
    if (field_.is_rationals()) s.q_ -= o.q_;
    else s.r_ = ((s.r_ - o.r_) % field_.p + field_.p) % field_.p;
    return s;
  }
  Scalar operator-() const {
    Scalar s(*this);
    if (field_.is_rationals()) s.q_ = -s.q_;
    else if (s.r_ != 0) s.r_ = field_.p - s.r_;
    return s;
  }
  Scalar operator*(const Scalar& o) const {
    check(o);
    Scalar s(*this);
    if (field_.is_rationals()) s.q_ *= o.q_;
    else s.r_ = mulmod(s.r_, o.r_, field_.p);
    return s;
  }
  Scalar inverse() const {
    if (is_zero()) throw Error(ErrorCode::InvalidInput, "division by zero");
    Scalar s(*this);
    if (field_.is_rationals()) s.q_ = 1 / q_;
    else s.r_ = invmod(r_, field_.p);
    return s;
  }
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const {
    return field_ == o.field_ && (field_.is_rationals() ? q_ == o.q_ : r_ == o.r_);
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// n-th root in the field, if one exists (rationals: exact integer-root
  /// test on numerator and denominator; GF(p): brute force).
  bool nth_root(int n, Scalar& out) const {
    if (n <= 0) return false;
    if (field_.is_rationals()) {
      if (is_zero()) { out = zero(field_); return true; }
      BigInt num = boost::multiprecision::numerator(q_);
      BigInt den = boost::multiprecision::denominator(q_);
      bool neg = num < 0;
      if (neg && n % 2 == 0) return false;
      BigInt rn, rd;
      if (!int_nth_root(neg ? BigInt(-num) : num, n, rn) || !int_nth_root(den, n, rd)) return false;
      out = Scalar::from_rational(field_, BigRat(neg ? BigInt(-rn) : rn, rd));
      return true;
    }
    for (std::int64_t c = 0; c < field_.p; ++c) {
      std::int64_t v = 1;
      for (int i = 0; i < n; ++i) v = mulmod(v, c, field_.p);
      if (v == r_) { out = Scalar(field_, c); return true; }
    }
    return false;
  }

  std::string to_string() const {
    if (field_.is_rationals()) {
      BigInt num = boost::multiprecision::numerator(q_);
      BigInt den = boost::multiprecision::denominator(q_);
      if (den == 1) return num.str();
      return num.str() + "/" + den.str();
    }
    return std::to_string(r_) + " mod " + std::to_string(field_.p);
  }

 private:
  void check(const Scalar& o) const {
    if (field_ != o.field_) throw Error(ErrorCode::InvalidInput, "scalar field mismatch");
  }

  static std::int64_t reduce_mod(const BigInt& v, std::int64_t p) {
    BigInt m = v % p;
    if (m < 0) m += p;
    return static_cast<std::int64_t>(m);
  }
  static std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>((__int128)a * b % p);
  }
  static std::int64_t invmod(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::int64_t tmp = t - q * newt; t = newt; newt = tmp;
      tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1) throw Error(ErrorCode::InvalidInput, "not invertible mod p");
    return t < 0 ? t + p : t;
  }
  static bool int_nth_root(const BigInt& v, int n, BigInt& out) {
    if (v < 0) return false;
    if (v == 0 || v == 1) { out = v; return true; }
    BigInt lo = 1, hi = v;
    while (lo < hi) {
      BigInt mid = (lo + hi + 1) / 2;
      BigInt pw = 1;
      bool over = false;
      for (int i = 0; i < n; ++i) {
        pw *= mid;
        if (pw > v) { over = true; break; }
      }
      if (over) hi = mid - 1;
      else lo = mid;
    }
    BigInt pw = 1;
    for (int i = 0; i < n; ++i) pw *= lo;
    if (pw == v) { out = lo; return true; }
    return false;
  }

  FieldSpec field_;
  BigRat q_;
  std::int64_t r_;
};

/// Parses "n", "-n/d" or "k mod p" against the expected field.
inline Scalar parse_scalar(const FieldSpec& f, const std::string& text) {
  auto mod_pos = text.find(" mod ");
  if (mod_pos != std::string::npos) {
    if (f.is_rationals()) throw Error(ErrorCode::InvalidInput, "modular scalar in rational context: " + text);
    std::int64_t k = std::stoll(text.substr(0, mod_pos));
    std::int64_t p = std::stoll(text.substr(mod_pos + 5));
    if (p != f.p) throw Error(ErrorCode::InvalidInput, "scalar modulus " + std::to_string(p) + " does not match field " + f.to_string());
    return Scalar(f, k);
  }
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Scalar::from_rational(f, BigRat(BigInt(text)));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator: " + text);
    return Scalar::from_rational(f, BigRat(num, den));
  } catch (const std::exception& e) {
    throw Error(ErrorCode::InvalidInput, "cannot parse scalar '" + text + "'");
  }
}

}  // namespace skewtilt
