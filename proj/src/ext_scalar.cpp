#include "phi4/ext_scalar.hpp"

#include <algorithm>

#include "phi4/errors.hpp"

namespace phi4 {

namespace {

// log(exp(a) + exp(b)) with a >= b.
double log_add(double a, double b) {
  if (b == ExtScalar::kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

// log(exp(a) - exp(b)) with a > b.
double log_sub(double a, double b) {
  if (b == ExtScalar::kNegInf) return a;
  return a + std::log(-std::expm1(b - a));
}

}  // namespace

ExtScalar ExtScalar::from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("ExtScalar from non-finite value");
  ExtScalar r;
  if (x == 0.0) return r;
  r.sign_ = x > 0 ? 1 : -1;
  r.logmag_ = std::log(std::fabs(x));
  return r;
}

ExtScalar ExtScalar::from_log(int sign, double logmag) {
  ExtScalar r;
  if (sign == 0 || logmag == kNegInf) return r;
  if (std::isnan(logmag) || logmag == std::numeric_limits<double>::infinity())
    throw DomainError("ExtScalar with invalid log-magnitude");
  r.sign_ = sign > 0 ? 1 : -1;
  r.logmag_ = logmag;
  return r;
}

double ExtScalar::to_double() const {
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp(logmag_);
}

ExtScalar ExtScalar::abs() const {
  ExtScalar r = *this;
  if (r.sign_ != 0) r.sign_ = 1;
  return r;
}

ExtScalar ExtScalar::operator-() const {
  ExtScalar r = *this;
  r.sign_ = -r.sign_;
  return r;
}

ExtScalar ExtScalar::pow(int k) const {
  if (k == 0) return one();
  if (sign_ == 0) {
    if (k < 0) throw DegenerateInputError(0, "zero raised to a negative power");
    return {};
  }
  ExtScalar r;
  r.sign_ = (k % 2 == 0) ? 1 : sign_;
  r.logmag_ = k * logmag_;
  return r;
}

ExtScalar& ExtScalar::operator*=(const ExtScalar& o) {
  if (sign_ == 0 || o.sign_ == 0) {
    *this = ExtScalar{};
    return *this;
  }
  sign_ *= o.sign_;
  logmag_ += o.logmag_;
  return *this;
}

ExtScalar& ExtScalar::operator/=(const ExtScalar& o) {
  if (o.sign_ == 0) throw DegenerateInputError(0, "ExtScalar division by zero");
  if (sign_ == 0) return *this;
  sign_ *= o.sign_;
  logmag_ -= o.logmag_;
  return *this;
}

ExtScalar& ExtScalar::operator+=(const ExtScalar& o) {
  if (o.sign_ == 0) return *this;
  if (sign_ == 0) {
    *this = o;
    return *this;
  }
  const double hi = std::max(logmag_, o.logmag_);
  const double lo = std::min(logmag_, o.logmag_);
  if (sign_ == o.sign_) {
    logmag_ = log_add(hi, lo);
    return *this;
  }
  if (logmag_ == o.logmag_) {
    *this = ExtScalar{};
    return *this;
  }
  if (o.logmag_ > logmag_) sign_ = o.sign_;
  logmag_ = log_sub(hi, lo);
  return *this;
}

ExtScalar& ExtScalar::operator-=(const ExtScalar& o) { return *this += -o; }

ExtScalar operator*(ExtScalar a, const ExtScalar& b) { return a *= b; }
ExtScalar operator/(ExtScalar a, const ExtScalar& b) { return a /= b; }
ExtScalar operator+(ExtScalar a, const ExtScalar& b) { return a += b; }
ExtScalar operator-(ExtScalar a, const ExtScalar& b) { return a -= b; }
ExtScalar operator*(ExtScalar a, double b) {
  return a *= ExtScalar::from_double(b);
}

double ratio(const ExtScalar& a, const ExtScalar& b) {
  return (a / b).to_double();
}

int compare_abs(const ExtScalar& a, const ExtScalar& b) {
  if (a.logmag() < b.logmag()) return -1;
  if (a.logmag() > b.logmag()) return 1;
  return 0;
}

void LogSum::Part::add(double l) {
  if (l == ExtScalar::kNegInf) return;
  if (l > max) {
    scaled = scaled * std::exp(max - l) + 1.0;
    max = l;
  } else {
    scaled += std::exp(l - max);
  }
}

double LogSum::Part::log() const {
  if (scaled == 0.0) return ExtScalar::kNegInf;
  return max + std::log(scaled);
}

void LogSum::add(const ExtScalar& x) {
  if (x.sign() > 0)
    pos_.add(x.logmag());
  else if (x.sign() < 0)
    neg_.add(x.logmag());
}

ExtScalar LogSum::value() const {
  return ExtScalar::from_log(1, pos_.log()) +
         ExtScalar::from_log(-1, neg_.log());
}

}  // namespace phi4
