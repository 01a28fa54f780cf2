#ifndef PHI4_EXT_SCALAR_HPP
#define PHI4_EXT_SCALAR_HPP

#include <cmath>
#include <limits>

namespace phi4 {

// Signed real stored as sign and natural log of the magnitude, so that
// n!-sized values survive well past the double range.
class ExtScalar {
 public:
  static constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  constexpr ExtScalar() = default;

  static ExtScalar from_double(double x);
  static ExtScalar from_log(int sign, double logmag);
  static ExtScalar one() { return from_log(1, 0.0); }

  int sign() const { return sign_; }
  double logmag() const { return logmag_; }
  bool is_zero() const { return sign_ == 0; }

  // Overflows to +-inf and underflows to 0 outside the double range.
  double to_double() const;

  ExtScalar abs() const;
  ExtScalar operator-() const;
  ExtScalar pow(int k) const;

  ExtScalar& operator*=(const ExtScalar& o);
  ExtScalar& operator/=(const ExtScalar& o);
  ExtScalar& operator+=(const ExtScalar& o);
  ExtScalar& operator-=(const ExtScalar& o);

  friend bool operator==(const ExtScalar& a, const ExtScalar& b) {
    return a.sign_ == b.sign_ && (a.sign_ == 0 || a.logmag_ == b.logmag_);
  }

 private:
  int sign_ = 0;
  double logmag_ = kNegInf;
};

ExtScalar operator*(ExtScalar a, const ExtScalar& b);
ExtScalar operator/(ExtScalar a, const ExtScalar& b);
ExtScalar operator+(ExtScalar a, const ExtScalar& b);
ExtScalar operator-(ExtScalar a, const ExtScalar& b);
ExtScalar operator*(ExtScalar a, double b);

// a / b as a double; throws on b == 0.
double ratio(const ExtScalar& a, const ExtScalar& b);

// -1, 0, +1 comparing |a| with |b|.
int compare_abs(const ExtScalar& a, const ExtScalar& b);

// Sum of many terms.  Positive and negative contributions are accumulated
// separately with a running log-sum-exp and combined once at the end.
class LogSum {
 public:
  void add(const ExtScalar& x);
  ExtScalar value() const;

 private:
  struct Part {
    double max = ExtScalar::kNegInf;
    double scaled = 0.0;
    void add(double l);
    double log() const;
  };
  Part pos_;
  Part neg_;
};

}  // namespace phi4

#endif
