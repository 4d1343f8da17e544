// Exact arithmetic in Q(sqrt(delta)). Rational values are canonicalized to
// delta = 1 so numbers from different supports mix only when one side is
// rational or the radicands agree.

#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pst/numeric.hpp"
#include "pst/poly.hpp"

namespace pst {

class QuadNum {
 public:
  QuadNum() : rat_(0), irr_(0), delta_(1) {}
  QuadNum(Rat r) : rat_(std::move(r)), irr_(0), delta_(1) { rat_.canonicalize(); }
  QuadNum(Int i) : rat_(std::move(i)), irr_(0), delta_(1) {}

  /// rat + irr * sqrt(delta); delta must be a positive square-free integer
  /// (square-freeness is the producer's responsibility).
  QuadNum(Rat rat, Rat irr, Int delta)
      : rat_(std::move(rat)), irr_(std::move(irr)), delta_(std::move(delta)) {
    rat_.canonicalize();
    irr_.canonicalize();
    if (sign_of(delta_) <= 0) throw std::invalid_argument("QuadNum: radicand must be positive");
    canonicalize();
  }

  static QuadNum sqrt_of(Int delta) { return QuadNum(Rat(0), Rat(1), std::move(delta)); }

  const Rat& rational_part() const { return rat_; }
  const Rat& irrational_part() const { return irr_; }
  const Int& radicand() const { return delta_; }

  bool is_zero() const { return sign_of(rat_) == 0 && sign_of(irr_) == 0; }
  bool is_rational() const { return sign_of(irr_) == 0; }

  friend bool operator==(const QuadNum& a, const QuadNum& b) {
    return a.rat_ == b.rat_ && a.irr_ == b.irr_ && a.delta_ == b.delta_;
  }
  friend bool operator!=(const QuadNum& a, const QuadNum& b) { return !(a == b); }

  friend QuadNum operator+(const QuadNum& a, const QuadNum& b) {
    Int d = merged_delta(a, b);
    return QuadNum(a.rat_ + b.rat_, a.irr_ + b.irr_, std::move(d));
  }
  friend QuadNum operator-(const QuadNum& a, const QuadNum& b) {
    Int d = merged_delta(a, b);
    return QuadNum(a.rat_ - b.rat_, a.irr_ - b.irr_, std::move(d));
  }
  QuadNum operator-() const { return QuadNum(-rat_, -irr_, delta_); }
  friend QuadNum operator*(const QuadNum& a, const QuadNum& b) {
    Int d = merged_delta(a, b);
    Rat rat = a.rat_ * b.rat_ + a.irr_ * b.irr_ * Rat(d);
    Rat irr = a.rat_ * b.irr_ + a.irr_ * b.rat_;
    return QuadNum(std::move(rat), std::move(irr), std::move(d));
  }
  QuadNum conj() const { return QuadNum(rat_, -irr_, delta_); }

  /// Field norm rat^2 - irr^2 * delta (rational, zero iff the value is zero).
  Rat norm() const { return rat_ * rat_ - irr_ * irr_ * Rat(delta_); }

  friend QuadNum operator/(const QuadNum& a, const QuadNum& b) {
    if (b.is_zero()) throw std::invalid_argument("QuadNum: division by zero");
    Int d = merged_delta(a, b);
    QuadNum bc = b.conj();
    QuadNum num = a * bc;
    Rat n = b.norm();
    return QuadNum(num.rat_ / n, num.irr_ / n, std::move(d));
  }

  /// Exact sign via rational sign analysis of rat^2 - irr^2 * delta.
  int sign() const {
    int sr = sign_of(rat_), si = sign_of(irr_);
    if (si == 0) return sr;
    if (sr == 0) return si;
    if (sr == si) return sr;
    int c = cmp(rat_ * rat_, irr_ * irr_ * Rat(delta_));
    if (c == 0) throw std::logic_error("QuadNum: rational equals irrational magnitude; radicand not square-free?");
    return c > 0 ? sr : si;
  }

  friend bool operator<(const QuadNum& a, const QuadNum& b) { return (a - b).sign() < 0; }
  friend bool operator>(const QuadNum& a, const QuadNum& b) { return (a - b).sign() > 0; }

  double to_double() const {
    return rat_.get_d() + irr_.get_d() * std::sqrt(delta_.get_d());
  }

  std::string to_string() const {
    if (is_rational()) return rat_.get_str();
    std::ostringstream os;
    if (sign_of(rat_) != 0) os << rat_.get_str() << (sign_of(irr_) < 0 ? " - " : " + ");
    else if (sign_of(irr_) < 0) os << "-";
    Rat mag = abs(irr_);
    if (mag != 1) os << mag.get_str() << "*";
    os << "sqrt(" << delta_.get_str() << ")";
    return os.str();
  }

 private:
  void canonicalize() {
    if (delta_ == 1) {
      rat_ += irr_;
      irr_ = 0;
    } else if (sign_of(irr_) == 0) {
      delta_ = 1;
    }
  }
  static Int merged_delta(const QuadNum& a, const QuadNum& b) {
    if (a.delta_ == b.delta_) return a.delta_;
    if (a.is_rational()) return b.delta_;
    if (b.is_rational()) return a.delta_;
    throw std::invalid_argument("QuadNum: radicand mismatch (" + a.delta_.get_str() + " vs " +
                                b.delta_.get_str() + ")");
  }

  Rat rat_, irr_;
  Int delta_;
};

/// Vector over Q(sqrt(delta)); entries share one ambient radicand, with
/// rational entries canonicalized to delta = 1.
using QuadVector = std::vector<QuadNum>;

/// Exact Horner evaluation of an integer polynomial at a point of Q(sqrt(delta)).
inline QuadNum eval_quad(const IntPoly& f, const QuadNum& v) {
  QuadNum acc;
  for (int i = f.degree(); i >= 0; --i) {
    acc = acc * v + QuadNum(f.coeff(static_cast<std::size_t>(i)));
  }
  return acc;
}

}  // namespace pst
