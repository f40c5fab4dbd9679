#pragma once

#include <ostream>
#include <string>
#include <utility>

#include "algtel/poly.hpp"

namespace algtel {

// Element of the fraction field of Poly<F>. Always kept canonical:
// gcd(num, den) = 1 and den monic, so equality is structural.
template <Field F>
class Frac {
 public:
  using poly_type = Poly<F>;

  Frac() : den_(F(1)) {}
  Frac(long c) : num_(F(c)), den_(F(1)) {}  // NOLINT(google-explicit-constructor)
  Frac(const F& c) : num_(c), den_(F(1)) {}  // NOLINT(google-explicit-constructor)
  Frac(Poly<F> p) : num_(std::move(p)), den_(F(1)) {}  // NOLINT(google-explicit-constructor)
  Frac(Poly<F> num, Poly<F> den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static Frac x() { return Frac(Poly<F>::x()); }

  const Poly<F>& num() const { return num_; }
  const Poly<F>& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  // deg num - deg den; zero maps to a large negative sentinel.
  int degree_at_infinity() const {
    if (is_zero()) return kZeroInfDegree;
    return num_.degree() - den_.degree();
  }
  bool is_proper() const { return is_zero() || num_.degree() < den_.degree(); }
  static constexpr int kZeroInfDegree = -(1 << 28);

  Frac inverse() const {
    if (is_zero()) throw DomainError("Frac: inverse of zero");
    return Frac(den_, num_);
  }

  Frac derivative() const {
    if (is_polynomial()) return Frac(num_.derivative());
    Poly<F> n = num_.derivative() * den_ - num_ * den_.derivative();
    return Frac(std::move(n), den_ * den_);
  }

  F operator()(const F& at) const {
    F d = den_(at);
    if (d.is_zero()) throw DomainError("Frac: evaluation at a pole");
    return num_(at) / d;
  }

  Frac operator-() const {
    Frac r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend Frac operator+(const Frac& a, const Frac& b) { return add(a, b, false); }
  friend Frac operator-(const Frac& a, const Frac& b) { return add(a, b, true); }
  friend Frac operator*(const Frac& a, const Frac& b) {
    if (a.is_zero() || b.is_zero()) return Frac();
    if (a.is_polynomial() && b.is_polynomial()) return Frac(a.num_ * b.num_);
    Poly<F> g1 = gcd(a.num_, b.den_);
    Poly<F> g2 = gcd(b.num_, a.den_);
    Frac r;
    r.num_ = (g1.is_one() ? a.num_ : a.num_ / g1) * (g2.is_one() ? b.num_ : b.num_ / g2);
    r.den_ = (g2.is_one() ? a.den_ : a.den_ / g2) * (g1.is_one() ? b.den_ : b.den_ / g1);
    r.fix_den_lc();
    return r;
  }
  friend Frac operator/(const Frac& a, const Frac& b) { return a * b.inverse(); }

  Frac& operator+=(const Frac& o) { return *this = *this + o; }
  Frac& operator-=(const Frac& o) { return *this = *this - o; }
  Frac& operator*=(const Frac& o) { return *this = *this * o; }
  Frac& operator/=(const Frac& o) { return *this = *this / o; }

  friend bool operator==(const Frac& a, const Frac& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  friend std::ostream& operator<<(std::ostream& os, const Frac& r) {
    if (r.is_polynomial()) return os << r.num_;
    return os << "(" << r.num_ << ")/(" << r.den_ << ")";
  }

 private:
  static Frac add(const Frac& a, const Frac& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    if (a.is_polynomial() && b.is_polynomial()) {
      return Frac(subtract ? a.num_ - b.num_ : a.num_ + b.num_);
    }
    if (a.den_ == b.den_) {
      return Frac(subtract ? a.num_ - b.num_ : a.num_ + b.num_, a.den_);
    }
    Poly<F> g = gcd(a.den_, b.den_);
    Frac r;
    if (g.is_one()) {
      Poly<F> t = b.num_ * a.den_;
      r.num_ = a.num_ * b.den_;
      if (subtract) r.num_ -= t; else r.num_ += t;
      r.den_ = a.den_ * b.den_;
      return r;  // already coprime
    }
    Poly<F> bd = b.den_ / g;
    Poly<F> ad = a.den_ / g;
    Poly<F> t = b.num_ * ad;
    r.num_ = a.num_ * bd;
    if (subtract) r.num_ -= t; else r.num_ += t;
    r.den_ = ad * b.den_;
    if (r.num_.is_zero()) return Frac();
    Poly<F> g2 = gcd(r.num_, g);
    if (!g2.is_one()) {
      r.num_ = exact_div(r.num_, g2);
      r.den_ = exact_div(r.den_, g2);
    }
    return r;
  }

  void fix_den_lc() {
    if (!(den_.lc() == F(1))) {
      F inv = den_.lc().inverse();
      num_ *= inv;
      den_ *= inv;
    }
  }

  void normalize() {
    if (den_.is_zero()) throw DomainError("Frac: zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<F>(F(1));
      return;
    }
    Poly<F> g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    fix_den_lc();
  }

  Poly<F> num_;
  Poly<F> den_;
};

}  // namespace algtel
