#pragma once

#include <cmath>
#include <concepts>
#include <ostream>

namespace toroidal {

// a0 + a1 e1 + a2 e2 + a3 e3 with e1 e2 = e3, e2 e3 = e1, e3 e1 = e2.
template <std::floating_point Real = double>
struct Quaternion {
  Real a0 = 0, a1 = 0, a2 = 0, a3 = 0;

  Quaternion& operator+=(const Quaternion& o) {
    a0 += o.a0;
    a1 += o.a1;
    a2 += o.a2;
    a3 += o.a3;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    a0 -= o.a0;
    a1 -= o.a1;
    a2 -= o.a2;
    a3 -= o.a3;
    return *this;
  }
  Quaternion& operator*=(Real s) {
    a0 *= s;
    a1 *= s;
    a2 *= s;
    a3 *= s;
    return *this;
  }
  friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend Quaternion operator-(Quaternion a) { return a *= Real(-1); }
  friend Quaternion operator*(Quaternion a, Real s) { return a *= s; }
  friend Quaternion operator*(Real s, Quaternion a) { return a *= s; }
  friend Quaternion operator/(Quaternion a, Real s) { return a *= Real(1) / s; }
  friend Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.a0 * q.a0 - p.a1 * q.a1 - p.a2 * q.a2 - p.a3 * q.a3,
            p.a0 * q.a1 + p.a1 * q.a0 + p.a2 * q.a3 - p.a3 * q.a2,
            p.a0 * q.a2 - p.a1 * q.a3 + p.a2 * q.a0 + p.a3 * q.a1,
            p.a0 * q.a3 + p.a1 * q.a2 - p.a2 * q.a1 + p.a3 * q.a0};
  }
  friend bool operator==(const Quaternion&, const Quaternion&) = default;

  Real norm() const { return std::sqrt(a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3); }
  Quaternion conj() const { return {a0, -a1, -a2, -a3}; }

  static Quaternion e(int i) {
    Quaternion q;
    (i == 0 ? q.a0 : i == 1 ? q.a1 : i == 2 ? q.a2 : q.a3) = 1;
    return q;
  }
};

// Element of the reduced quaternions a0 + a1 e1 + a2 e2.
template <std::floating_point Real = double>
struct ReducedQuaternion {
  Real a0 = 0, a1 = 0, a2 = 0;

  operator Quaternion<Real>() const { return {a0, a1, a2, 0}; }

  ReducedQuaternion& operator+=(const ReducedQuaternion& o) {
    a0 += o.a0;
    a1 += o.a1;
    a2 += o.a2;
    return *this;
  }
  ReducedQuaternion& operator-=(const ReducedQuaternion& o) {
    a0 -= o.a0;
    a1 -= o.a1;
    a2 -= o.a2;
    return *this;
  }
  ReducedQuaternion& operator*=(Real s) {
    a0 *= s;
    a1 *= s;
    a2 *= s;
    return *this;
  }
  friend ReducedQuaternion operator+(ReducedQuaternion a, const ReducedQuaternion& b) { return a += b; }
  friend ReducedQuaternion operator-(ReducedQuaternion a, const ReducedQuaternion& b) { return a -= b; }
  friend ReducedQuaternion operator*(ReducedQuaternion a, Real s) { return a *= s; }
  friend ReducedQuaternion operator*(Real s, ReducedQuaternion a) { return a *= s; }
  friend bool operator==(const ReducedQuaternion&, const ReducedQuaternion&) = default;

  Real norm() const { return std::sqrt(a0 * a0 + a1 * a1 + a2 * a2); }
};

template <std::floating_point Real>
std::ostream& operator<<(std::ostream& out, const Quaternion<Real>& q) {
  return out << q.a0 << " + " << q.a1 << " e1 + " << q.a2 << " e2 + " << q.a3 << " e3";
}

template <std::floating_point Real>
std::ostream& operator<<(std::ostream& out, const ReducedQuaternion<Real>& q) {
  return out << q.a0 << " + " << q.a1 << " e1 + " << q.a2 << " e2";
}

template <std::floating_point Real>
Quaternion<Real> as_quaternion(Real x) {
  return {x, 0, 0, 0};
}
template <std::floating_point Real>
Quaternion<Real> as_quaternion(const ReducedQuaternion<Real>& x) {
  return x;
}
template <std::floating_point Real>
Quaternion<Real> as_quaternion(const Quaternion<Real>& x) {
  return x;
}

}  // namespace toroidal
