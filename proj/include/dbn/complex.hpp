#pragma once

#include "dbn/precision.hpp"

#include <complex>

namespace dbn {

/// Complex number over Real. Only the operations the library needs.
struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(const Real& r) : re(r), im(0) {}  // NOLINT(implicit)
  Complex(const Real& r, const Real& i) : re(r), im(i) {}
  Complex(double r, double i) : re(r), im(i) {}

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& s) { re *= s; im *= s; return *this; }
  Complex& operator/=(const Real& s) { re /= s; im /= s; return *this; }

  std::complex<double> to_std() const { return {to_double(re), to_double(im)}; }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator*(Complex a, const Real& s) { return a *= s; }
inline Complex operator*(const Real& s, Complex a) { return a *= s; }
inline Complex operator/(Complex a, const Real& s) { return a /= s; }
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

Complex from_std(const std::complex<double>& z);

Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real arg(const Complex& z);
Complex conj(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex cos(const Complex& z);
Complex sin(const Complex& z);
/// cos and sin of the same argument in one pass.
void sincos(const Complex& z, Complex& s, Complex& c);
Complex sqrt(const Complex& z);
/// Principal branch z^w.
Complex pow(const Complex& z, const Complex& w);
Complex mul_i(const Complex& z);  // i*z

}  // namespace dbn
