#include "dbn/complex.hpp"

namespace dbn {

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  // Smith's algorithm avoids overflow in the denominator.
  if (boost::multiprecision::abs(o.re) >= boost::multiprecision::abs(o.im)) {
    Real q = o.im / o.re;
    Real d = o.re + o.im * q;
    Real r = (re + im * q) / d;
    Real i = (im - re * q) / d;
    re = std::move(r);
    im = std::move(i);
  } else {
    Real q = o.re / o.im;
    Real d = o.re * q + o.im;
    Real r = (re * q + im) / d;
    Real i = (im * q - re) / d;
    re = std::move(r);
    im = std::move(i);
  }
  return *this;
}

Complex from_std(const std::complex<double>& z) { return Complex(Real(z.real()), Real(z.imag())); }

Real abs(const Complex& z) {
  Real r;
  mpfr_hypot(r.backend().data(), z.re.backend().data(), z.im.backend().data(), MPFR_RNDN);
  return r;
}

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real arg(const Complex& z) {
  Real r;
  mpfr_atan2(r.backend().data(), z.im.backend().data(), z.re.backend().data(), MPFR_RNDN);
  return r;
}

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Complex exp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.re);
  Real s, c;
  mpfr_sin_cos(s.backend().data(), c.backend().data(), z.im.backend().data(), MPFR_RNDN);
  return {m * c, m * s};
}

Complex log(const Complex& z) { return {boost::multiprecision::log(abs(z)), arg(z)}; }

void sincos(const Complex& z, Complex& s, Complex& c) {
  Real sr, cr, sh, ch;
  mpfr_sin_cos(sr.backend().data(), cr.backend().data(), z.re.backend().data(), MPFR_RNDN);
  mpfr_sinh_cosh(sh.backend().data(), ch.backend().data(), z.im.backend().data(), MPFR_RNDN);
  // cos(x+iy) = cos x cosh y - i sin x sinh y ; sin(x+iy) = sin x cosh y + i cos x sinh y
  c = Complex(cr * ch, -(sr * sh));
  s = Complex(sr * ch, cr * sh);
}

Complex cos(const Complex& z) {
  Complex s, c;
  sincos(z, s, c);
  return c;
}

Complex sin(const Complex& z) {
  Complex s, c;
  sincos(z, s, c);
  return s;
}

Complex sqrt(const Complex& z) {
  if (z.re == 0 && z.im == 0) return {};
  Real r = abs(z);
  Real a = boost::multiprecision::sqrt((r + boost::multiprecision::abs(z.re)) / 2);
  if (z.re >= 0) return {a, z.im / (2 * a)};
  Real b = z.im >= 0 ? a : Real(-a);
  return {boost::multiprecision::abs(z.im) / (2 * a), b};
}

Complex pow(const Complex& z, const Complex& w) {
  if (z.re == 0 && z.im == 0) return {};
  return exp(w * log(z));
}

Complex mul_i(const Complex& z) { return {-z.im, z.re}; }

}  // namespace dbn
