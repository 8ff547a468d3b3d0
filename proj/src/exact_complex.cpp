#include "cpn/exact_complex.hpp"

#include <sstream>

#include "cpn/errors.hpp"

namespace cpn {

namespace {

std::string rational_text(const mpq_class& q) { return q.get_str(); }

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t())) + 0x9e3779b97f4a7c15ULL;
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t k = 0; k < limbs; ++k) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(k))) +
         0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace

ExactComplex::ExactComplex(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

ExactComplex::ExactComplex(long num, long den) {
  if (den == 0) throw ZeroDenominator("rational literal with zero denominator");
  re_ = mpq_class(num, den);
  re_.canonicalize();
}

ExactComplex ExactComplex::inverse() const {
  if (is_zero()) throw ZeroDenominator("inverse of exact zero");
  const mpq_class n = norm2();
  return {re_ / n, -im_ / n};
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class m = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(m);
  return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& o) {
  if (o.is_zero()) throw ZeroDenominator("division by exact zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string ExactComplex::to_string() const {
  if (sgn(im_) == 0) return rational_text(re_);
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = rational_text(im_) + "*i";
  }
  if (sgn(re_) == 0) return imag;
  std::ostringstream os;
  os << '(' << rational_text(re_) << (sgn(im_) < 0 ? " - " : " + ");
  const mpq_class mag = abs(im_);
  if (mag == 1) {
    os << 'i';
  } else {
    os << rational_text(mag) << "*i";
  }
  os << ')';
  return os.str();
}

std::size_t ExactComplex::hash() const {
  std::size_t h = hash_mpz(re_.get_num());
  h = h * 31 + hash_mpz(re_.get_den());
  h = h * 31 + hash_mpz(im_.get_num());
  h = h * 31 + hash_mpz(im_.get_den());
  return h;
}

std::ostream& operator<<(std::ostream& os, const ExactComplex& z) { return os << z.to_string(); }

}  // namespace cpn
