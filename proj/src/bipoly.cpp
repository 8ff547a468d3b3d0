#include "cpn/bipoly.hpp"

#include <charconv>

namespace cpn {

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return {buf, res.ptr};
}

}  // namespace

std::string format_coefficient(const ExactComplex& c) { return c.to_string(); }

std::string format_coefficient(const FloatComplex& c) {
  if (c.imag() == 0.0) return shortest(c.real());
  if (c.real() == 0.0) {
    if (c.imag() == 1.0) return "i";
    if (c.imag() == -1.0) return "-i";
    return shortest(c.imag()) + "*i";
  }
  const double mag = c.imag() < 0 ? -c.imag() : c.imag();
  return "(" + shortest(c.real()) + (c.imag() < 0 ? " - " : " + ") +
         (mag == 1.0 ? std::string("i") : shortest(mag) + "*i") + ")";
}

bool prints_negative(const ExactComplex& c) {
  if (c.is_real()) return sgn(c.re()) < 0;
  return sgn(c.re()) == 0 && sgn(c.im()) < 0;
}

bool prints_negative(const FloatComplex& c) {
  if (c.imag() == 0.0) return c.real() < 0.0;
  return c.real() == 0.0 && c.imag() < 0.0;
}

std::string format_monomial(const Monomial& m) {
  std::string out;
  auto append = [&out](const char* var, std::uint32_t e) {
    if (e == 0) return;
    if (!out.empty()) out += '*';
    out += var;
    if (e > 1) out += '^' + std::to_string(e);
  };
  append("xi", m.xi);
  append("xibar", m.xibar);
  return out.empty() ? "1" : out;
}

template class BiPoly<ExactComplex>;
template class BiPoly<FloatComplex>;

}  // namespace cpn
