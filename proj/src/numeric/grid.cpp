#include "cpn/numeric/grid.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

namespace cpn {

namespace {

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw InvalidArgument("grid: cannot read " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view s) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw InvalidArgument("grid: point count must be a positive integer, got '" + std::string(s) + "'");
  }
  return v;
}

void parse_axis(std::string_view s, double& lo, double& hi, std::size_t& n) {
  const auto c1 = s.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : s.find(':', c1 + 1);
  if (c2 == std::string_view::npos || s.find(':', c2 + 1) != std::string_view::npos) {
    throw InvalidArgument("grid: axis must be lo:hi:n, got '" + std::string(s) + "'");
  }
  lo = parse_double(s.substr(0, c1), "lower bound");
  hi = parse_double(s.substr(c1 + 1, c2 - c1 - 1), "upper bound");
  n = parse_count(s.substr(c2 + 1));
}

double linspace(double lo, double hi, std::size_t n, std::size_t k) {
  if (n == 1) return lo;
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
}

}  // namespace

std::size_t grid_cap() {
  if (const char* env = std::getenv("CPN_MAX_GRID")) {
    std::size_t v = 0;
    const std::string_view s(env);
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && p == s.data() + s.size() && v > 0) return v;
  }
  return kDefaultGridCap;
}

GridSpec GridSpec::parse(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw InvalidArgument("grid: expected 're0:re1:n,im0:im1:n'");
  GridSpec g;
  parse_axis(text.substr(0, comma), g.re_min, g.re_max, g.n_re);
  parse_axis(text.substr(comma + 1), g.im_min, g.im_max, g.n_im);
  g.validate();
  return g;
}

void GridSpec::validate() const {
  if (n_re == 0 || n_im == 0) throw InvalidArgument("grid: point counts must be positive");
  if (!(re_min <= re_max) || !(im_min <= im_max)) throw InvalidArgument("grid: empty range");
  if ((n_re > 1 && re_min == re_max) || (n_im > 1 && im_min == im_max)) {
    throw InvalidArgument("grid: several points on a zero-width range");
  }
  const std::size_t cap = grid_cap();
  if (n_re > cap || n_im > cap || n_re * n_im > cap) {
    throw InvalidArgument("grid: " + std::to_string(n_re) + "x" + std::to_string(n_im) + " exceeds the cap of " +
                          std::to_string(cap) + " points");
  }
}

std::vector<cd> GridSpec::points() const {
  validate();
  std::vector<cd> pts;
  pts.reserve(size());
  for (std::size_t j = 0; j < n_im; ++j) {
    const double y = linspace(im_min, im_max, n_im, j);
    for (std::size_t i = 0; i < n_re; ++i) {
      const cd z(linspace(re_min, re_max, n_re, i), y);
      bool skip = false;
      for (const auto& e : exclusions) skip = skip || std::abs(z - e) < 1e-9;
      if (!skip) pts.push_back(z);
    }
  }
  return pts;
}

std::string GridSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << re_min << ':' << re_max << ':' << n_re << ',' << im_min << ':' << im_max << ':' << n_im;
  return os.str();
}

PointBatch::PointBatch(std::vector<cd> points) : points_(std::move(points)) {
  powers_.emplace_back(points_.size(), cd(1.0));
}

const std::vector<cd>& PointBatch::power(std::size_t k) {
  while (powers_.size() <= k) {
    std::vector<cd> next(points_.size());
    simd::active().cmul(powers_.back().data(), points_.data(), next.data(), points_.size());
    powers_.push_back(std::move(next));
  }
  return powers_[k];
}

}  // namespace cpn
