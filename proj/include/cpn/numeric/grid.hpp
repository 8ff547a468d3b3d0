#pragma once

#include <complex>
#include <cstddef>
#include <deque>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cpn/matrix.hpp"
#include "cpn/numeric/cmatrix.hpp"
#include "cpn/numeric/kernels.hpp"

namespace cpn {

using cd = std::complex<double>;

/// Default cap on n_re·n_im; overridden by the CPN_MAX_GRID environment variable.
inline constexpr std::size_t kDefaultGridCap = 1'000'000;

std::size_t grid_cap();

/// Rectangular grid of sample points in the finite plane. Points are ordered
/// row-major in (im, re): the real part varies fastest.
struct GridSpec {
  double re_min = -1.0, re_max = 1.0;
  double im_min = -1.0, im_max = 1.0;
  std::size_t n_re = 5, n_im = 5;
  /// Points dropped from the grid, matched within 1e-9.
  std::vector<cd> exclusions;

  /// "re0:re1:n,im0:im1:n"; throws InvalidArgument.
  static GridSpec parse(std::string_view text);

  /// Throws InvalidArgument on an empty range, a zero count or a grid above the cap.
  void validate() const;

  std::size_t size() const { return n_re * n_im; }
  std::vector<cd> points() const;
  std::string to_string() const;
};

/// Sample points with cached powers z^k.
class PointBatch {
 public:
  explicit PointBatch(std::vector<cd> points);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<cd>& points() const noexcept { return points_; }
  /// z^k for every point.
  const std::vector<cd>& power(std::size_t k);

 private:
  std::vector<cd> points_;
  std::deque<std::vector<cd>> powers_;
};

/// Values of a scalar over a batch; pole[i] marks |denominator| < tolerance,
/// where value[i] is NaN.
struct BatchValues {
  std::vector<cd> value;
  std::vector<bool> pole;
};

/// Evaluates polynomials, rational functions and matrices over one batch
/// using the active SIMD kernels. Denominator factors shared between entries
/// are evaluated once.
template <Coefficient C>
class BatchEvaluator {
 public:
  explicit BatchEvaluator(PointBatch& batch, double pole_tolerance = kPoleTolerance)
      : batch_(batch), pole_tol_(pole_tolerance) {}

  std::vector<cd> polynomial(const BiPoly<C>& p) {
    const auto& k = simd::active();
    std::vector<cd> out(batch_.size());
    for (const auto& [m, c] : p.terms()) {
      k.accumulate_term(CoeffTraits<C>::to_complex(c), batch_.power(m.xi).data(), batch_.power(m.xibar).data(),
                        out.data(), out.size());
    }
    return out;
  }

  BatchValues rational(const RatFn<C>& r) {
    const auto& k = simd::active();
    const std::size_t n = batch_.size();
    BatchValues v{polynomial(r.numerator()), std::vector<bool>(n, false)};
    if (r.is_polynomial()) return v;
    std::vector<cd> den(n, cd(1.0));
    for (const auto& f : r.denominator_factors()) {
      const auto& fv = factor(f.poly);
      for (unsigned e = 0; e < f.exp; ++e) k.cmul(den.data(), fv.data(), den.data(), n);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(den[i]) < pole_tol_) {
        v.pole[i] = true;
        v.value[i] = cd(std::nan(""), std::nan(""));
      } else {
        v.value[i] /= den[i];
      }
    }
    return v;
  }

  /// One CMatrix per point; `pole` is the union over entries.
  std::vector<CMatrix> matrix(const MatrixRF<C>& m, std::vector<bool>& pole) {
    const std::size_t n = batch_.size();
    const std::size_t d = m.dim();
    std::vector<CMatrix> out(n, CMatrix(d));
    if (pole.size() != n) pole.assign(n, false);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        const BatchValues v = rational(m(r, c));
        for (std::size_t i = 0; i < n; ++i) {
          out[i](r, c) = v.value[i];
          if (v.pole[i]) pole[i] = true;
        }
      }
    }
    return out;
  }

 private:
  // The cache holds a reference so a key address is never reused.
  const std::vector<cd>& factor(const std::shared_ptr<const BiPoly<C>>& p) {
    auto it = cache_.find(p.get());
    if (it == cache_.end()) it = cache_.emplace(p.get(), std::make_pair(p, polynomial(*p))).first;
    return it->second.second;
  }

  PointBatch& batch_;
  double pole_tol_;
  std::unordered_map<const BiPoly<C>*, std::pair<std::shared_ptr<const BiPoly<C>>, std::vector<cd>>> cache_;
};

}  // namespace cpn
