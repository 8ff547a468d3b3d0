#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "cpn/numeric/grid.hpp"
#include "cpn/identities.hpp"
#include "cpn/spectral.hpp"

namespace cpn {

/// f_j = √binomial(N−1, j)·ξ^j, so that f†f = (1 + ξξ̄)^{N−1}.
HolomorphicVector<FloatComplex> veronese(std::size_t n);

/// Spectral parameters used when none are requested.
inline const std::vector<cd> kDefaultLambdas{cd(0.0), cd(2.0), cd(3.0), cd(0.5), cd(-1.0 / 3.0)};

/// Max of |∂f − D_h f| and |∂̄f − D̄_h f| at `point`, where
///   D_h = ½(δx − iδy), D̄_h = ½(δx + iδy),
///   δx f = (f(ξ+h) − f(ξ−h))/(2h), δy f = (f(ξ+ih) − f(ξ−ih))/(2h).
/// Throws NearPole.
template <Coefficient C>
double finite_difference_check(const RatFn<C>& f, cd point, double h) {
  const RatFn<C> d = f.d_xi();
  const RatFn<C> db = f.d_xibar();
  const cd dx = (f.evaluate(point + h) - f.evaluate(point - h)) / (2.0 * h);
  const cd dy = (f.evaluate(point + cd(0.0, h)) - f.evaluate(point - cd(0.0, h))) / (2.0 * h);
  const cd i(0.0, 1.0);
  const cd fd = 0.5 * (dx - i * dy);
  const cd fdb = 0.5 * (dx + i * dy);
  return std::max(std::abs(d.evaluate(point) - fd), std::abs(db.evaluate(point) - fdb));
}

struct GridResidual {
  std::string name;
  double max_residual = 0.0;
  bool passed = true;
};

struct GridOptions {
  double tolerance = 1e-10;
  std::vector<cd> lambdas = kDefaultLambdas;
  bool allow_last_surface = false;
  std::uint64_t seed = kDefaultSeed;
};

struct GridReport {
  double tolerance = 0.0;
  /// Evaluated points; poles are listed separately and not counted.
  std::size_t points = 0;
  /// Points dropped because some evaluated object has a pole there.
  std::vector<cd> poles;
  std::vector<GridResidual> residuals;

  bool all_passed() const {
    for (const auto& r : residuals) {
      if (!r.passed) return false;
    }
    return true;
  }
  const GridResidual* find(const std::string& name) const {
    for (const auto& r : residuals) {
      if (r.name == name) return &r;
    }
    return nullptr;
  }
};

namespace detail {

/// Running maxima keyed by residual name, in first-seen order.
class ResidualTable {
 public:
  void note(const std::string& name, double value) {
    auto [it, fresh] = index_.try_emplace(name, rows_.size());
    if (fresh) rows_.push_back({name, 0.0, true});
    auto& row = rows_[it->second];
    if (value != value) {
      row.max_residual = value;
    } else if (row.max_residual == row.max_residual) {
      row.max_residual = std::max(row.max_residual, value);
    }
  }
  std::vector<GridResidual> finish(double tol) {
    for (auto& r : rows_) r.passed = r.max_residual == r.max_residual && r.max_residual < tol;
    return rows_;
  }

 private:
  std::vector<GridResidual> rows_;
  std::map<std::string, std::size_t> index_;
};

inline double nrm(const CMatrix& m) { return m.max_norm(); }

/// ‖F₁F₂…‖ / max(1, ‖F₁‖‖F₂‖…): products of large factors amplify roundoff
/// in each factor, so their residual is measured relative to the factor sizes.
inline double product_residual(std::initializer_list<const CMatrix*> factors) {
  CMatrix prod;
  double scale = 1.0;
  bool first = true;
  for (const CMatrix* f : factors) {
    prod = first ? *f : prod * *f;
    first = false;
    scale *= nrm(*f);
  }
  return nrm(prod) / std::max(1.0, scale);
}

/// Pointwise jet values of one projector.
struct JetValues {
  CMatrix p, d, db, dd, ddb, dbdb;
};

}  // namespace detail

/// Evaluates the tower on the grid and records, for each named identity, the
/// largest residual max-norm over all points, members, surfaces and spectral
/// parameters. Derivatives come from the symbolic jets; everything after
/// evaluation is plain complex arithmetic.
template <Coefficient C>
GridReport grid_residual_report(const ProjectorTower<C>& t, const GridSpec& grid, const GridOptions& opt = {}) {
  using detail::nrm;
  const std::size_t n = t.dim();
  if (t.size() != n) throw InvalidArgument("grid report needs a complete tower");
  PointBatch batch(grid.points());
  BatchEvaluator<C> ev(batch);
  const std::size_t np = batch.size();

  std::vector<bool> pole(np, false);
  std::vector<std::vector<detail::JetValues>> jets(n, std::vector<detail::JetValues>(np));
  for (std::size_t k = 0; k < n; ++k) {
    const Jet<C> j = Jet<C>::of(t[k].matrix());
    const MatrixRF<C>* src[] = {&j.p, &j.d, &j.db, &j.dd, &j.ddb, &j.dbdb};
    CMatrix detail::JetValues::*dst[] = {&detail::JetValues::p,   &detail::JetValues::d,
                                          &detail::JetValues::db,  &detail::JetValues::dd,
                                          &detail::JetValues::ddb, &detail::JetValues::dbdb};
    for (std::size_t s = 0; s < 6; ++s) {
      const auto vals = ev.matrix(*src[s], pole);
      for (std::size_t i = 0; i < np; ++i) jets[k][i].*dst[s] = vals[i];
    }
  }

  const std::size_t top_surface = opt.allow_last_surface ? n - 1 : n - 2;
  std::vector<MetricData<C>> metrics;
  std::vector<std::vector<cd>> gamma1(top_surface + 1), gamma2(top_surface + 1);
  for (std::size_t k = 0; k <= top_surface; ++k) {
    metrics.push_back(metric(t, k, opt.allow_last_surface));
    const BatchValues g1 = ev.rational(metrics.back().gamma111);
    const BatchValues g2 = ev.rational(metrics.back().gamma222);
    for (std::size_t i = 0; i < np; ++i) pole[i] = pole[i] || g1.pole[i] || g2.pole[i];
    gamma1[k] = g1.value;
    gamma2[k] = g2.value;
  }

  std::vector<SpectralParam<FloatComplex>> lambdas;
  for (const auto& l : opt.lambdas) lambdas.emplace_back(l);

  RandomSource rng(opt.seed);
  std::vector<CMatrix> samples;
  for (int s = 0; s < kRandomSamples; ++s) {
    CMatrix a(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) a(r, c) = rng.gaussian_integer<FloatComplex>(3);
    }
    samples.push_back(a);
  }

  GridReport report;
  report.tolerance = opt.tolerance;
  detail::ResidualTable tab;
  const CMatrix id = CMatrix::identity(n);
  const cd i1(0.0, 1.0);

  for (std::size_t pt = 0; pt < np; ++pt) {
    if (pole[pt]) {
      report.poles.push_back(batch.points()[pt]);
      continue;
    }
    ++report.points;
    CMatrix sum(n), dsum(n), dbsum(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& [p, d, db, dd, ddb, dbdb] = jets[k][pt];
      const CMatrix q = id - p;
      tab.note("idempotent", nrm(p * p - p));
      tab.note("hermitian", nrm(p.dagger() - p));
      tab.note("trace_one", std::abs(p.trace() - 1.0));
      tab.note("exch", std::max({nrm(d * p - q * d), nrm(p * d - d * q), nrm(db * p - q * db), nrm(p * db - db * q)}));
      tab.note("exchange_chain", std::max(nrm(p * (d * db) - d * db * p), nrm(p * (d * db * d) - d * db * d * q)));
      for (const auto& a : samples) {
        tab.note("sandwich", nrm(p * a * p - (p * a).trace() * p));
        for (const CMatrix* d1 : {&d, &db}) {
          for (const CMatrix* d2 : {&d, &db}) {
            const CMatrix core = *d1 * *d2 * p;
            tab.note("factorization", std::abs((a * core).trace() - (a * p).trace() * core.trace()));
          }
        }
      }
      tab.note("odd_trace", std::max({std::abs((p * d).trace()), std::abs((d * db * d).trace()),
                                      std::abs((p * d * p * db * db).trace())}));
      tab.note("second_deriv", std::max({std::abs((p * dd).trace() + (d * d).trace()),
                                         std::abs((p * dbdb).trace() + (db * db).trace()),
                                         std::abs((p * ddb).trace() + (d * db).trace())}));
      tab.note("el", nrm(2.0 * commutator(ddb, p)));
      tab.note("el_trace", std::abs((p * db * ddb).trace()));
      tab.note("holo_null", std::max(std::abs((d * d).trace()), std::abs((db * db).trace())));
      for (std::size_t j = 0; j < k; ++j) tab.note("orthogonality", nrm(jets[j][pt].p * p));

      const double level = static_cast<double>(2 * k + 1) / static_cast<double>(n);
      if (k <= top_surface) {
        const CMatrix x = -i1 * (p + 2.0 * sum) + i1 * level * id;
        const CMatrix dx = -i1 * (d + 2.0 * dsum);
        const CMatrix dbx = -i1 * (db + 2.0 * dbsum);
        tab.note("immersion_antihermitian", nrm(x.dagger() + x));
        tab.note("immersion_traceless", std::abs(x.trace()));
        const CMatrix c1 = x - i1 * (level - 2.0) * id;
        const CMatrix c2 = x - i1 * (level - 1.0) * id;
        const CMatrix c3 = x - i1 * level * id;
        tab.note("cubic_constraint", detail::product_residual({&c1, &c2, &c3}));
        tab.note("immersion_differential",
                 std::max(nrm(dx + i1 * commutator(d, p)), nrm(dbx - i1 * commutator(db, p))));
        tab.note("commutator_sum", std::max(nrm(commutator(d, p) - d - 2.0 * dsum),
                                            nrm(commutator(db, p) + db + 2.0 * dbsum)));
        tab.note("reconstruction_single",
                 nrm(x * x - 2.0 * i1 * (level - 1.0) * x - level * (level - 2.0) * id - p));
        tab.note("metric_diagonal", std::max(std::abs(-0.5 * (dx * dx).trace()), std::abs(-0.5 * (dbx * dbx).trace())));
        const cd g12 = 0.5 * (d * db).trace();
        const cd dg12 = 0.5 * (dd * db + d * ddb).trace();
        const cd dbg12 = 0.5 * (ddb * db + d * dbdb).trace();
        tab.note("christoffel",
                 std::max(std::abs(g12 * gamma1[k][pt] - dg12), std::abs(g12 * gamma2[k][pt] - dbg12)));
        tab.note("metric_real", std::abs(g12.imag()));
      }

      for (const auto& lp : lambdas) {
        const cd l = lp.value();
        const cd a_up = 4.0 * l / ((1.0 - l) * (1.0 - l));
        const cd a_dn = 4.0 * l / ((1.0 + l) * (1.0 + l));
        const CMatrix phi = id + a_up * sum - (2.0 / (1.0 - l)) * p;
        const CMatrix phi_inv = id - a_dn * sum - (2.0 / (1.0 + l)) * p;
        const CMatrix dphi = a_up * dsum - (2.0 / (1.0 - l)) * d;
        const CMatrix dbphi = a_up * dbsum - (2.0 / (1.0 - l)) * db;
        tab.note("lax", std::max(nrm(dphi - (2.0 / (1.0 + l)) * commutator(d, p) * phi),
                                 nrm(dbphi - (2.0 / (1.0 - l)) * commutator(db, p) * phi)));
        tab.note("wave_inverse", nrm(phi * phi_inv - id));
        tab.note("wave_reconstruction",
                 nrm(0.25 * (2.0 * (1.0 + l * l) * id - (1.0 - l) * (1.0 - l) * phi - (1.0 + l) * (1.0 + l) * phi_inv) - p));
        const CMatrix f1 = id - phi;
        const CMatrix f2 = (1.0 + l) * (1.0 + l) * id - (1.0 - l) * (1.0 - l) * phi;
        const CMatrix f3 = (1.0 + l) * id + (1.0 - l) * phi;
        const CMatrix inv16 = (1.0 / 16.0) * phi_inv;
        tab.note("wave_cubic", detail::product_residual({&f1, &f2, &f3}));
        tab.note("wave_factorization", detail::product_residual({&inv16, &phi_inv, &f1, &f2, &f3, &f3}));
      }

      sum += p;
      dsum += d;
      dbsum += db;
    }
    tab.note("completeness", nrm(sum - id));
    const auto& last = jets[n - 1][pt];
    tab.note("termination", nrm(last.d * last.p * last.db));

    // Reconstruction from the surface sequence X_0 … X_k.
    CMatrix xs_prev(n), acc_sum(n);
    std::vector<CMatrix> xs;
    for (std::size_t k = 0; k <= top_surface; ++k) {
      const double level = static_cast<double>(2 * k + 1) / static_cast<double>(n);
      xs.push_back(-i1 * (jets[k][pt].p + 2.0 * acc_sum) + i1 * level * id);
      acc_sum += jets[k][pt].p;
      CMatrix rec(n);
      for (std::size_t j = 1; j <= k; ++j) rec += ((k - j) % 2 == 0 ? 1.0 : -1.0) * i1 * (xs[j] - xs[j - 1]);
      rec += (k % 2 == 0 ? 1.0 : -1.0) * i1 * xs[0];
      rec += (1.0 / static_cast<double>(n)) * id;
      tab.note("reconstruction_sum", nrm(rec - jets[k][pt].p));
    }
  }
  report.residuals = tab.finish(opt.tolerance);
  return report;
}

extern template GridReport grid_residual_report(const ProjectorTower<ExactComplex>&, const GridSpec&,
                                                const GridOptions&);
extern template GridReport grid_residual_report(const ProjectorTower<FloatComplex>&, const GridSpec&,
                                                const GridOptions&);

}  // namespace cpn
