#include <algorithm>
#include <limits>
#include <sstream>

#include "common.hpp"

namespace cpn::cli {

namespace {

template <Coefficient C>
class Verifier {
 public:
  using M = MatrixRF<C>;
  using R = RatFn<C>;

  explicit Verifier(const RunConfig& cfg) : cfg_(cfg) {}

  template <class V>
  void add(const std::string& name, const std::string& subject, const V& value) {
    CheckRow row{name, subject, true, probe_magnitude(value), {}};
    if constexpr (CoeffTraits<C>::exact) {
      row.passed = value.is_zero();
    } else {
      row.passed = row.magnitude == row.magnitude && row.magnitude < cfg_.tol;
    }
    rows_.push_back(std::move(row));
  }

  template <class V>
  void add_pair(const std::string& name, const std::string& subject, const std::pair<V, V>& values) {
    add(name, subject, values.first);
    add(name + "_bar", subject, values.second);
  }

  void add_outcome(const std::string& name, const std::string& subject, bool passed, const std::string& detail) {
    rows_.push_back({name, subject, passed, passed ? 0.0 : std::numeric_limits<double>::quiet_NaN(), detail});
  }

  void add_suite(const IdentityReport<C>& rep, const std::string& subject) {
    for (const auto& check : rep.checks) {
      CheckRow row{"identity:" + check.name, subject, check.passed(), 0.0, {}};
      for (const auto& r : check.residuals) {
        const double m = r.magnitude();
        row.magnitude = (m != m || row.magnitude != row.magnitude) ? m : std::max(row.magnitude, m);
        if (!r.vanishes()) row.detail += (row.detail.empty() ? "" : "; ") + r.label;
      }
      if constexpr (!CoeffTraits<C>::exact) row.passed = row.magnitude == row.magnitude && row.magnitude < cfg_.tol;
      rows_.push_back(std::move(row));
    }
  }

  /// Float mode: symbolic rows carry expansion round-off, so the pointwise
  /// grid rows decide the outcome and the symbolic rows become advisory.
  void add_grid(const GridReport& g) {
    if constexpr (!CoeffTraits<C>::exact) {
      for (auto& r : rows_) r.advisory = r.magnitude == r.magnitude;
    }
    for (const auto& r : g.residuals) rows_.push_back({"grid:" + r.name, "grid", r.passed, r.max_residual, {}});
  }

  const std::vector<CheckRow>& rows() const { return rows_; }

 private:
  const RunConfig& cfg_;
  std::vector<CheckRow> rows_;
};

template <Coefficient C>
std::string scalar_text(const C& c) {
  if constexpr (CoeffTraits<C>::exact) {
    return c.to_string();
  } else {
    return c.imag() == 0.0 ? format_double(c.real()) : format_double(c.real()) + "+" + format_double(c.imag()) + "i";
  }
}

template <Coefficient C>
C small_perturbation() {
  if constexpr (CoeffTraits<C>::exact) {
    return ExactComplex(1, 100);
  } else {
    return C(0.01);
  }
}

template <Coefficient C>
void check_general_input(Verifier<C>& v, const std::vector<BiPoly<C>>& f) {
  const auto res = el_residual_vector(f);
  for (std::size_t k = 0; k < res.size(); ++k) v.add("el_vector", "f[" + std::to_string(k) + "]", res[k]);
  v.add("el", "P(f)", el_residual(projector_from_components(f)));
}

template <Coefficient C>
void check_members(Verifier<C>& v, const ProjectorTower<C>& t, const RunConfig& cfg) {
  using M = MatrixRF<C>;
  const std::size_t n = t.dim();
  M sum(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::string subject = "P" + std::to_string(k);
    v.add_suite(identity_suite(t[k], cfg.seed), subject);
    v.add("el", subject, el_residual(t[k]));
    for (std::size_t j = 0; j < k; ++j) v.add("orthogonality", "P" + std::to_string(j) + "." + subject, M(t[j].matrix() * t[k].matrix()));
    sum += t[k].matrix();
    if (k + 1 < n) {
      const auto up = raise(t[k]);
      v.add("lower_raise", subject, M(lower(up).matrix() - t[k].matrix()));
    } else {
      bool terminated = false;
      try {
        (void)raise(t[k]);
      } catch (const TowerTerminated&) {
        terminated = true;
      }
      v.add_outcome("termination", subject, terminated, terminated ? "" : "raise succeeded on the last member");
    }
  }
  v.add("completeness", "tower", M(sum - M::identity(n)));
}

template <Coefficient C>
void check_surfaces(Verifier<C>& v, const ProjectorTower<C>& t, const RunConfig& cfg) {
  using M = MatrixRF<C>;
  const C minus_i = -CoeffTraits<C>::imaginary_unit();
  const std::vector<std::size_t> ks = cfg.surfaces();
  const std::size_t top = ks.empty() ? 0 : *std::max_element(ks.begin(), ks.end());
  std::vector<SurfaceImmersion<C>> xs;
  for (std::size_t k = 0; k <= top; ++k) {
    try {
      xs.push_back(immersion_from_tower(t, k, cfg.allow_last));
    } catch (const CertificationFailure& e) {
      v.add_outcome("immersion", "X" + std::to_string(k), false, e.what());
      return;
    }
  }
  for (std::size_t k : ks) {
    const std::string subject = "X" + std::to_string(k);
    const SurfaceImmersion<C>& x = xs[k];
    const M& p = t[k].matrix();
    v.add("antihermitian", subject, M(x.matrix.dagger() + x.matrix));
    v.add("traceless", subject, x.matrix.trace());
    v.add("cubic_constraint", subject, cubic_constraint_residual(x));
    v.add_pair("immersion_differential", subject, immersion_differential_residual(x.matrix, p));
    v.add("commutator_sum", subject, commutator_sum_residual(t, k));
    v.add("commutator_sum_bar", subject, commutator_sum_residual(t, k, true));
    try {
      const std::vector<SurfaceImmersion<C>> prefix(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k + 1));
      v.add("reconstruction_sum", subject, M(projector_from_surfaces(prefix).matrix() - p));
    } catch (const CertificationFailure& e) {
      v.add_outcome("reconstruction_sum", subject, false, e.what());
    }
    try {
      v.add("reconstruction_single", subject, M(projector_from_single_surface(x).matrix() - p));
    } catch (const CertificationFailure& e) {
      v.add_outcome("reconstruction_single", subject, false, e.what());
    }
    v.add_pair("metric_diagonal", subject, metric_diagonal(x.matrix));
    try {
      const MetricData<C> m = metric(t, k, cfg.allow_last);
      v.add_pair("christoffel", subject, christoffel_residual(m));
      const SecondFormData<C> s = second_form(t, k);
      const SecondFormData<C> s2 = second_form_from_immersion(x, m);
      v.add("second_form_dxi2", subject, M(s.coeff_dxi2 - s2.coeff_dxi2.scaled(minus_i)));
      v.add("second_form_dxidxibar", subject, M(s.coeff_dxidxibar - s2.coeff_dxidxibar.scaled(minus_i)));
      v.add("second_form_dxibar2", subject, M(s.coeff_dxibar2 - s2.coeff_dxibar2.scaled(minus_i)));
      v.add("second_form_conjugate", subject, M(s.coeff_dxi2.dagger() - s.coeff_dxibar2));
    } catch (const Error& e) {
      v.add_outcome("metric", subject, false, e.what());
    }
  }
}

template <Coefficient C>
void check_spectral(Verifier<C>& v, const ProjectorTower<C>& t, const std::vector<C>& lambdas) {
  using M = MatrixRF<C>;
  for (std::size_t k = 0; k < t.size(); ++k) {
    for (const C& l : lambdas) {
      const std::string subject = "Phi" + std::to_string(k) + "(lambda=" + scalar_text(l) + ")";
      try {
        const WaveFunction<C> w = wavefunction(t, k, SpectralParam<C>(l));
        v.add_pair("lax", subject, lax_residual(w, t));
        v.add("wave_reconstruction", subject, M(projector_matrix_from_wavefunction(w) - t[k].matrix()));
        v.add("wave_factorization", subject, projective_factorization_residual(w));
        v.add("wave_cubic", subject, cubic_wave_residual(w));
      } catch (const CertificationFailure& e) {
        v.add_outcome("wave_inverse", subject, false, e.what());
      }
    }
  }
}

template <Coefficient C>
int verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Verifier<C> v(cfg);
  ordered_json report;
  report["config"] = cfg.to_json();
  report["seed"] = cfg.seed;
  const std::vector<BiPoly<C>> comps = input_vector<C>(cfg);
  bool holomorphic = true;
  for (const auto& c : comps) holomorphic = holomorphic && c.is_holomorphic();
  report["input"] = holomorphic ? "holomorphic" : "general";
  int code = kExitOk;
  GridReport grid;

  if (!holomorphic) {
    check_general_input(v, comps);
  } else if (cfg.negative_control == "zero-surface") {
    v.add("cubic_constraint", "X0=0", cubic_constraint_residual(MatrixRF<C>(cfg.n), 0));
  } else {
    const HolomorphicVector<C> f(comps);
    std::optional<ProjectorTower<C>> tower;
    try {
      tower = build_tower(f);
      report["tower"] = {{"N", cfg.n}, {"members", tower->size()}, {"complete", true}};
    } catch (const PrematureTermination& e) {
      report["tower"] = {{"N", cfg.n}, {"members", e.index() + 1}, {"complete", false}, {"terminated_at", e.index()}};
      v.add_outcome("termination", "P" + std::to_string(e.index()), false, e.what());
      code = kExitTermination;
    }
    if (tower && cfg.negative_control == "corrupt-projector") {
      MatrixRF<C> p = (*tower)[0].matrix();
      p(0, 0) = p(0, 0) + RatFn<C>(small_perturbation<C>());
      v.add("el", "P0+eps*E00", el_residual(p));
    } else if (tower) {
      check_members(v, *tower, cfg);
      check_surfaces(v, *tower, cfg);
      check_spectral(v, *tower, spectral_values<C>(cfg));
      GridOptions opt;
      opt.tolerance = cfg.tol;
      opt.allow_last_surface = cfg.allow_last;
      opt.seed = cfg.seed;
      opt.lambdas.clear();
      for (const auto& l : spectral_values<C>(cfg)) opt.lambdas.push_back(CoeffTraits<C>::to_complex(l));
      grid = grid_residual_report(*tower, GridSpec::parse(cfg.grid), opt);
      v.add_grid(grid);
      ordered_json poles = ordered_json::array();
      for (const auto& z : grid.poles) poles.push_back({z.real(), z.imag()});
      report["grid"] = {{"spec", cfg.grid}, {"points", grid.points}, {"poles", poles}, {"tolerance", cfg.tol}};
    }
  }

  std::size_t failed = 0;
  ordered_json checks = ordered_json::array();
  std::ostringstream human;
  std::size_t warned = 0;
  for (const auto& r : v.rows()) {
    checks.push_back(row_json(r));
    if (!r.passed) ++(r.advisory ? warned : failed);
    human << (r.passed ? "PASS " : r.advisory ? "WARN " : "FAIL ") << r.name << " [" << r.subject << "] " << format_double(r.magnitude);
    if (!r.detail.empty()) human << "  (" << r.detail << ")";
    human << "\n";
  }
  report["checks"] = checks;
  const bool passed = failed == 0 && code == kExitOk;
  report["summary"] = {{"checks", v.rows().size()}, {"failed", failed}, {"advisory_failed", warned}, {"passed", passed}};
  human << (passed ? "all " + std::to_string(v.rows().size()) + " checks passed"
                   : std::to_string(failed) + " of " + std::to_string(v.rows().size()) + " checks failed");
  if (warned > 0) human << " (" << warned << " advisory symbolic rows above tolerance)";
  human << "\n";

  emit(cfg, report.dump(2) + "\n", out);
  (cfg.out.empty() || cfg.out == "-" ? err : out) << human.str();
  if (code != kExitOk) return code;
  return passed ? kExitOk : kExitResidual;
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return cfg.mode == Mode::Exact ? verify<ExactComplex>(cfg, out, err) : verify<FloatComplex>(cfg, out, err);
}

}  // namespace cpn::cli
