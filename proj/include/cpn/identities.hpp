#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cpn/random.hpp"
#include "cpn/tower.hpp"

namespace cpn {

/// A residual is either a scalar rational function or a matrix; it passes
/// when it vanishes (structurally in the exact ring).
template <Coefficient C>
struct Residual {
  std::string label;
  std::variant<RatFn<C>, MatrixRF<C>> value;

  bool vanishes() const {
    return std::visit([](const auto& v) { return cpn::vanishes(v); }, value);
  }
  /// Max |value| over the probe points (0 for a structural zero).
  double magnitude() const {
    return std::visit([](const auto& v) { return probe_magnitude(v); }, value);
  }
};

template <Coefficient C>
struct IdentityCheck {
  std::string name;
  std::vector<Residual<C>> residuals;

  bool passed() const {
    for (const auto& r : residuals) {
      if (!r.vanishes()) return false;
    }
    return true;
  }
};

template <Coefficient C>
struct IdentityReport {
  std::uint64_t seed = kDefaultSeed;
  std::vector<IdentityCheck<C>> checks;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed()) return false;
    }
    return true;
  }
  const IdentityCheck<C>* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

/// Letters of a derivative word: P itself, ∂P or ∂̄P.
enum class Letter { P, D, Db };

template <Coefficient C>
MatrixRF<C> evaluate_word(const std::vector<Letter>& word, const Jet<C>& jet) {
  MatrixRF<C> acc = MatrixRF<C>::identity(jet.p.dim());
  for (Letter l : word) {
    switch (l) {
      case Letter::P: acc = acc * jet.p; break;
      case Letter::D: acc = acc * jet.d; break;
      case Letter::Db: acc = acc * jet.db; break;
    }
  }
  return acc;
}

inline std::string word_label(const std::vector<Letter>& word) {
  std::string s;
  for (Letter l : word) {
    if (!s.empty()) s += '.';
    s += l == Letter::P ? "P" : (l == Letter::D ? "dP" : "dbP");
  }
  return s;
}

inline std::vector<Letter> random_derivative_word(RandomSource& rng, int length) {
  std::vector<Letter> w;
  for (int k = 0; k < length; ++k) w.push_back(rng.coin() ? Letter::D : Letter::Db);
  return w;
}

/// Number of randomized words/matrices used per check.
inline constexpr int kRandomSamples = 3;

/// Evaluates the one-dimensional-projector identities on P:
///   exch            ∂P·P = (𝕀−P)·∂P, P·∂P = ∂P·(𝕀−P), and the ∂̄ mirror
///   exchange_chain  P·w = w·P (even |w|), P·w = w·(𝕀−P) (odd |w|), |w| ≤ 4
///   sandwich        P·A·P = tr(P·A)·P for random polynomial matrices A
///   odd_trace       tr of odd derivative words with inserted P's vanish, |w| ≤ 5
///   second_deriv    tr(P·∂²P) = −tr(∂P·∂P) and the ∂∂̄, ∂̄² analogues
///   el_trace        tr(P·∂̄P·∂∂̄P) = 0 (requires P to solve the E-L equations)
///   factorization   tr(A·D₁P·D₂P·P) = tr(A·P)·tr(D₁P·D₂P·P), D ∈ {∂, ∂̄}
///   holo_null       tr(∂P·∂P) = 0 = tr(∂̄P·∂̄P) (tower members only)
/// Randomized inputs are drawn from `seed`, which is stored in the report.
template <Coefficient C>
IdentityReport<C> identity_suite(const Projector<C>& projector, std::uint64_t seed = kDefaultSeed) {
  using M = MatrixRF<C>;
  using R = RatFn<C>;
  const Jet<C> j = Jet<C>::of(projector.matrix());
  const std::size_t n = j.p.dim();
  const M id = M::identity(n);
  const M q = id - j.p;
  RandomSource rng(seed);
  IdentityReport<C> report;
  report.seed = seed;

  {
    IdentityCheck<C> c{"exch", {}};
    c.residuals.push_back({"dP.P - (I-P).dP", M(j.d * j.p - q * j.d)});
    c.residuals.push_back({"P.dP - dP.(I-P)", M(j.p * j.d - j.d * q)});
    c.residuals.push_back({"dbP.P - (I-P).dbP", M(j.db * j.p - q * j.db)});
    c.residuals.push_back({"P.dbP - dbP.(I-P)", M(j.p * j.db - j.db * q)});
    report.checks.push_back(std::move(c));
  }
  {
    IdentityCheck<C> c{"exchange_chain", {}};
    for (int len = 1; len <= 4; ++len) {
      const auto w = random_derivative_word(rng, len);
      const M wm = evaluate_word(w, j);
      const M rhs = len % 2 == 0 ? M(wm * j.p) : M(wm * q);
      c.residuals.push_back({"P." + word_label(w), M(j.p * wm - rhs)});
    }
    report.checks.push_back(std::move(c));
  }
  std::vector<M> samples;
  for (int s = 0; s < kRandomSamples; ++s) samples.push_back(rng.polynomial_matrix<C>(n));
  {
    IdentityCheck<C> c{"sandwich", {}};
    for (int s = 0; s < kRandomSamples; ++s) {
      const M& a = samples[static_cast<std::size_t>(s)];
      c.residuals.push_back({"A" + std::to_string(s), M(j.p * a * j.p - j.p.scaled(trace_of_product(j.p, a)))});
    }
    report.checks.push_back(std::move(c));
  }
  {
    IdentityCheck<C> c{"odd_trace", {}};
    c.residuals.push_back({"tr(P.dP)", trace_of_product(j.p, j.d)});
    c.residuals.push_back({"tr(P.dbP)", trace_of_product(j.p, j.db)});
    c.residuals.push_back({"tr(dP)", j.d.trace()});
    for (int s = 0; s < kRandomSamples + 1; ++s) {
      const int len = 1 + 2 * static_cast<int>(rng.range(0, 2));  // 1, 3 or 5
      auto w = random_derivative_word(rng, len);
      const long inserts = rng.range(0, 2);
      for (long k = 0; k < inserts; ++k) {
        const auto pos = static_cast<std::size_t>(rng.range(0, static_cast<long>(w.size())));
        w.insert(w.begin() + static_cast<std::ptrdiff_t>(pos), Letter::P);
      }
      c.residuals.push_back({"tr(" + word_label(w) + ")", evaluate_word(w, j).trace()});
    }
    report.checks.push_back(std::move(c));
  }
  {
    IdentityCheck<C> c{"second_deriv", {}};
    c.residuals.push_back({"tr(P.ddP) + tr(dP.dP)", R(trace_of_product(j.p, j.dd) + trace_of_product(j.d, j.d))});
    c.residuals.push_back(
        {"tr(P.dbdbP) + tr(dbP.dbP)", R(trace_of_product(j.p, j.dbdb) + trace_of_product(j.db, j.db))});
    c.residuals.push_back({"tr(P.ddbP) + tr(dP.dbP)", R(trace_of_product(j.p, j.ddb) + trace_of_product(j.d, j.db))});
    report.checks.push_back(std::move(c));
  }
  {
    IdentityCheck<C> c{"el_trace", {}};
    c.residuals.push_back({"tr(P.dbP.ddbP)", trace_of_product(M(j.p * j.db), j.ddb)});
    report.checks.push_back(std::move(c));
  }
  {
    IdentityCheck<C> c{"factorization", {}};
    const std::pair<const M*, const char*> ders[] = {{&j.d, "dP"}, {&j.db, "dbP"}};
    for (const auto& [d1, n1] : ders) {
      for (const auto& [d2, n2] : ders) {
        const M core = *d1 * *d2 * j.p;
        const R core_trace = core.trace();
        for (int s = 0; s < kRandomSamples; ++s) {
          const M& a = samples[static_cast<std::size_t>(s)];
          const R lhs = trace_of_product(a, core);
          const R rhs = trace_of_product(a, j.p) * core_trace;
          c.residuals.push_back({std::string("A") + std::to_string(s) + "." + n1 + "." + n2 + ".P", R(lhs - rhs)});
        }
      }
    }
    report.checks.push_back(std::move(c));
  }
  {
    IdentityCheck<C> c{"holo_null", {}};
    c.residuals.push_back({"tr(dP.dP)", trace_of_product(j.d, j.d)});
    c.residuals.push_back({"tr(dbP.dbP)", trace_of_product(j.db, j.db)});
    report.checks.push_back(std::move(c));
  }
  return report;
}

extern template IdentityReport<ExactComplex> identity_suite(const Projector<ExactComplex>&, std::uint64_t);
extern template IdentityReport<FloatComplex> identity_suite(const Projector<FloatComplex>&, std::uint64_t);

}  // namespace cpn
