#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "common.hpp"
#include "cpn/parser.hpp"

namespace cpn::cli {

std::vector<std::size_t> RunConfig::surfaces() const {
  const std::size_t top = allow_last ? n - 1 : n - 2;
  if (k.empty()) {
    std::vector<std::size_t> all;
    for (std::size_t j = 0; j <= top; ++j) all.push_back(j);
    return all;
  }
  for (std::size_t j : k) {
    if (j > top) {
      throw CliFailure{kExitParse, "--k " + std::to_string(j) + " outside 0.." + std::to_string(top) +
                                       (allow_last ? "" : " (use --allow-last-surface for k = N-1)")};
    }
  }
  return k;
}

ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["command"] = command;
  j["mode"] = mode == Mode::Exact ? "exact" : "float";
  j["mode_forced"] = mode_forced;
  j["N"] = n;
  j["f"] = veronese ? "veronese" : f;
  j["k"] = surfaces();
  j["grid"] = grid;
  j["tol"] = tol;
  j["seed"] = seed;
  j["format"] = format;
  j["allow_last_surface"] = allow_last;
  j["lambda"] = lambdas;
  j["su_basis"] = su_basis;
  j["negative_control"] = negative_control;
  j["simd"] = std::string(simd::level_name(simd::active().level));
  return j;
}

template <Coefficient C>
std::vector<BiPoly<C>> input_vector(const RunConfig& cfg) {
  if (cfg.veronese) {
    if constexpr (CoeffTraits<C>::exact) {
      return {BiPoly<C>(C(1)), BiPoly<C>::xi()};
    } else {
      return veronese(cfg.n).components();
    }
  }
  std::vector<ExactPoly> exact = parse_polynomial_list(cfg.f);
  if constexpr (CoeffTraits<C>::exact) {
    return exact;
  } else {
    std::vector<BiPoly<C>> out;
    for (const auto& p : exact) {
      out.push_back(p.template map_coefficients<C>([](const ExactComplex& c) { return c.to_complex(); }));
    }
    return out;
  }
}

template <Coefficient C>
std::vector<C> spectral_values(const RunConfig& cfg) {
  std::vector<C> out;
  if (cfg.lambdas.empty()) {
    for (const ExactComplex& l : {ExactComplex(0), ExactComplex(2), ExactComplex(3), ExactComplex(1, 2),
                                  ExactComplex(-1, 3)}) {
      out.push_back(CoeffTraits<C>::from_exact(l));
    }
    return out;
  }
  for (const auto& s : cfg.lambdas) {
    const ExactPoly p = parse_polynomial(s);
    if (!p.is_zero() && !p.is_constant()) throw CliFailure{kExitParse, "--lambda must be a constant, got '" + s + "'"};
    const ExactComplex v = p.is_zero() ? ExactComplex(0) : p.constant_term();
    SpectralParam<ExactComplex> check(v);
    out.push_back(CoeffTraits<C>::from_exact(v));
  }
  return out;
}

template std::vector<BiPoly<ExactComplex>> input_vector(const RunConfig&);
template std::vector<BiPoly<FloatComplex>> input_vector(const RunConfig&);
template std::vector<ExactComplex> spectral_values(const RunConfig&);
template std::vector<FloatComplex> spectral_values(const RunConfig&);

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
  if (!f) throw CliFailure{kExitIo, "cannot open '" + cfg.out + "' for writing"};
  f << text;
  f.flush();
  if (!f) throw CliFailure{kExitIo, "write to '" + cfg.out + "' failed"};
}

std::string format_double(double v) {
  if (v != v) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

void add_common(CLI::App* app, RunConfig& cfg, std::string& mode) {
  app->add_option("--N", cfg.n, "Dimension N of C^N (defaults to the number of components of --f)");
  app->add_option("--f", cfg.f, "Comma-separated polynomials in xi, xibar, e.g. \"1, xi, xi^2\"");
  app->add_flag("--veronese", cfg.veronese, "Use the Veronese curve f_j = sqrt(binom(N-1, j)) xi^j");
  app->add_option("--mode", mode, "Coefficient ring")->check(CLI::IsMember({"exact", "float"}));
  app->add_option("--k", cfg.k, "Surface indices (comma separated)")->delimiter(',');
  app->add_option("--seed", cfg.seed, "Seed for randomized identity inputs");
  app->add_option("--out", cfg.out, "Output file (default: standard output)");
  app->add_flag("--allow-last-surface", cfg.allow_last, "Admit k = N-1 (its cubic constraint is equivalent to the k = 0 one)");
}

void add_grid(CLI::App* app, RunConfig& cfg) {
  app->add_option("--grid", cfg.grid, "Sample grid \"re0:re1:n,im0:im1:n\"");
  app->add_option("--tol", cfg.tol, "Residual tolerance for floating checks")->check(CLI::PositiveNumber);
}

void finish_config(RunConfig& cfg, const std::string& mode, std::ostream& err) {
  if (cfg.veronese == !cfg.f.empty()) throw CliFailure{kExitParse, "give exactly one of --f and --veronese"};
  cfg.mode = mode == "float" ? Mode::Float : Mode::Exact;
  if (cfg.veronese) {
    if (cfg.n < 2) throw CliFailure{kExitParse, "--veronese needs --N >= 2"};
    if (cfg.n > 2 && cfg.mode == Mode::Exact) {
      cfg.mode = Mode::Float;
      cfg.mode_forced = true;
      err << "note: Veronese coefficients are irrational for N > 2; using float mode\n";
    }
  } else {
    const std::size_t count = parse_polynomial_list(cfg.f).size();
    if (cfg.n == 0) cfg.n = count;
    if (cfg.n != count) {
      throw CliFailure{kExitParse, "--N " + std::to_string(cfg.n) + " but --f has " + std::to_string(count) +
                                       " components"};
    }
    if (cfg.n < 2) throw CliFailure{kExitParse, "need at least 2 components"};
  }
  (void)GridSpec::parse(cfg.grid);
  if (cfg.command == "sample" && cfg.format != "json" && cfg.format != "csv") {
    throw CliFailure{kExitParse, "--format must be json or csv"};
  }
  if (cfg.command == "dump" && cfg.mode == Mode::Float) throw CliFailure{kExitParse, "dump needs exact mode"};
  if (cfg.mode == Mode::Exact) {
    (void)spectral_values<ExactComplex>(cfg);
  } else {
    (void)spectral_values<FloatComplex>(cfg);
  }
  const auto ks = cfg.surfaces();
  if (std::find(ks.begin(), ks.end(), cfg.n - 1) != ks.end()) {
    err << "warning: surface k = N-1 satisfies a constraint equivalent to k = 0 and duplicates that case\n";
  }
}

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projector towers of CP^(N-1) sigma models: verification and sampling"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string mode = "exact";

  auto* verify = app.add_subcommand("verify", "Build the tower and check every identity");
  add_common(verify, cfg, mode);
  add_grid(verify, cfg);
  verify->add_option("--lambda", cfg.lambdas, "Spectral parameter (repeatable; rational or Gaussian rational)");
  verify->add_option("--negative-control", cfg.negative_control, "Deliberately broken input")
      ->check(CLI::IsMember({"corrupt-projector", "zero-surface"}));

  auto* sample = app.add_subcommand("sample", "Evaluate surfaces and metric data on a grid");
  add_common(sample, cfg, mode);
  add_grid(sample, cfg);
  sample->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sample->add_flag("--su-basis", cfg.su_basis, "Also export coordinates in the generalized Gell-Mann basis");

  auto* dump = app.add_subcommand("dump", "Print P_k, X_k and g12 symbolically (exact mode)");
  add_common(dump, cfg, mode);

  std::ostringstream cli_out, cli_err;
  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return code == 0 ? kExitOk : kExitParse;
  }

  if (verify->parsed()) cfg.command = "verify";
  if (sample->parsed()) cfg.command = "sample";
  if (dump->parsed()) cfg.command = "dump";
  finish_config(cfg, mode, err);
  if (cfg.command == "verify") return cmd_verify(cfg, out, err);
  if (cfg.command == "sample") return cmd_sample(cfg, out, err);
  return cmd_dump(cfg, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const CliFailure& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const ParseError& e) {
    err << "parse error at " << e.what() << "\n";
    return kExitParse;
  } catch (const PrematureTermination& e) {
    err << "error: " << e.what() << "\n";
    return kExitTermination;
  } catch (const TowerTerminated& e) {
    err << "error: " << e.what() << "\n";
    return kExitTermination;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const IndexOutOfRange& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ForbiddenSpectralValue& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ZeroVector& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CertificationFailure& e) {
    err << "residual failure: " << e.what() << "\n";
    return kExitResidual;
  } catch (const DegenerateMetric& e) {
    err << "residual failure: " << e.what() << "\n";
    return kExitResidual;
  } catch (const NearPole& e) {
    err << "residual failure: " << e.what() << "\n";
    return kExitResidual;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace cpn::cli
