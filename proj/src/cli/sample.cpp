#include <sstream>

#include "common.hpp"
#include "cpn/numeric/su_basis.hpp"

namespace cpn::cli {

namespace {

struct Record {
  std::size_t k = 0;
  cd point;
  bool pole = false;
  CMatrix x;
  cd g12, gamma111, gamma222;
  double antihermitian = 0.0;
  double cubic = 0.0;
  std::vector<double> su;
};

ordered_json pair_json(cd z) { return ordered_json::array({z.real(), z.imag()}); }

template <Coefficient C>
std::vector<Record> collect(const RunConfig& cfg) {
  const ProjectorTower<C> t = build_tower(HolomorphicVector<C>(input_vector<C>(cfg)));
  PointBatch batch(GridSpec::parse(cfg.grid).points());
  BatchEvaluator<C> ev(batch);
  const std::size_t n = cfg.n;
  const cd i1(0.0, 1.0);
  std::vector<Record> out;
  for (std::size_t k : cfg.surfaces()) {
    const SurfaceImmersion<C> x = immersion_from_tower(t, k, cfg.allow_last);
    const MetricData<C> m = metric(t, k, cfg.allow_last);
    std::vector<bool> pole(batch.size(), false);
    const std::vector<CMatrix> xv = ev.matrix(x.matrix, pole);
    const BatchValues g = ev.rational(m.g12);
    const BatchValues g1 = ev.rational(m.gamma111);
    const BatchValues g2 = ev.rational(m.gamma222);
    const double level = static_cast<double>(2 * k + 1) / static_cast<double>(n);
    const CMatrix id = CMatrix::identity(n);
    for (std::size_t p = 0; p < batch.size(); ++p) {
      Record r;
      r.k = k;
      r.point = batch.points()[p];
      r.pole = pole[p] || g.pole[p] || g1.pole[p] || g2.pole[p];
      r.x = xv[p];
      r.g12 = g.value[p];
      r.gamma111 = g1.value[p];
      r.gamma222 = g2.value[p];
      if (!pole[p]) {
        r.antihermitian = (r.x.dagger() + r.x).max_norm();
        const CMatrix c1 = r.x - i1 * (level - 2.0) * id;
        const CMatrix c2 = r.x - i1 * (level - 1.0) * id;
        const CMatrix c3 = r.x - i1 * level * id;
        r.cubic = detail::product_residual({&c1, &c2, &c3});
        if (cfg.su_basis) r.su = su_coordinates(r.x);
      } else {
        r.antihermitian = r.cubic = std::nan("");
        if (cfg.su_basis) r.su.assign(n * n - 1, std::nan(""));
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::string to_json_text(const RunConfig& cfg, const std::vector<Record>& recs) {
  ordered_json doc;
  doc["config"] = cfg.to_json();
  doc["seed"] = cfg.seed;
  ordered_json arr = ordered_json::array();
  for (const auto& r : recs) {
    ordered_json j;
    j["k"] = r.k;
    j["point"] = pair_json(r.point);
    j["pole"] = r.pole;
    ordered_json xs = ordered_json::array();
    for (const auto& e : r.x.data()) xs.push_back(pair_json(e));
    j["X"] = xs;
    j["g12"] = pair_json(r.g12);
    j["gamma111"] = pair_json(r.gamma111);
    j["gamma222"] = pair_json(r.gamma222);
    j["residual"] = {{"antihermitian", r.antihermitian}, {"cubic", r.cubic}};
    if (cfg.su_basis) j["su"] = r.su;
    arr.push_back(std::move(j));
  }
  doc["records"] = arr;
  return doc.dump(2) + "\n";
}

std::string to_csv_text(const RunConfig& cfg, const std::vector<Record>& recs) {
  std::ostringstream os;
  os << "# " << cfg.to_json().dump() << "\n";
  os << "k,re,im,pole";
  for (std::size_t r = 0; r < cfg.n; ++r) {
    for (std::size_t c = 0; c < cfg.n; ++c) os << ",Xk_" << r << '_' << c << "_re,Xk_" << r << '_' << c << "_im";
  }
  os << ",g12_re,g12_im,gamma111_re,gamma111_im,gamma222_re,gamma222_im,antihermitian,cubic";
  if (cfg.su_basis) {
    for (std::size_t a = 1; a < cfg.n * cfg.n; ++a) os << ",su_" << a;
  }
  os << "\n";
  auto put = [&os](cd z) { os << ',' << format_double(z.real()) << ',' << format_double(z.imag()); };
  for (const auto& r : recs) {
    os << r.k << ',' << format_double(r.point.real()) << ',' << format_double(r.point.imag()) << ','
       << (r.pole ? 1 : 0);
    for (const auto& e : r.x.data()) put(e);
    put(r.g12);
    put(r.gamma111);
    put(r.gamma222);
    os << ',' << format_double(r.antihermitian) << ',' << format_double(r.cubic);
    for (double s : r.su) os << ',' << format_double(s);
    os << "\n";
  }
  return os.str();
}

}  // namespace

int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::vector<Record> recs =
      cfg.mode == Mode::Exact ? collect<ExactComplex>(cfg) : collect<FloatComplex>(cfg);
  emit(cfg, cfg.format == "csv" ? to_csv_text(cfg, recs) : to_json_text(cfg, recs), out);
  std::size_t poles = 0;
  for (const auto& r : recs) poles += r.pole ? 1 : 0;
  err << recs.size() << " records written";
  if (poles > 0) err << ", " << poles << " flagged as poles";
  err << "\n";
  return kExitOk;
}

}  // namespace cpn::cli
