#include <sstream>

#include "common.hpp"

namespace cpn::cli {

int cmd_dump(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto t = build_tower(HolomorphicVector<ExactComplex>(input_vector<ExactComplex>(cfg)));
  std::ostringstream os;
  os << "# N = " << cfg.n << ", f = (";
  for (std::size_t j = 0; j < t.dim(); ++j) os << (j ? ", " : "") << t.source[j].to_string();
  os << ")\n";
  auto put = [&os](const std::string& name, const ExactMatrix& m) {
    for (std::size_t r = 0; r < m.dim(); ++r) {
      for (std::size_t c = 0; c < m.dim(); ++c) os << name << '[' << r << ',' << c << "] = " << m(r, c).to_string() << "\n";
    }
  };
  for (std::size_t k = 0; k < t.size(); ++k) put("P" + std::to_string(k), t[k].matrix());
  for (std::size_t k : cfg.surfaces()) {
    put("X" + std::to_string(k), immersion_from_tower(t, k, cfg.allow_last).matrix);
    os << "g12[" << k << "] = " << metric(t, k, cfg.allow_last).g12.to_string() << "\n";
  }
  emit(cfg, os.str(), out);
  return kExitOk;
}

}  // namespace cpn::cli
