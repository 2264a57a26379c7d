#include "spinloc/serialize.hpp"

#include <cstdio>
#include <fstream>

namespace spinloc {

std::string format_full(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

json cplx_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("expected complex number as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json state_to_json(const PureState& state) {
  json coeffs = json::array();
  for (const auto& c : state.coeffs()) coeffs.push_back(cplx_to_json(c));
  return json{{"twice_j", state.twice_j().twice()}, {"coeffs", std::move(coeffs)}};
}

PureState state_from_json(const json& j) {
  const TwiceJ tj(j.at("twice_j").get<int>());
  std::vector<cplx> coeffs;
  for (const auto& e : j.at("coeffs")) coeffs.push_back(cplx_from_json(e));
  return PureState(tj, std::move(coeffs));
}

json roots_to_json(const StellarRoots& roots) {
  json fr = json::array();
  for (const auto& r : roots.finite_roots) fr.push_back(cplx_to_json(r));
  return json{{"twice_j", roots.twice_j.twice()},
              {"finite_roots", std::move(fr)},
              {"roots_at_infinity", roots.roots_at_infinity}};
}

StellarRoots roots_from_json(const json& j) {
  StellarRoots roots{TwiceJ(j.at("twice_j").get<int>()), {}, 0, cplx(1.0, 0.0)};
  for (const auto& e : j.at("finite_roots")) roots.finite_roots.push_back(cplx_from_json(e));
  roots.roots_at_infinity = j.at("roots_at_infinity").get<int>();
  return roots;
}

json hamiltonian_to_json(const SpinHamiltonian& h) {
  json rows = json::array();
  for (int i = 0; i < h.matrix().rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < h.matrix().cols(); ++k) row.push_back(cplx_to_json(h.matrix()(i, k)));
    rows.push_back(std::move(row));
  }
  return json{{"twice_j", h.twice_j().twice()}, {"matrix", std::move(rows)}};
}

SpinHamiltonian hamiltonian_from_json(const json& j) {
  const TwiceJ tj(j.at("twice_j").get<int>());
  const auto& rows = j.at("matrix");
  if (static_cast<int>(rows.size()) != tj.dim())
    throw std::invalid_argument("hamiltonian: matrix must be (2j+1) x (2j+1)");
  Eigen::MatrixXcd m(tj.dim(), tj.dim());
  for (int i = 0; i < tj.dim(); ++i) {
    if (static_cast<int>(rows[i].size()) != tj.dim())
      throw std::invalid_argument("hamiltonian: matrix must be square");
    for (int k = 0; k < tj.dim(); ++k) m(i, k) = cplx_from_json(rows[i][k]);
  }
  return SpinHamiltonian(tj, std::move(m));
}

json report_to_json(const MeasureReport& rep) {
  json j{{"twice_j", rep.twice_j}, {"method", rep.method}};
  auto put = [](json& dst, const std::map<double, double>& m) {
    for (const auto& [q, v] : m) dst[format_full(q)] = v;
  };
  put(j["W"] = json::object(), rep.W);
  put(j["S"] = json::object(), rep.S);
  put(j["Y"] = json::object(), rep.Y);
  put(j["Z"] = json::object(), rep.Z);
  if (rep.R) j["R"] = *rep.R;
  if (rep.T) j["T"] = *rep.T;
  return j;
}

json trace_snapshot_to_json(const TraceSnapshot& snap, const MapTrace& trace) {
  json coeffs = json::array();
  for (const auto& c : snap.state.coeffs()) coeffs.push_back(cplx_to_json(c));
  return json{{"iter", snap.iter}, {"map", trace.map_name},   {"q", trace.q},
              {"W", snap.w},       {"S", snap.s},             {"x_max", snap.x_max},
              {"coeffs", coeffs},  {"converged", trace.converged}};
}

PureState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file: " + path);
  json j;
  in >> j;
  if (j.contains("coeffs")) return state_from_json(j);
  if (j.contains("finite_roots")) return state_from_roots(roots_from_json(j));
  throw std::invalid_argument("state file must hold a coeffs or finite_roots record: " + path);
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace spinloc
