// spinloc: phase-space localization measures of spin-j pure states.
//
// Subcommands: measure | random | maps | dynamics | verify.
// Exit codes: 0 success, 2 usage/input error, 3 numerical degeneracy,
// 4 assertion failure (theorem2 monotonicity, verify).
#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "spinloc/acceptance.hpp"
#include "spinloc/dynamics.hpp"
#include "spinloc/maps.hpp"
#include "spinloc/measures.hpp"
#include "spinloc/random_ensemble.hpp"
#include "spinloc/serialize.hpp"
#include "spinloc/version.hpp"

namespace {

using namespace spinloc;
using Clock = std::chrono::steady_clock;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string hash_hex(const std::string& s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(s)));
  return buf;
}

struct OutputMeta {
  std::string config;
  std::uint64_t seed = 0;
  Clock::time_point start = Clock::now();

  double runtime() const { return std::chrono::duration<double>(Clock::now() - start).count(); }
  json to_json() const {
    return json{{"version", kVersion},
                {"config_hash", hash_hex(config)},
                {"seed", seed},
                {"runtime_seconds", runtime()}};
  }
  void write_csv_header(std::ostream& out) const {
    out << "# version=" << kVersion << " config_hash=" << hash_hex(config) << " seed=" << seed
        << " runtime_seconds=" << format_full(runtime()) << "\n";
  }
};

std::unique_ptr<std::ofstream> open_out(const std::string& path, std::ostream*& out) {
  if (path.empty()) {
    out = &std::cout;
    return nullptr;
  }
  auto f = std::make_unique<std::ofstream>(path);
  if (!*f) throw std::invalid_argument("cannot open output file: " + path);
  out = f.get();
  return f;
}

cplx parse_cplx(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {std::stod(s), 0.0};
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

// Platonic vertex configurations as stellar roots (stereographic projection
// gamma = (x - iy)/(1 + z); z = -1 is a root at the south pole).
PureState platonic_state(int tj) {
  const double p = 0.5 * (1.0 + std::sqrt(5.0));  // golden ratio
  std::vector<Vec3> v;
  switch (tj) {
    case 4:
      v = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
      break;
    case 6:
      v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
      break;
    case 8:
      for (int sx : {-1, 1})
        for (int sy : {-1, 1})
          for (int sz : {-1, 1}) v.push_back({double(sx), double(sy), double(sz)});
      break;
    case 12:
      for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
          v.push_back({0, s1 * 1.0, s2 * p});
          v.push_back({s1 * 1.0, s2 * p, 0});
          v.push_back({s2 * p, 0, s1 * 1.0});
        }
      break;
    case 20:
      for (int sx : {-1, 1})
        for (int sy : {-1, 1})
          for (int sz : {-1, 1}) v.push_back({double(sx), double(sy), double(sz)});
      for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
          v.push_back({0, s1 / p, s2 * p});
          v.push_back({s1 / p, s2 * p, 0});
          v.push_back({s2 * p, 0, s1 / p});
        }
      break;
    default:
      throw std::invalid_argument("platonic states exist for 2j in {4,6,8,12,20}");
  }
  std::vector<SpherePoint> pts;
  for (auto& w : v) pts.push_back(SpherePoint::from_unit_vector((1.0 / norm(w)) * w));
  return state_from_roots(roots_from_points(TwiceJ(tj), pts));
}

struct MeasureArgs {
  std::string state_file, coherent, jz_m, out, format = "csv";
  int platonic_tj = 0;
  int twice_j = 2;
  std::vector<double> qs{1.0, 2.0};
  double tol = 1e-11;
};

int cmd_measure(const MeasureArgs& a, OutputMeta meta) {
  QuadOptions opt;
  opt.rtol = a.tol;
  PureState state = [&] {
    if (!a.state_file.empty()) return load_state_file(a.state_file);
    if (!a.coherent.empty()) {
      const TwiceJ tj(a.twice_j);
      if (a.coherent == "inf") return coherent_state(SpherePoint::infinity(), tj);
      return coherent_state(SpherePoint(parse_cplx(a.coherent)), tj);
    }
    if (!a.jz_m.empty()) {
      const double m = std::stod(a.jz_m);
      return basis_state(static_cast<int>(std::llround(2.0 * m)), TwiceJ(a.twice_j));
    }
    if (a.platonic_tj > 0) return platonic_state(a.platonic_tj);
    throw std::invalid_argument("measure: give --state, --coherent, --jz or --platonic");
  }();

  std::string state_id = !a.state_file.empty() ? a.state_file
                         : !a.coherent.empty() ? ("coherent:" + a.coherent)
                         : !a.jz_m.empty()     ? ("jz:" + a.jz_m)
                                               : ("platonic:" + std::to_string(a.platonic_tj));

  const MeasureReport rep = measure_report(state, a.qs, opt);
  // closed-form comparison columns for the analytic builtins
  std::map<double, MeasureReport> closed;
  for (double q : a.qs) {
    if (!a.coherent.empty())
      closed.emplace(q, coherent_closed_forms(state.twice_j(), q));
    else if (!a.jz_m.empty())
      closed.emplace(q, jz_closed_forms(state.twice_j(),
                                        static_cast<int>(std::llround(2.0 * std::stod(a.jz_m))),
                                        q));
  }

  std::ostream* out = nullptr;
  auto file = open_out(a.out, out);
  auto get = [](const std::map<double, double>& m, double q) {
    auto it = m.find(q);
    return it == m.end() ? std::string("") : format_full(it->second);
  };
  if (a.format == "json") {
    json rows = json::array();
    for (double q : a.qs) {
      json row{{"state_id", state_id},
               {"q", q},
               {"W", rep.W.at(q)},
               {"S", rep.S.at(q)},
               {"R", *rep.R},
               {"method", rep.method_by_q.at(q)}};
      if (rep.Y.count(q)) row["Y"] = rep.Y.at(q);
      if (rep.Z.count(q)) row["Z"] = rep.Z.at(q);
      if (rep.T) row["T"] = *rep.T;
      if (closed.count(q)) row["closed_form"] = report_to_json(closed.at(q));
      rows.push_back(std::move(row));
    }
    *out << json{{"meta", meta.to_json()}, {"rows", rows}}.dump(2) << "\n";
  } else {
    meta.write_csv_header(*out);
    *out << "state_id,q,W,S,Y,Z,R,T,method,W_closed,S_closed,Y_closed,Z_closed\n";
    for (double q : a.qs) {
      *out << state_id << ',' << format_full(q) << ',' << get(rep.W, q) << ',' << get(rep.S, q)
           << ',' << get(rep.Y, q) << ',' << get(rep.Z, q) << ',' << format_full(*rep.R) << ','
           << (rep.T ? format_full(*rep.T) : "") << ',' << rep.method_by_q.at(q);
      if (closed.count(q)) {
        const auto& cf = closed.at(q);
        *out << ',' << get(cf.W, q) << ',' << get(cf.S, q) << ',' << get(cf.Y, q) << ','
             << get(cf.Z, q);
      } else {
        *out << ",,,,";
      }
      *out << "\n";
    }
  }
  return 0;
}

struct RandomArgs {
  int dim = 3;
  std::vector<double> qs{1.0, 2.0};
  int samples = 1000;
  std::uint64_t seed = 1;
  std::string out, format = "csv";
};

int cmd_random(const RandomArgs& a, OutputMeta meta) {
  if (a.dim < 2) throw std::invalid_argument("random: need N >= 2");
  const TwiceJ tj(a.dim - 1);
  std::ostream* out = nullptr;
  auto file = open_out(a.out, out);
  meta.write_csv_header(*out);
  *out << "N,q,n_samples,mc_mean,std_error,exact_value,z_score,seed\n";
  for (double q : a.qs) {
    // q = 1 averages the Wehrl entropy, otherwise the moment W^(q)
    const bool entropy = std::abs(q - 1.0) < 1e-12;
    const auto est = mc_mean_measure(tj, q, a.samples, a.seed,
                                     entropy ? McMeasure::entropy : McMeasure::moment);
    const double exact = entropy ? expected_wehrl(a.dim) : expected_moment(a.dim, q);
    // zero-variance ensembles (N = 2: every draw is coherent) reproduce the
    // analytic value to rounding; report z = 0 instead of noise/noise
    double z = (est.mean - exact) / est.std_error;
    if (std::abs(est.mean - exact) <= 1e-13 * std::max(1.0, std::abs(exact))) z = 0.0;
    if (!std::isfinite(z)) throw NumericalDegeneracy("random: z-score not finite");
    *out << a.dim << ',' << format_full(q) << ',' << est.n_samples << ','
         << format_full(est.mean) << ',' << format_full(est.std_error) << ','
         << format_full(exact) << ',' << format_full(z) << ',' << est.seed << "\n";
  }
  return 0;
}

struct MapsArgs {
  std::string state_file, map = "theorem2", out;
  int q = 2;
  int max_iters = 2000;
  double step = 1.0;
};

int cmd_maps(const MapsArgs& a, OutputMeta meta) {
  const PureState input = load_state_file(a.state_file);
  std::ostream* out = nullptr;
  auto file = open_out(a.out, out);

  auto emit_line = [&](const json& j) { *out << j.dump() << "\n"; };
  emit_line(json{{"meta", meta.to_json()}});

  auto snapshot_line = [&](int iter, const PureState& st, const std::string& name,
                           const StellarRoots* roots) {
    json coeffs = json::array();
    for (const auto& c : st.coeffs()) coeffs.push_back(json::array({c.real(), c.imag()}));
    json j{{"iter", iter},
           {"map", name},
           {"W2", moment_exact(st, 2)},
           {"coeffs", std::move(coeffs)}};
    if (roots) j["roots"] = roots_to_json(*roots);
    emit_line(j);
  };

  if (a.map == "theorem2") {
    const MapTrace trace = theorem2_driver(input, a.q, a.max_iters);
    for (const auto& snap : trace.snapshots) emit_line(trace_snapshot_to_json(snap, trace));
    emit_line(json{{"status", trace.status},
                   {"converged", trace.converged},
                   {"monotone", trace.monotone}});
    if (!trace.monotone) {
      std::cerr << "theorem2: monotonicity violated\n";
      return 4;
    }
    return 0;
  }
  snapshot_line(0, input, "input", nullptr);
  if (a.map == "f1") {
    const MapResult r = map_f1(input);
    snapshot_line(1, r.state, "f1", &r.roots);
  } else if (a.map == "f1prime") {
    const MapResult r = map_f1_prime_collapse(input);
    snapshot_line(1, r.state, "f1prime", &r.roots);
  } else if (a.map == "f2") {
    snapshot_line(1, map_f2(input), "f2", nullptr);
  } else if (a.map == "f3") {
    const MapResult r = map_f3(input, a.step);
    snapshot_line(1, r.state, "f3", &r.roots);
  } else {
    throw std::invalid_argument("maps: unknown map " + a.map);
  }
  return 0;
}

struct DynamicsArgs {
  std::string state_file, hamiltonian = "jz", out;
  double t_max = 1.0;
  int steps = 10;
  std::vector<double> qs{1.0, 2.0};
  double tol = 1e-11;
};

SpinHamiltonian parse_hamiltonian(const std::string& spec, TwiceJ tj) {
  if (spec == "jz") return SpinHamiltonian::jz(tj);
  if (spec == "jx") return SpinHamiltonian::jx(tj);
  if (spec.rfind("rotation:", 0) == 0) {
    const std::string rest = spec.substr(9);
    const auto c1 = rest.find(',');
    const auto c2 = rest.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::invalid_argument("rotation Hamiltonian: rotation:a,b_re,b_im");
    return SpinHamiltonian::rotation_generator(
        tj, std::stod(rest.substr(0, c1)),
        cplx(std::stod(rest.substr(c1 + 1, c2 - c1 - 1)), std::stod(rest.substr(c2 + 1))));
  }
  std::ifstream in(spec);
  if (!in) throw std::invalid_argument("cannot open hamiltonian file: " + spec);
  json j;
  in >> j;
  return hamiltonian_from_json(j);
}

int cmd_dynamics(const DynamicsArgs& a, OutputMeta meta) {
  const PureState state = load_state_file(a.state_file);
  const SpinHamiltonian h = parse_hamiltonian(a.hamiltonian, state.twice_j());
  QuadOptions opt;
  opt.rtol = a.tol;
  const EntropyTimeSeries ts = evolve_series(state, h, a.t_max, a.steps, a.qs, opt);
  std::ostream* out = nullptr;
  auto file = open_out(a.out, out);
  meta.write_csv_header(*out);
  *out << "t,q,S,W,dS_dt_analytic,dS_dt_fd\n";
  const std::size_t nq = ts.qs.size();
  for (std::size_t i = 0; i < ts.times.size(); ++i)
    for (std::size_t k = 0; k < nq; ++k)
      *out << format_full(ts.times[i]) << ',' << format_full(ts.qs[k]) << ','
           << format_full(ts.S[i * nq + k]) << ',' << format_full(ts.W[i * nq + k]) << ','
           << format_full(ts.dSdt_analytic[i * nq + k]) << ','
           << format_full(ts.dSdt_fd[i * nq + k]) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase-space localization measures of spin-j pure states"};
  app.set_version_flag("--version", spinloc::kVersion);
  app.require_subcommand(1);

  MeasureArgs ma;
  auto* measure = app.add_subcommand("measure", "moments, entropies and participation ratios");
  measure->add_option("--state", ma.state_file, "state JSON file (coeffs or roots record)");
  measure->add_option("--coherent", ma.coherent, "coherent state center: re[,im] or inf");
  measure->add_option("--jz", ma.jz_m, "Jz eigenstate |m> (m may be half-integer)");
  measure->add_option("--platonic", ma.platonic_tj, "Platonic root state, 2j in {4,6,8,12,20}");
  measure->add_option("--twice-j", ma.twice_j, "2j for --coherent/--jz builtins");
  measure->add_option("--q", ma.qs, "Renyi indices")->expected(-1);
  measure->add_option("--tol", ma.tol, "quadrature relative tolerance");
  measure->add_option("--format", ma.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  measure->add_option("--out", ma.out, "output path (default stdout)");

  RandomArgs ra;
  auto* random = app.add_subcommand("random", "Haar-random ensemble averages vs exact values");
  random->add_option("--dim", ra.dim, "Hilbert dimension N = 2j+1")->required();
  random->add_option("--q", ra.qs, "Renyi indices (q=1 averages S, else W^(q))")->expected(-1);
  random->add_option("--samples", ra.samples, "number of samples");
  random->add_option("--seed", ra.seed, "master seed (recorded in output)");
  random->add_option("--out", ra.out, "output path (default stdout)");

  MapsArgs pa;
  auto* maps = app.add_subcommand("maps", "entropy-reducing maps and the theorem2 driver");
  maps->add_option("--state", pa.state_file, "input state JSON file")->required();
  maps->add_option("--map", pa.map, "f1|f1prime|f2|f3|theorem2");
  maps->add_option("--q", pa.q, "moment order for theorem2");
  maps->add_option("--max-iters", pa.max_iters, "iteration cap for theorem2");
  maps->add_option("--step", pa.step, "geodesic fraction for f3, in (0,1]");
  maps->add_option("--out", pa.out, "output path (default stdout)");

  DynamicsArgs da;
  auto* dynamics = app.add_subcommand("dynamics", "entropy time series under a Hamiltonian");
  dynamics->add_option("--state", da.state_file, "input state JSON file")->required();
  dynamics->add_option("--hamiltonian", da.hamiltonian,
                       "jz | jx | rotation:a,b_re,b_im | JSON file");
  dynamics->add_option("--t-max", da.t_max, "final time");
  dynamics->add_option("--steps", da.steps, "number of time steps");
  dynamics->add_option("--q", da.qs, "Renyi indices")->expected(-1);
  dynamics->add_option("--tol", da.tol, "quadrature relative tolerance");
  dynamics->add_option("--out", da.out, "output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the full acceptance suite");

  std::string config;
  for (int i = 1; i < argc; ++i) config += std::string(argv[i]) + " ";

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" || e.get_name() == "CallForVersion" ? 0 : 2;
  }

  OutputMeta meta;
  meta.config = config;
  meta.seed = ra.seed;

  try {
    if (*measure) return cmd_measure(ma, meta);
    if (*random) return cmd_random(ra, meta);
    if (*maps) return cmd_maps(pa, meta);
    if (*dynamics) return cmd_dynamics(da, meta);
    if (*verify) {
      const auto results = spinloc::run_acceptance();
      return spinloc::report_acceptance(results, std::cout) == 0 ? 0 : 4;
    }
  } catch (const spinloc::NumericalDegeneracy& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const spinloc::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
