#include "mpsbounds/io.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace mpsbounds {

namespace {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (long r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (long c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const Json& j, int rows, int cols) {
  Mat m(rows, cols);
  if (static_cast<int>(j.size()) != rows) throw InputError("matrix row count mismatch");
  for (int r = 0; r < rows; ++r) {
    const auto& row = j.at(r);
    if (static_cast<int>(row.size()) != cols) throw InputError("matrix column count mismatch");
    for (int c = 0; c < cols; ++c) {
      const auto& entry = row.at(c);
      if (entry.size() != 2) throw InputError("complex entries must be [re, im] pairs");
      m(r, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

}  // namespace

Json mps_to_json(const MPS& mps) {
  Json j;
  j["d"] = mps.phys_dim();
  j["D"] = mps.bond_dim();
  j["N"] = mps.n_sites;
  j["uniform"] = mps.uniform;
  Json sites = Json::array();
  for (const auto& site : mps.sites) {
    Json kraus = Json::array();
    for (const auto& k : site.kraus) kraus.push_back(matrix_to_json(k));
    sites.push_back(std::move(kraus));
  }
  j["sites"] = std::move(sites);
  return j;
}

MPS mps_from_json(const Json& j) {
  try {
    int d = j.at("d").get<int>();
    int bond = j.at("D").get<int>();
    int n = j.at("N").get<int>();
    bool uniform = j.at("uniform").get<bool>();
    const auto& sites = j.at("sites");
    if (uniform && sites.size() != 1)
      throw InputError("uniform MPS must store exactly one site tensor");
    if (!uniform && static_cast<int>(sites.size()) != n)
      throw InputError("site count does not match N");
    std::vector<SiteTensor> parsed;
    for (const auto& site : sites) {
      if (static_cast<int>(site.size()) != d) throw InputError("site has wrong physical dimension");
      std::vector<Mat> kraus;
      for (const auto& k : site) kraus.push_back(matrix_from_json(k, bond, bond));
      parsed.emplace_back(std::move(kraus));
    }
    if (uniform) {
      MPS mps;
      mps.sites = std::move(parsed);
      mps.n_sites = n;
      mps.uniform = true;
      return mps;
    }
    return build_site_dependent(std::move(parsed));
  } catch (const Json::exception& e) {
    throw InputError(fmt::format("malformed MPS file: {}", e.what()));
  }
}

void save_mps(const MPS& mps, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(fmt::format("cannot open '{}' for writing", path));
  out << mps_to_json(mps).dump(2) << "\n";
}

MPS load_mps(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path));
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw InputError(fmt::format("cannot parse '{}': {}", path, e.what()));
  }
  return mps_from_json(j);
}

Json spectrum_to_json(const TransferSpectrum& s) {
  Json j;
  Json evs = Json::array();
  for (const auto& ev : s.eigenvalues) evs.push_back(complex_to_json(ev));
  j["eigenvalues"] = std::move(evs);
  j["gap"] = s.gap;
  j["period"] = s.period;
  j["peripheral_tol"] = s.peripheral_tol;
  return j;
}

Json symmetry_to_json(const SymmetryReport& r) {
  Json j;
  j["J"] = r.j;
  j["m"] = r.m;
  j["p"] = r.p;
  j["q"] = r.q;
  j["gamma"] = r.gamma;
  j["residual"] = r.invariance_residual;
  j["symmetric"] = r.symmetric;
  return j;
}

double in_base(double natural_log_value, LogBase base) {
  return base == LogBase::two ? natural_log_value / std::log(2.0) : natural_log_value;
}

Json entropy_to_json(const EntropyReport& r, int region_len, int n_sites, bool thermodynamic,
                     LogBase base) {
  Json j;
  j["S"] = in_base(r.von_neumann, base);
  Json renyi = Json::object();
  for (const auto& [alpha, value] : r.renyi) renyi[fmt::format("{:g}", alpha)] = in_base(value, base);
  j["renyi"] = std::move(renyi);
  j["log_base"] = base == LogBase::two ? "2" : "e";
  j["L"] = region_len;
  j["N"] = n_sites;
  j["thermodynamic"] = thermodynamic;
  return j;
}

Json canonical_to_json(const CanonicalForm& cf) {
  Json j;
  j["residual"] = cf.residual;
  j["dropped_nilpotent"] = cf.dropped_nilpotent;
  Json blocks = Json::array();
  for (const auto& b : cf.blocks) {
    Json jb;
    jb["D"] = b.bond_dim();
    jb["period"] = b.period;
    jb["weight"] = b.weight;
    jb["scale"] = b.scale;
    jb["multiplicity"] = b.multiplicity;
    Json lam = Json::array();
    for (int i = 0; i < b.lambda.size(); ++i) lam.push_back(b.lambda(i));
    jb["lambda"] = std::move(lam);
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

Json truncation_to_json(const TruncationReport& r) {
  Json j;
  j["D"] = r.bond_dim;
  j["D_t"] = r.bond_dim_t;
  j["L"] = r.region_len;
  j["delta"] = r.delta;
  j["bound_2"] = r.bound_2;
  j["bound_1"] = r.bound_1;
  j["actual_2"] = r.actual_2;
  j["actual_1"] = r.actual_1;
  j["intermediate"] = {{"phi_trace", r.phi_trace},
                       {"lemma9_lhs", r.lemma9_lhs},
                       {"lemma9_rhs", r.lemma9_rhs},
                       {"sigma_dist_2", r.sigma_dist_2},
                       {"sigma_dist_1", r.sigma_dist_1}};
  j["pass"] = {{"bound_2", r.pass_2},
               {"bound_1", r.pass_1},
               {"lemma9", r.pass_lemma9},
               {"lemma10_2", r.pass_lemma10_2},
               {"lemma10_1", r.pass_lemma10_1}};
  return j;
}

Json injectivity_to_json(const InjectivityReport& r) {
  Json j;
  j["D"] = r.bond_dim;
  j["d"] = r.phys_dim;
  j["trials"] = r.trials;
  j["L_min"] = r.l_min;
  j["paper_L"] = r.paper_l;
  Json hist = Json::object();
  for (const auto& [len, count] : r.histogram)
    hist[len < 0 ? "not_reached" : fmt::format("{}", len)] = count;
  j["histogram"] = std::move(hist);
  Json fails = Json::array();
  for (auto s : r.failures) fails.push_back(s);
  j["failures"] = std::move(fails);
  return j;
}

Json theorem1_to_json(const Theorem1Report& r, LogBase base) {
  Json j;
  j["symmetry"] = symmetry_to_json(r.symmetry);
  j["log_p"] = in_base(r.log_p, base);
  j["log_base"] = base == LogBase::two ? "2" : "e";
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"L", e.region_len},
                       {"S", in_base(e.entropy, base)},
                       {"margin", in_base(e.margin, base)},
                       {"pass", e.pass}});
  }
  j["entries"] = std::move(entries);
  j["all_pass"] = r.all_pass;
  return j;
}

Json theorem2_to_json(const Theorem2Report& r) {
  Json j;
  j["L"] = r.region_len;
  j["D"] = r.bond_dim;
  j["D_t"] = r.bond_dim_t;
  j["S_alpha"] = r.s_alpha;
  j["hypothesis_rhs"] = r.hypothesis_rhs;
  j["hypothesis_holds"] = r.hypothesis_holds;
  j["delta"] = r.delta;
  j["epsilon_prime"] = r.epsilon_prime;
  j["formula_distance_1"] = r.formula_distance_1;
  j["boundary_distance_1"] = r.boundary_distance_1;
  j["boundary_N"] = r.boundary_n_sites;
  j["log_delta"] = std::isfinite(r.log_delta) ? Json(r.log_delta) : Json("-inf");
  j["log_delta_rhs"] = r.log_delta_rhs;
  j["pass"] = {{"distance_below_bound", r.distance_below_bound},
               {"distance_below_epsilon", r.distance_below_epsilon},
               {"log_delta", r.log_delta_holds},
               {"first_term_dominates", r.first_term_dominates}};
  return j;
}

}  // namespace mpsbounds
