#include "anyon/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "anyon/qsym.hpp"

namespace anyon {

using nlohmann::json;

namespace {

const std::vector<std::string> kAllSuites = {
    "projection", "isometry", "intertwining", "acr",
    "meixner",    "collapse", "oracle",       "orthopoly"};

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

int require_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int>();
}

}  // namespace

Mutation mutation_from_string(const std::string& s) {
  if (s == "none") return Mutation::None;
  if (s == "drop_induced_permutation") return Mutation::DropInducedPermutation;
  if (s == "unit_c_coeffs") return Mutation::UnitCCoeffs;
  if (s == "omit_j_minus1") return Mutation::OmitJMinus1;
  if (s == "acr_boson_diagonal") return Mutation::AcrBosonDiagonal;
  if (s == "perturb_meixner_eta") return Mutation::PerturbMeixnerEta;
  throw ConfigError("mutation", "unknown mutation '" + s + "'");
}

std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::None:
      return "none";
    case Mutation::DropInducedPermutation:
      return "drop_induced_permutation";
    case Mutation::UnitCCoeffs:
      return "unit_c_coeffs";
    case Mutation::OmitJMinus1:
      return "omit_j_minus1";
    case Mutation::AcrBosonDiagonal:
      return "acr_boson_diagonal";
    case Mutation::PerturbMeixnerEta:
      return "perturb_meixner_eta";
  }
  return "none";
}

Grid Config::make_grid() const { return Grid(dim, grid_points, weight); }

NuSpec Config::make_nu() const {
  if (nu_kind == "point_mass") return NuSpec::point_mass(nu_lambda);
  if (nu_kind == "meixner")
    return NuSpec::meixner(nu_lambda, nu_eta, nu_quad_points);
  return NuSpec::from_atoms(nu_atoms);
}

std::vector<Phase> Config::make_phases() const {
  std::vector<Phase> out;
  out.reserve(thetas.size());
  for (double t : thetas) out.emplace_back(t);
  return out;
}

bool suite_selected(const Config& c, const std::string& name) {
  if (c.suites.empty()) return true;
  return std::find(c.suites.begin(), c.suites.end(), name) != c.suites.end();
}

Config config_from_json(const json& j) {
  Config c;
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  if (!j.contains("version")) throw ConfigError("version", "missing");
  c.version = require_int(j.at("version"), "version");
  if (c.version != 1) throw ConfigError("version", "unsupported version");

  if (!j.contains("grid")) throw ConfigError("grid", "missing");
  const json& g = j.at("grid");
  c.dim = g.contains("dim") ? require_int(g.at("dim"), "grid.dim") : 1;
  if (c.dim < 1 || c.dim > 3)
    throw ConfigError("grid.dim", "dim must be 1..3");
  if (g.contains("points")) {
    for (const auto& p : g.at("points")) {
      Point pt;
      if (p.is_array())
        for (const auto& x : p) pt.push_back(require_number(x, "grid.points"));
      else
        pt.push_back(require_number(p, "grid.points"));
      if (static_cast<int>(pt.size()) != c.dim)
        throw ConfigError("grid.points", "point arity != dim");
      c.grid_points.push_back(std::move(pt));
    }
  } else if (g.contains("axes")) {
    std::vector<std::vector<double>> axes;
    for (const auto& ax : g.at("axes")) {
      std::vector<double> vals;
      if (ax.contains("points")) {
        for (const auto& x : ax.at("points"))
          vals.push_back(require_number(x, "grid.axes.points"));
      } else if (ax.contains("count")) {
        const int count = require_int(ax.at("count"), "grid.axes.count");
        const double spacing =
            ax.contains("spacing")
                ? require_number(ax.at("spacing"), "grid.axes.spacing")
                : 1.0;
        const double origin =
            ax.contains("origin")
                ? require_number(ax.at("origin"), "grid.axes.origin")
                : 0.0;
        if (count < 1) throw ConfigError("grid.axes.count", "must be >= 1");
        for (int i = 0; i < count; ++i) vals.push_back(origin + spacing * i);
      } else {
        throw ConfigError("grid.axes", "axis needs points or count/spacing");
      }
      axes.push_back(std::move(vals));
    }
    if (static_cast<int>(axes.size()) != c.dim)
      throw ConfigError("grid.axes", "axis count != dim");
    // cartesian product, lexicographic
    std::vector<Point> pts{{}};
    for (const auto& ax : axes) {
      std::vector<Point> next;
      for (const auto& prefix : pts)
        for (double v : ax) {
          Point p = prefix;
          p.push_back(v);
          next.push_back(std::move(p));
        }
      pts = std::move(next);
    }
    c.grid_points = std::move(pts);
  } else {
    throw ConfigError("grid", "needs points or axes");
  }
  c.weight =
      g.contains("weight") ? require_number(g.at("weight"), "grid.weight") : 1.0;
  if (c.weight <= 0.0) throw ConfigError("grid.weight", "must be positive");

  if (!j.contains("phase")) throw ConfigError("phase", "missing");
  const json& ph = j.at("phase");
  c.thetas.clear();
  if (ph.contains("theta_list")) {
    for (const auto& t : ph.at("theta_list"))
      c.thetas.push_back(require_number(t, "phase.theta_list"));
  } else if (ph.contains("theta")) {
    c.thetas.push_back(require_number(ph.at("theta"), "phase.theta"));
  } else {
    throw ConfigError("phase", "needs theta or theta_list");
  }
  if (c.thetas.empty()) throw ConfigError("phase.theta_list", "empty");

  if (!j.contains("nu")) throw ConfigError("nu", "missing");
  const json& nu = j.at("nu");
  if (!nu.contains("kind")) throw ConfigError("nu.kind", "missing");
  c.nu_kind = nu.at("kind").get<std::string>();
  if (c.nu_kind == "point_mass") {
    c.nu_lambda = require_number(nu.at("lambda"), "nu.lambda");
  } else if (c.nu_kind == "meixner") {
    c.nu_lambda = require_number(nu.at("lambda"), "nu.lambda");
    c.nu_eta = require_number(nu.at("eta"), "nu.eta");
    if (c.nu_eta < 0) throw ConfigError("nu.eta", "must be >= 0");
    c.nu_quad_points = nu.contains("quad_points")
                           ? require_int(nu.at("quad_points"), "nu.quad_points")
                           : 5;
    if (c.nu_quad_points < 1)
      throw ConfigError("nu.quad_points", "must be >= 1");
  } else if (c.nu_kind == "atoms") {
    if (!nu.contains("atoms")) throw ConfigError("nu.atoms", "missing");
    for (const auto& a : nu.at("atoms")) {
      if (!a.is_array() || a.size() != 2)
        throw ConfigError("nu.atoms", "each atom is [s, mass]");
      c.nu_atoms.push_back({require_number(a.at(0), "nu.atoms.s"),
                            require_number(a.at(1), "nu.atoms.mass")});
    }
  } else {
    throw ConfigError("nu.kind", "unknown kind '" + c.nu_kind + "'");
  }

  if (!j.contains("n_max")) throw ConfigError("n_max", "missing");
  c.n_max = require_int(j.at("n_max"), "n_max");
  if (c.n_max < 1 || c.n_max > kSymDegreeCap)
    throw ConfigError("n_max", "must be 1..6");

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    auto opt = [&](const char* key, double& dst) {
      if (t.contains(key))
        dst = require_number(t.at(key), std::string("tolerances.") + key);
    };
    opt("algebraic", c.tol.algebraic);
    opt("analytic", c.tol.analytic);
    opt("acr", c.tol.acr);
    opt("roundtrip", c.tol.roundtrip);
    opt("pnorm", c.tol.pnorm);
    opt("witness_floor", c.tol.witness_floor);
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
      throw ConfigError("seed", "expected an integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("trials")) {
    c.trials = require_int(j.at("trials"), "trials");
    if (c.trials < 1) throw ConfigError("trials", "must be >= 1");
  }
  if (j.contains("suites")) {
    for (const auto& s : j.at("suites")) {
      const std::string name = s.get<std::string>();
      if (std::find(kAllSuites.begin(), kAllSuites.end(), name) ==
          kAllSuites.end())
        throw ConfigError("suites", "unknown suite '" + name + "'");
      c.suites.push_back(name);
    }
    if (c.suites.empty()) throw ConfigError("suites", "empty suite selection");
  }
  if (j.contains("strict")) c.strict = j.at("strict").get<bool>();
  if (j.contains("mutation"))
    c.mutation = mutation_from_string(j.at("mutation").get<std::string>());
  if (j.contains("output") && j.at("output").contains("report"))
    c.report_path = j.at("output").at("report").get<std::string>();

  // cross-field preconditions
  const bool needs_embedding = suite_selected(c, "isometry") ||
                               suite_selected(c, "intertwining") ||
                               suite_selected(c, "oracle");
  const int atom_count =
      c.nu_kind == "meixner"
          ? (c.nu_eta == 0.0 ? 1 : c.nu_quad_points)
          : (c.nu_kind == "point_mass" ? 1
                                       : static_cast<int>(c.nu_atoms.size()));
  if (needs_embedding && c.nu_kind != "point_mass" && c.nu_eta != 0.0 &&
      atom_count <= c.n_max)
    throw ConfigError("nu.quad_points",
                      "isometry/intertwining/oracle suites need more atoms "
                      "than n_max (M > n_max)");
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const Config& c) {
  json grid;
  grid["dim"] = c.dim;
  json pts = json::array();
  for (const auto& p : c.grid_points) pts.push_back(p);
  grid["points"] = pts;
  grid["weight"] = c.weight;

  json nu;
  nu["kind"] = c.nu_kind;
  if (c.nu_kind == "atoms") {
    json atoms = json::array();
    for (const auto& a : c.nu_atoms) atoms.push_back({a.s, a.mass});
    nu["atoms"] = atoms;
  } else {
    nu["lambda"] = c.nu_lambda;
    if (c.nu_kind == "meixner") {
      nu["eta"] = c.nu_eta;
      nu["quad_points"] = c.nu_quad_points;
    }
  }

  json out;
  out["version"] = c.version;
  out["grid"] = grid;
  out["phase"] = {{"theta_list", c.thetas}};
  out["nu"] = nu;
  out["n_max"] = c.n_max;
  out["tolerances"] = {{"algebraic", c.tol.algebraic},
                       {"analytic", c.tol.analytic},
                       {"acr", c.tol.acr},
                       {"roundtrip", c.tol.roundtrip},
                       {"pnorm", c.tol.pnorm},
                       {"witness_floor", c.tol.witness_floor}};
  out["seed"] = c.seed;
  out["trials"] = c.trials;
  out["suites"] = c.suites.empty() ? json(kAllSuites) : json(c.suites);
  out["strict"] = c.strict;
  out["mutation"] = to_string(c.mutation);
  out["output"] = {{"report", c.report_path}};
  return out;
}

std::string config_digest(const Config& c) {
  // the digest pins the computation, not where the report lands
  json j = config_to_json(c);
  j.erase("output");
  return hex64(fnv1a(j.dump()));
}

Config default_config() {
  Config c;
  c.dim = 1;
  c.grid_points = {{0.0}, {1.0}, {2.0}, {3.0}};
  c.weight = 1.0;
  c.thetas = {0.0, M_PI, 0.7, M_PI / 2.0};
  c.nu_kind = "meixner";
  c.nu_lambda = 2.0;
  c.nu_eta = 1.0;
  c.nu_quad_points = 5;
  c.n_max = 3;
  c.seed = 20240901;
  c.trials = 20;
  return c;
}

}  // namespace anyon
