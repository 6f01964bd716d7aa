#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "anyon/grid.hpp"
#include "anyon/orthopoly.hpp"

namespace anyon {

/// Schema violation; `field` is the JSON path of the offending entry.
struct ConfigError : std::runtime_error {
  ConfigError(std::string field_, const std::string& message)
      : std::runtime_error(field_ + ": " + message), field(std::move(field_)) {}
  std::string field;
};

struct Tolerances {
  double algebraic = 1e-12;  // exact identities (projection, closed forms)
  double analytic = 1e-9;    // isometry, intertwining, oracle equivalence
  double acr = 1e-10;
  double roundtrip = 1e-8;      // quadrature recurrence recovery
  double pnorm = 1e-10;         // <p_{k-1},p_{k-1}> = c_k
  double witness_floor = 1e-6;  // non-Meixner witness must deviate this much
};

enum class Mutation {
  None,
  DropInducedPermutation,  // breaks projection (check 1)
  UnitCCoeffs,             // breaks isometry (check 2)
  OmitJMinus1,             // breaks intertwining (check 3)
  AcrBosonDiagonal,        // breaks the smeared dd+ relation (check 4)
  PerturbMeixnerEta,       // breaks the closed-form equality (check 5)
};

Mutation mutation_from_string(const std::string& s);
std::string to_string(Mutation m);

struct Config {
  int version = 1;
  int dim = 1;
  std::vector<Point> grid_points;
  double weight = 1.0;
  std::vector<double> thetas{0.0};
  // nu serialization (one of point_mass / meixner / atoms)
  std::string nu_kind = "meixner";
  double nu_lambda = 2.0;
  double nu_eta = 1.0;
  int nu_quad_points = 5;
  std::vector<Atom> nu_atoms;
  int n_max = 3;
  Tolerances tol;
  std::uint64_t seed = 20240901;
  int trials = 20;
  std::vector<std::string> suites;  // empty means all
  bool strict = true;
  Mutation mutation = Mutation::None;
  std::string report_path = "report.json";

  Grid make_grid() const;
  NuSpec make_nu() const;
  std::vector<Phase> make_phases() const;
};

/// Parse + validate. Throws ConfigError with a field path on violations,
/// including M <= n_max when the isometry/intertwining suites are selected.
Config config_from_json(const nlohmann::json& j);
Config load_config(const std::string& path);

/// Canonical serialization (sorted keys, mutation and suites included);
/// identical configs produce identical digests.
nlohmann::json config_to_json(const Config& c);
std::string config_digest(const Config& c);

/// The bundled default: d=1, N=4, w=1, n_max=3, Meixner(2,1) with M=5,
/// phases {1, -1, e^{i 0.7}, i}, 20 trials, seed fixed.
Config default_config();

bool suite_selected(const Config& c, const std::string& name);

}  // namespace anyon
