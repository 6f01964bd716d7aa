#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "anyon/config.hpp"
#include "anyon/fock.hpp"
#include "anyon/jacobi.hpp"

namespace anyon {

/// Deterministic generator for the verification suites; splitmix64 driving a
/// spare-less Box-Muller, so sequences are identical across platforms.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double normal();
  cplx cnormal() {
    double re = normal();
    double im = normal();
    return {re, im};
  }

 private:
  std::uint64_t state_;
};

struct CheckResult {
  std::string check_id;
  std::string paper_anchor;  // claim identifier used by the report schema
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string config_digest;
  long runtime_ms = 0;
};

struct Report {
  Config config;
  std::vector<CheckResult> checks;
  int n_passed = 0;
  int n_failed = 0;

  nlohmann::json to_json() const;
};

/// One CheckResult per phase (or per sub-claim) for each suite.
std::vector<CheckResult> check_projection(const Config& cfg);
std::vector<CheckResult> check_isometry(const Config& cfg);
std::vector<CheckResult> check_intertwining(const Config& cfg);
std::vector<CheckResult> check_acr(const Config& cfg);
std::vector<CheckResult> check_meixner_characterization(const Config& cfg);
std::vector<CheckResult> check_gaussian_poisson_collapse(const Config& cfg);
std::vector<CheckResult> check_oracle_equivalence(const Config& cfg);
std::vector<CheckResult> check_orthopoly_roundtrip(const Config& cfg);

/// Run the selected suites; deterministic given (config, seed).
Report run_all(const Config& cfg);

/// Helpers shared with tests.
Tensor random_tensor(TestRng& rng, int degree, const Grid& grid);
std::vector<cplx> random_site_fn(TestRng& rng, const Grid& grid,
                                 bool real_valued);
ExtFockVector random_ext_vector(TestRng& rng, const Grid& grid,
                                const Phase& phase, int n_max, int top_degree,
                                bool symmetrized);

std::string phase_label(const Phase& p);

}  // namespace anyon
