#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "anyon/config.hpp"
#include "anyon/fock.hpp"
#include "anyon/jacobi.hpp"
#include "anyon/verify.hpp"

using nlohmann::json;

namespace {

std::string default_config_path() {
  const char* dir = std::getenv("ANYON_CONFIG_DIR");
  if (dir) return std::string(dir) + "/default.json";
  return "configs/default.json";
}

std::vector<anyon::cplx> parse_values(const std::string& text,
                                      std::size_t expected,
                                      const std::string& what) {
  std::vector<anyon::cplx> out;
  if (!text.empty() && text.front() == '[') {
    json arr = json::parse(text);
    for (const auto& v : arr) out.emplace_back(v.get<double>(), 0.0);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
      out.emplace_back(std::stod(item), 0.0);
  }
  if (out.size() != expected)
    throw anyon::ConfigError(what, "expected " + std::to_string(expected) +
                                       " values, got " +
                                       std::to_string(out.size()));
  return out;
}

void write_matrix_csv(const anyon::OperatorMatrix& m, const std::string& path) {
  std::ofstream out(path);
  out << "row,col,re,im\n";
  out.precision(17);
  for (std::size_t r = 0; r < m.dim; ++r)
    for (std::size_t c = 0; c < m.dim; ++c) {
      const anyon::cplx v = m.at(r, c);
      if (v != anyon::cplx(0.0))
        out << r << ',' << c << ',' << v.real() << ',' << v.imag() << '\n';
    }
}

json matrix_header(const anyon::Config& cfg, const anyon::OperatorMatrix& m,
                   const std::string& op, const json& extra) {
  json h;
  h["version"] = 1;
  h["operator"] = op;
  h["dim"] = m.dim;
  h["degree_offsets"] = m.degree_offset;
  h["basis"] =
      "lexicographic (site,atom)^n tuples per degree; ext operators use "
      "grid^n tuples and columns are images of symmetrized basis tensors";
  h["truncation"] = m.notes;
  h["phase"] = {{"theta_list", cfg.thetas}};
  h["nu"] = anyon::config_to_json(cfg)["nu"];
  h["grid"] = anyon::config_to_json(cfg)["grid"];
  h["n_max"] = cfg.n_max;
  for (auto it = extra.begin(); it != extra.end(); ++it) h[it.key()] = *it;
  return h;
}

/// Dense matrix of an extended-side operator, columns over symmetrized basis
/// tensors of each degree.
anyon::OperatorMatrix assemble_ext_matrix(
    const std::function<anyon::ExtFockVector(const anyon::ExtFockVector&)>& op,
    const anyon::Grid& grid, const anyon::Phase& phase, int n_max,
    std::string notes) {
  anyon::OperatorMatrix m;
  m.notes = std::move(notes);
  m.degree_offset.resize(static_cast<std::size_t>(n_max) + 2);
  std::size_t dim = 0;
  for (int n = 0; n <= n_max; ++n) {
    m.degree_offset[static_cast<std::size_t>(n)] = dim;
    std::size_t sz = 1;
    for (int k = 0; k < n; ++k) sz *= grid.size();
    dim += sz;
  }
  m.degree_offset[static_cast<std::size_t>(n_max) + 1] = dim;
  m.dim = dim;
  m.entries.assign(dim * dim, anyon::cplx(0.0));
  for (int n = 0; n <= n_max; ++n) {
    std::size_t sz = 1;
    for (int k = 0; k < n; ++k) sz *= grid.size();
    for (std::size_t t = 0; t < sz; ++t) {
      anyon::ExtFockVector e = anyon::ExtFockVector::vacuum(n_max, grid);
      e.comp[0].data[0] = anyon::cplx(0.0);
      e.comp[static_cast<std::size_t>(n)].data[t] = anyon::cplx(1.0);
      if (n >= 2)
        e.comp[static_cast<std::size_t>(n)] = anyon::symmetrize(
            e.comp[static_cast<std::size_t>(n)], grid, phase);
      else
        e.comp[static_cast<std::size_t>(n)].is_qsym = true;
      anyon::ExtFockVector img = op(e);
      const std::size_t col = m.degree_offset[static_cast<std::size_t>(n)] + t;
      for (int r = 0; r <= n_max; ++r) {
        const auto& comp_r = img.comp[static_cast<std::size_t>(r)];
        const std::size_t row0 = m.degree_offset[static_cast<std::size_t>(r)];
        for (std::size_t i = 0; i < comp_r.data.size(); ++i)
          if (comp_r.data[i] != anyon::cplx(0.0))
            m.entries[(row0 + i) * dim + col] = comp_r.data[i];
      }
    }
  }
  return m;
}

int cmd_verify(const std::string& config_path, const std::string& out_path,
               const std::vector<std::string>& suites, long long seed_override,
               int strict_flag, bool verbose) {
  anyon::Config cfg = anyon::load_config(config_path);
  if (!suites.empty()) cfg.suites = suites;
  if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
  if (strict_flag == 1) cfg.strict = true;
  if (strict_flag == 2) cfg.strict = false;
  if (!out_path.empty()) cfg.report_path = out_path;

  anyon::Report rep = anyon::run_all(cfg);
  for (const auto& c : rep.checks) {
    if (verbose || !c.passed)
      std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.check_id
                << "  residual=" << c.max_residual << "  tol=" << c.tolerance
                << "\n";
  }
  std::ofstream out(cfg.report_path);
  out << rep.to_json().dump(2) << "\n";
  std::cout << "report: " << cfg.report_path << "  passed=" << rep.n_passed
            << " failed=" << rep.n_failed << "\n";
  return rep.n_failed == 0 ? 0 : 1;
}

int cmd_matrix(const std::string& config_path, const std::string& op,
               const std::string& h_text, const std::string& g_text,
               const std::string& out_prefix) {
  anyon::Config cfg = anyon::load_config(config_path);
  const anyon::Grid grid = cfg.make_grid();
  const anyon::Phase phase(cfg.thetas.front());
  const anyon::NuSpec nu = cfg.make_nu();
  const auto N = grid.size();

  std::vector<anyon::cplx> h;
  if (!h_text.empty()) h = parse_values(h_text, N, "--fn");
  std::vector<anyon::cplx> g;
  if (!g_text.empty())
    g = parse_values(g_text, N * N, "--kernel");
  else if (!h.empty()) {
    g.resize(N * N);
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t y = 0; y < N; ++y) g[x * N + y] = h[x] * h[y];
  }

  anyon::OperatorMatrix m;
  json extra;
  const std::string note =
      "assembled in exploratory mode: raising output beyond n_max dropped";
  if (op == "white_noise" || op.rfind("smear2_", 0) == 0) {
    const anyon::FockSpace ctx(grid, phase, nu, cfg.n_max,
                               anyon::Truncation::Exploratory);
    if (op == "white_noise") {
      if (h.empty()) throw anyon::ConfigError("--fn", "white_noise needs --fn");
      m = anyon::assemble_matrix(
          [&](const anyon::FockGVector& F) {
            return anyon::white_noise_apply(h, F, ctx);
          },
          ctx, false, note);
    } else {
      if (g.empty()) throw anyon::ConfigError("--kernel", op + " needs --kernel or --fn");
      auto kind = [](char c) {
        return c == 'd' ? anyon::PointKind::Dagger : anyon::PointKind::Plain;
      };
      const std::string suffix = op.substr(7);  // e.g. "dagger_plain"
      anyon::PointKind left, right;
      if (suffix == "dagger_dagger") {
        left = right = anyon::PointKind::Dagger;
      } else if (suffix == "dagger_plain") {
        left = kind('d'), right = kind('p');
      } else if (suffix == "plain_dagger") {
        left = kind('p'), right = kind('d');
      } else if (suffix == "plain_plain") {
        left = right = anyon::PointKind::Plain;
      } else {
        throw anyon::ConfigError("--operator", "unknown operator " + op);
      }
      m = anyon::assemble_matrix(
          [&](const anyon::FockGVector& F) {
            return anyon::smear2_apply(g, left, right, F, ctx);
          },
          ctx, false, note);
    }
  } else if (op == "j_plus" || op == "j_zero" || op == "j_minus1" ||
             op == "j_minus2" || op == "j_total") {
    if (h.empty()) throw anyon::ConfigError("--fn", op + " needs --fn");
    auto apply = [&](const anyon::ExtFockVector& F) {
      if (op == "j_plus")
        return anyon::j_plus(h, F, grid, phase, anyon::Truncation::Exploratory);
      if (op == "j_zero") return anyon::j_zero(h, F, grid, phase, nu);
      if (op == "j_minus1") return anyon::j_minus1(h, F, grid, phase, nu);
      if (op == "j_minus2") return anyon::j_minus2(h, F, grid, phase);
      return anyon::j_total(h, F, grid, phase, nu,
                            anyon::Truncation::Exploratory);
    };
    m = assemble_ext_matrix(apply, grid, phase, cfg.n_max, note);
    extra["side"] = "extended";
  } else {
    throw anyon::ConfigError("--operator", "unknown operator " + op);
  }

  write_matrix_csv(m, out_prefix + ".csv");
  std::ofstream hdr(out_prefix + ".json");
  hdr << matrix_header(cfg, m, op, extra).dump(2) << "\n";
  std::cout << "wrote " << out_prefix << ".csv and " << out_prefix
            << ".json (dim " << m.dim << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extended anyon Fock space laboratory"};
  app.require_subcommand(1);

  auto* sub_verify = app.add_subcommand(
      "verify", "run the verification suites and write a JSON report");
  std::string config_path = default_config_path();
  std::string out_path;
  std::vector<std::string> suites;
  long long seed_override = -1;
  bool flag_strict = false, flag_exploratory = false, verbose = false;
  sub_verify->add_option("--config", config_path, "config JSON path");
  sub_verify->add_option("--out", out_path, "report output path");
  sub_verify->add_option("--suite", suites, "suite selection (repeatable)");
  sub_verify->add_option("--seed", seed_override, "seed override");
  sub_verify->add_flag("--strict", flag_strict, "strict truncation policy");
  sub_verify->add_flag("--exploratory", flag_exploratory,
                       "drop-on-truncation policy");
  sub_verify->add_flag("--verbose", verbose, "print every check line");

  auto* sub_matrix = app.add_subcommand(
      "matrix", "dump an operator matrix as CSV plus a JSON header");
  std::string mx_config = default_config_path();
  std::string mx_op, mx_h, mx_g, mx_out = "matrix";
  sub_matrix->add_option("--config", mx_config, "config JSON path");
  sub_matrix->add_option("--operator", mx_op, "operator name")->required();
  sub_matrix->add_option("--fn", mx_h, "site function values (comma list)");
  sub_matrix->add_option("--kernel", mx_g, "two-site kernel values, row-major");
  sub_matrix->add_option("--out", mx_out, "output path prefix");

  auto* sub_classify =
      app.add_subcommand("classify", "classify a (lambda, eta) pair");
  double cl_lambda = 0.0, cl_eta = 0.0;
  sub_classify->add_option("--lambda", cl_lambda, "lambda")->required();
  sub_classify->add_option("--eta", cl_eta, "eta (>= 0)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sub_verify->parsed()) {
      int strict_flag = 0;
      if (flag_strict) strict_flag = 1;
      if (flag_exploratory) strict_flag = 2;
      return cmd_verify(config_path, out_path, suites, seed_override,
                        strict_flag, verbose);
    }
    if (sub_matrix->parsed())
      return cmd_matrix(mx_config, mx_op, mx_h, mx_g, mx_out);
    if (sub_classify->parsed()) {
      std::cout << anyon::to_string(anyon::classify_meixner(cl_lambda, cl_eta))
                << "\n";
      return 0;
    }
  } catch (const anyon::ConfigError& e) {
    std::cerr << "config error at '" << e.field << "': " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
