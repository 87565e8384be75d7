#include "dynrigid/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "dynrigid/deformation.hpp"
#include "dynrigid/functionals.hpp"
#include "dynrigid/io.hpp"
#include "dynrigid/lazutkin.hpp"
#include "dynrigid/orbits.hpp"

namespace dynrigid {

namespace {

namespace fs = std::filesystem;
using io::fmt;

DomainSpec load_spec(const RunConfig& cfg) {
  if (cfg.domain_file.empty()) throw Error(ErrorKind::ParseError, "--domain is required");
  DomainSpec s = io::load_domain(cfg.domain_file);
  if (cfg.samples != 0) s.n_samples = cfg.samples;
  return s;
}

fs::path prepare_out(const RunConfig& cfg) {
  const fs::path dir = cfg.out_dir.empty() ? default_out_dir() : cfg.out_dir;
  fs::create_directories(dir);
  return dir;
}

std::string config_hash(const std::string& command, const std::string& payload) {
  return io::hash_hex(command + '|' + payload);
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

fs::path default_out_dir() {
  if (const char* env = std::getenv("DYNRIGID_OUT_DIR"); env && *env) return env;
  return "dynrigid_out";
}

int exit_code_for(ErrorKind kind) { return kind == ErrorKind::ParseError ? kExitParse : kExitInvariant; }

int guarded(const std::function<int()>& fn, std::ostream& err) {
  try {
    return fn();
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const DomainSpec spec = load_spec(cfg);
  const BoundaryTables t = build_domain(spec);
  const double delta = closeness_to_circle(t);
  out << std::setprecision(12);
  out << "status: ok\n";
  out << "raw_perimeter: " << 2.0 * std::numbers::pi * spec.coeff(0) << '\n';
  out << "perimeter: " << t.perimeter << '\n';
  out << "min_rho: " << t.min_rho() << '\n';
  out << "delta: " << delta << '\n';
  out << "n_samples: " << t.n_samples << '\n';
  return kExitOk;
}

int cmd_orbits(const RunConfig& cfg, std::ostream& out) {
  if (cfg.qmax < 2) throw Error(ErrorKind::ParseError, "--qmax must be >= 2");
  const DomainSpec spec = load_spec(cfg);
  const BoundaryTables t = build_domain(spec);
  const fs::path dir = prepare_out(cfg);
  const std::string hash = config_hash("orbits", io::canonical(spec) + ";qmax=" + std::to_string(cfg.qmax));

  io::CsvWriter summary(dir / "orbits_summary.csv", hash,
                        {"q", "length", "grad_residual", "reflection_residual", "closure_residual",
                         "symmetry_residual", "certified", "status"});
  int failures = 0;
  for (int q = 2; q <= cfg.qmax; ++q) {
    try {
      const SymmetricOrbit o = find_symmetric_orbit(t, q);
      const OrbitCertificate c = verify_orbit(t, o);
      io::CsvWriter w(dir / ("orbit_q" + std::to_string(q) + ".csv"), hash, {"k", "s", "psi", "phi"});
      for (int k = 0; k < q; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        w.row({std::to_string(k), fmt(o.s_points[kk]), fmt(o.psi_points[kk]), fmt(o.phi_angles[kk])});
      }
      if (!c.passed) ++failures;
      summary.row({std::to_string(q), fmt(o.length), fmt(o.grad_residual), fmt(c.reflection_residual),
                   fmt(c.closure_residual), fmt(c.symmetry_residual), yes_no(c.passed),
                   c.passed ? "ok" : "uncertified"});
    } catch (const Error& e) {
      ++failures;
      summary.row({std::to_string(q), "nan", "nan", "nan", "nan", "nan", "false", std::string(to_string(e.kind()))});
    }
  }
  io::write_sidecar(dir / "orbits_meta.json", "orbits", hash,
                    {{"domain", cfg.domain_file.string()}, {"qmax", std::to_string(cfg.qmax)},
                     {"n_samples", std::to_string(spec.n_samples)}});
  out << "orbits: " << cfg.qmax - 1 << " requested, " << failures << " failed\n";
  out << "output: " << dir.string() << '\n';
  return failures == 0 ? kExitOk : kExitInvariant;
}

int cmd_operator(const RunConfig& cfg, std::ostream& out) {
  check_gamma(cfg.gamma);
  if (cfg.Q < 2 || cfg.J < 1) throw Error(ErrorKind::ParseError, "need --Q >= 2 and --J >= 1");
  if (cfg.route != "direct" && cfg.route != "model" && cfg.route != "both") {
    throw Error(ErrorKind::ParseError, "--route must be direct, model or both");
  }
  const DomainSpec spec = load_spec(cfg);
  const BoundaryTables t = build_domain(spec);
  const LazutkinTables lz = build_lazutkin(t);
  const fs::path dir = prepare_out(cfg);
  std::ostringstream payload;
  payload << io::canonical(spec) << ";Q=" << cfg.Q << ";J=" << cfg.J << ";gamma=" << fmt(cfg.gamma)
          << ";route=" << cfg.route;
  const std::string hash = config_hash("operator", payload.str());

  const std::vector<int> fit_range = default_fit_range();
  const int qtop = std::max(cfg.Q, fit_range.back());
  std::vector<SymmetricOrbit> orbits;
  for (int q = 2; q <= qtop; ++q) orbits.push_back(find_symmetric_orbit(t, q));

  std::optional<LazutkinFit> fit;
  std::string fit_note = "ok";
  try {
    std::vector<SymmetricOrbit> fo;
    for (int q : fit_range) fo.push_back(orbits[static_cast<std::size_t>(q - 2)]);
    fit = fit_alpha_beta(fo, lz);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::FitUnstable) throw;
    fit_note = e.what();
  }
  if (!fit && cfg.route != "direct") throw Error(ErrorKind::FitUnstable, "model route needs a stable fit: " + fit_note);

  if (fit) {
    io::CsvWriter w(dir / "lazutkin_fit.csv", hash, {"j", "alpha_sin", "beta_cos"});
    const std::size_t n = std::max(fit->alpha_sin.size(), fit->beta_cos.size());
    for (std::size_t j = 0; j < n; ++j) {
      w.row({std::to_string(j), fmt(j < fit->alpha_sin.size() ? fit->alpha_sin[j] : 0.0),
             fmt(j < fit->beta_cos.size() ? fit->beta_cos[j] : 0.0)});
    }
    io::CsvWriter r(dir / "lazutkin_residuals.csv", hash, {"q", "alpha_residual", "beta_residual"});
    for (std::size_t i = 0; i < fit->q_range.size(); ++i) {
      r.row({std::to_string(fit->q_range[i]), fmt(fit->alpha_residual[i]), fmt(fit->beta_residual[i])});
    }
  }

  std::vector<OperatorMatrix> mats;
  if (cfg.route != "model") mats.push_back(assemble_direct(t, lz, orbits, cfg.Q, cfg.J));
  if (cfg.route != "direct") mats.push_back(assemble_model(*fit, lz, cfg.Q, cfg.J));

  out << std::setprecision(10);
  for (const OperatorMatrix& m : mats) {
    const std::string name = to_string(m.route);
    std::vector<std::string> header{"q"};
    for (int j = 0; j <= m.J; ++j) header.push_back("j" + std::to_string(j));
    io::CsvWriter w(dir / ("matrix_" + name + ".csv"), hash, header);
    for (int q = 0; q <= m.Q; ++q) {
      std::vector<std::string> cells{std::to_string(q)};
      for (int j = 0; j <= m.J; ++j) cells.push_back(fmt(m.at(q, j)));
      w.row(cells);
    }

    const GammaNormReport gn = gamma_norm(m.zero_average_block(), cfg.gamma);
    const Decomposition dec = fit ? decompose(m, *fit, lz) : decompose(m, estimate_bullet(m.entries, cfg.gamma));
    const double eps = lz.mu_deviation() + (fit ? fit->magnitude() : 0.0);
    const InjectivityCertificate c = certify_injectivity(dec.T_R, cfg.gamma, eps);
    const GammaNormReport rows = gamma_norm(dec.T_R.block(1, 1, m.Q, m.J) -
                                                Eigen::MatrixXd::Identity(m.Q, m.J),
                                            cfg.gamma);

    io::CsvWriter cw(dir / ("certificate_" + name + ".csv"), hash, {"item", "value"});
    cw.row({"gamma", fmt(c.gamma)});
    cw.row({"Q", std::to_string(c.Q)});
    cw.row({"J", std::to_string(c.J)});
    cw.row({"contraction_norm", fmt(c.contraction_norm)});
    cw.row({"divisibility_norm", fmt(c.divisibility_norm)});
    cw.row({"diagonal_norm", fmt(c.diagonal_norm)});
    cw.row({"remainder_norm", fmt(c.remainder_norm)});
    cw.row({"epsilon", fmt(c.epsilon)});
    cw.row({"diagonal_bound", fmt(c.diagonal_bound)});
    cw.row({"operator_gamma_norm", fmt(gn.norm)});
    cw.row({"passed", yes_no(c.passed)});
    for (std::size_t i = 0; i < rows.per_row_sums.size(); ++i) {
      cw.row({"row_sum_q" + std::to_string(i + 1), fmt(rows.per_row_sums[i])});
    }

    std::ofstream txt(dir / ("certificate_" + name + ".txt"));
    txt << std::setprecision(10) << "# config_hash=" << hash << '\n'
        << "route: " << name << '\n'
        << "truncation: Q=" << c.Q << " J=" << c.J << '\n'
        << "gamma: " << c.gamma << '\n'
        << "||T_R - Id||_gamma: " << c.contraction_norm << '\n'
        << "  ||Delta - Id||_gamma: " << c.divisibility_norm << '\n'
        << "  ||Delta'||_gamma: " << c.diagonal_norm << " (bound " << c.diagonal_bound << ")\n"
        << "  ||R||_gamma: " << c.remainder_norm << '\n'
        << "epsilon: " << c.epsilon << '\n'
        << "l_bullet source: " << (fit ? "lazutkin fit" : "least squares on the matrix (" + fit_note + ")") << '\n'
        << "operator ||T~||_gamma on zero-average block: " << gn.norm << '\n'
        << "tail: " << gn.analytic_tail_note << '\n'
        << "verdict: " << (c.passed ? "passed" : "failed") << '\n';

    out << name << ": contraction_norm=" << c.contraction_norm << " passed=" << yes_no(c.passed) << '\n';
  }

  if (mats.size() == 2) {
    io::CsvWriter w(dir / "route_residual.csv", hash, {"q", "max_abs_diff"});
    double worst = 0.0;
    for (int q = 0; q <= cfg.Q; ++q) {
      const double d = (mats[0].entries.row(q) - mats[1].entries.row(q)).cwiseAbs().maxCoeff();
      worst = std::max(worst, q >= 8 ? d : 0.0);
      w.row({std::to_string(q), fmt(d)});
    }
    out << "route residual (q >= 8): " << worst << '\n';
  }

  io::write_sidecar(dir / "operator_meta.json", "operator", hash,
                    {{"domain", cfg.domain_file.string()}, {"Q", std::to_string(cfg.Q)},
                     {"J", std::to_string(cfg.J)}, {"gamma", fmt(cfg.gamma)}, {"route", cfg.route},
                     {"n_samples", std::to_string(spec.n_samples)}, {"fit", fit_note},
                     {"s_max", std::to_string(kDefaultSMax)}});
  out << "output: " << dir.string() << '\n';
  return kExitOk;
}

int cmd_deform(const RunConfig& cfg, std::ostream& out) {
  if (cfg.family_file.empty()) throw Error(ErrorKind::ParseError, "--family is required");
  if (cfg.qmax < 2) throw Error(ErrorKind::ParseError, "--qmax must be >= 2");
  DeformationFamily f = io::load_family(cfg.family_file);
  if (cfg.samples != 0) f.base.n_samples = cfg.samples;
  f.validate();
  const fs::path dir = prepare_out(cfg);
  const std::string hash = config_hash("deform", io::canonical(f) + ";qmax=" + std::to_string(cfg.qmax));

  const FdOptions fd;
  std::vector<int> qs;
  for (int q = 2; q <= cfg.qmax; ++q) qs.push_back(q);

  io::CsvWriter w(dir / "deform.csv", hash, {"check", "q", "tau", "fd_slope", "functional", "abs_err", "pass"});
  int failures = 0;
  auto record = [&](const std::string& what, int q, double tau, const DerivativeCheck& c) {
    if (!c.passed) ++failures;
    w.row({what, std::to_string(q), fmt(tau), fmt(c.fd_slope), fmt(c.functional),
           fmt(std::abs(c.fd_slope - c.functional)), yes_no(c.passed)});
  };
  for (double tau : f.tau_grid) {
    if (tau - fd.step < f.tau_min || tau + fd.step > f.tau_max) {
      throw Error(ErrorKind::InvalidArgument, "tau " + fmt(tau) + " is not interior to the family range");
    }
    record("perimeter", 0, tau, perimeter_derivative_check(f, tau, fd));
    for (int q : qs) record("length", q, tau, length_derivative_check(f, q, tau, fd));
  }

  io::CsvWriter iso(dir / "isospectral.csv", hash, {"tau", "q", "ell_q_of_n"});
  double largest = 0.0;
  for (const IsospectralRow& row : isospectral_residual(f, qs, f.tau_grid)) {
    for (std::size_t i = 0; i < row.q_set.size(); ++i) iso.row({fmt(row.tau), std::to_string(row.q_set[i]), fmt(row.values[i])});
    largest = std::max(largest, row.max_abs);
  }

  io::write_sidecar(dir / "deform_meta.json", "deform", hash,
                    {{"family", cfg.family_file.string()}, {"qmax", std::to_string(cfg.qmax)},
                     {"step", fmt(fd.step)}, {"tolerance", "1e-6 relative + 1e-9 absolute"}});
  out << std::setprecision(10);
  out << "derivative checks: " << failures << " failed\n";
  out << "max |l_q(n)|: " << largest << '\n';
  out << "output: " << dir.string() << '\n';
  return failures == 0 ? kExitOk : kExitInvariant;
}

}  // namespace dynrigid
