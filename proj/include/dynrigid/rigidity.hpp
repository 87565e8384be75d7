#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dynrigid/functionals.hpp"
#include "dynrigid/lazutkin.hpp"

namespace dynrigid {

inline constexpr double kDefaultGamma = 3.5;

/// Throws BadGamma unless 3 < gamma < 4.
void check_gamma(double gamma);

struct GammaNormReport {
  double gamma = kDefaultGamma;
  std::vector<double> per_row_sums;  // index i is row q = i + 1
  double norm = 0.0;
  int Q = 0;
  int J = 0;
  std::string analytic_tail_note;
};

/// sup_q q^gamma sum_j j^-gamma |L_qj|. Row i of `block` is q = first_index + i,
/// column i is j = first_index + i.
GammaNormReport gamma_norm(const Eigen::MatrixXd& block, double gamma, int first_index = 1);

/// Operator norm of `block` acting on a vector with weights (q^gamma on rows).
double weighted_sup(const Eigen::VectorXd& v, double gamma, int first_index = 1);

/// Upper bound for the part of a row sum beyond column J when |L_qj| <= c j^0:
/// sum_{j>J} j^-gamma <= J^{1-gamma} / (gamma - 1).
double zeta_tail_bound(int J, double gamma);

struct Decomposition {
  Eigen::VectorXd b_l;       // T~(1), rows 0..Q
  Eigen::VectorXd b_bullet;  // 1/q^2 for q >= 2
  Eigen::VectorXd bullet;    // l~_bullet(e_j), j = 0..J ([0] unused)
  Eigen::MatrixXd T_R;       // (Q+1) x (J+1); row 0 and column 0 are zero
};

Decomposition decompose(const OperatorMatrix& m, const LazutkinFit& fit, const LazutkinTables& lz);

/// Same with the l~_bullet row supplied directly.
Decomposition decompose(const OperatorMatrix& m, const Eigen::VectorXd& bullet);

struct InjectivityCertificate {
  double gamma = kDefaultGamma;
  double contraction_norm = 0.0;
  bool passed = false;
  double divisibility_norm = 0.0;  // ||Delta - Id||
  double diagonal_norm = 0.0;      // ||Delta'||
  double remainder_norm = 0.0;     // ||R||
  double epsilon = 0.0;
  double diagonal_bound = 0.0;     // ((pi + eps)^2/24 + eps/4) zeta(3)
  std::optional<int> q0;
  int Q = 0;
  int J = 0;
};

/// T_R rows are q = 0..Q (row 0 ignored), columns j = 0..J (column 0 ignored).
/// The resonant diagonal d_q multiplies delta_{q|j}; when not given it is
/// read off as T_R(q, q) - 1.
InjectivityCertificate certify_injectivity(const Eigen::MatrixXd& T_R, double gamma, double epsilon = 0.0,
                                           const std::optional<Eigen::VectorXd>& diagonal = std::nullopt);

struct Q0Report {
  std::optional<int> q0;  // empty: NoQ0InRange
  std::vector<int> candidates;
  std::vector<double> contraction_curve;  // ||T_{q0,R} - Id|| on the block >= q0
  std::vector<double> remainder_curve;    // ||R|| on the block >= q0
  double remainder_exponent = 0.0;        // log-log slope of remainder_curve
  double contraction_exponent = 0.0;
  std::string note;
};

/// Weighted least-squares estimate of c_j in T_qj ~ c_j / q^2 over rows
/// q >= q_min with q not dividing j, weights q^{2 gamma}. Index j = 0..J, [0] = 0.
Eigen::VectorXd estimate_bullet(const Eigen::MatrixXd& entries, double gamma, int q_min = 2);

/// Removes the rank-one part (1/q^2) c_j fitted on rows q >= q0 with q not
/// dividing j, then measures the remaining block.
Q0Report reduce_q0(const OperatorMatrix& m, double gamma, int q0_max = -1);

struct ProbeResult {
  bool found = false;
  int witness_row = -1;
  double value = 0.0;           // (T~ u)_witness
  double weighted_value = 0.0;  // witness^gamma |value| for witness >= 1
  double max_residual = 0.0;    // largest |(T~ u)_q|, reported on failure
};

struct ProbeReport {
  std::vector<ProbeResult> results;
  int failures = 0;
};

/// The witness is row 0 when |(T~ u)_0| > tolerance, otherwise the row q >= 1
/// maximizing q^gamma |(T~ u)_q|. A trial with no row above tolerance is a
/// WitnessNotFound entry.
ProbeReport kernel_probe(const Eigen::MatrixXd& matrix, const std::vector<FourierFunction>& trials,
                         double gamma = kDefaultGamma, double tolerance = 1e-12);

/// Zero-average trial with coefficients j^-gamma r_j, r uniform in [-1, 1]
/// rescaled so that max |r_j| = 1; this gives ||u||_gamma = 1.
FourierFunction random_trial(int J, double gamma, unsigned seed);

}  // namespace dynrigid
