#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unicrit/angles.hpp"
#include "unicrit/dynamics.hpp"

namespace unicrit {

/// Partial sum of T(c) = sum_n (D_z f_c^n(z)|_{z=c})^-1 with convergence
/// diagnostics. decay_ratio is a least-squares geometric fit of the late term
/// magnitudes; tail_bound = decay_ratio * last_term_mag / (1 - decay_ratio)
/// when decay_ratio < 1.
struct TransversalitySum {
  Cplx value{0.0, 0.0};
  int n_terms = 0;
  double last_term_mag = 0.0;
  double tail_bound = 0.0;
  double decay_ratio = 0.0;
  bool short_window = false; // ratio fitted on fewer than 50 terms
  std::map<double, double> beta_sums; // beta -> partial sum of |T|^beta
};

class NonConvergentError : public Error {
public:
  NonConvergentError(std::string msg, TransversalitySum partial_)
      : Error(ErrorKind::non_convergent, std::move(msg)),
        partial(std::move(partial_)) {}
  TransversalitySum partial;
};

inline constexpr int kTransMaxTermsDefault = 20000;

/// Sums the inverse orbit derivatives along the critical value orbit until
/// the fitted geometric tail bound drops below tol or max_terms is reached.
/// Optional betas request the summability partial sums |T|^beta alongside.
/// Throws NonConvergentError when a derivative factor vanishes or the fitted
/// decay ratio over the last 50 terms is >= 0.999.
TransversalitySum transversality_sum(const MapParams& p, double tol,
                                     int max_terms = kTransMaxTermsDefault,
                                     const std::vector<double>& betas = {});

/// |T|^beta(c) = sum_n |D f_c^n(c)|^-beta, beta in (0, 1].
double summability(const MapParams& p, double beta, double tol,
                   int max_terms = kTransMaxTermsDefault);

/// Cross-check of the derivative identity
///   D_c Phi(c) / D_z phi_c(z)|_{z=c} = T(c)
/// through two independent pipelines (parameter-plane jet vs series sum).
struct IdentityReport {
  Cplx lhs{0.0, 0.0};
  Cplx rhs{0.0, 0.0};
  double rel_err = 0.0;
};

IdentityReport verify_derivative_identity(const MapParams& p, double tol);

/// One row of the ray-limit experiment: T evaluated at the parameter-ray
/// sample of potential t. Rows after a ray stall, or whose sum failed, carry
/// ok = false and a note.
struct RayLimitRow {
  double t = 0.0;
  Cplx c{0.0, 0.0};
  Cplx T{0.0, 0.0};
  int n_terms = 0;
  double tail_bound = 0.0;
  double decay_ratio = 0.0;
  bool ok = false;
  std::string note;
};

/// Evaluates T along the parameter ray at the given decreasing potentials.
std::vector<RayLimitRow> ray_limit_transversality(
    int degree, AngleRational angle, const std::vector<double>& potentials,
    double tol);

} // namespace unicrit
