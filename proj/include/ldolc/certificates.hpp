#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ldolc/problem.hpp"
#include "ldolc/trajectory.hpp"

namespace ldolc {

/// Multipliers supporting y_t in the one-period LP
///   max p_t y  s.t.  y <= c_{t-1} + a_{t-1} y_{t-1},  -a_t y <= c_t - y_{t+1},
///                    y <= b,  y >= 0
/// lambda, mu and gamma price the three upper-side constraints in that order.
struct PeriodCertificate {
  std::size_t t = 0;
  Rational lambda;
  Rational mu;
  Rational gamma;
  bool operator==(const PeriodCertificate&) const = default;
};

/// xi = lambda + gamma.
struct ReducedCertificate {
  std::size_t t = 0;
  Rational xi;
  Rational mu;
  bool operator==(const ReducedCertificate&) const = default;
};

/// Multipliers for period t > trajectory.start() by endpoint case analysis.
/// Ties between binding constraints go to the first in the order
/// previous-period, next-period, box. Throws PreconditionError when y_t does
/// not solve its one-period LP, or when the trajectory is infeasible.
PeriodCertificate compute_certificate(const Problem& problem, const Trajectory& trajectory,
                                      std::size_t t);

/// Certificates for t = start+1 .. through (default: trajectory.last()).
std::vector<PeriodCertificate> compute_certificates(const Problem& problem,
                                                    const Trajectory& trajectory,
                                                    std::optional<std::size_t> through = {});

ReducedCertificate reduce_certificate(const PeriodCertificate& certificate);

struct PeriodChecks {
  std::size_t t = 0;
  bool nonnegative = false;
  bool primal_feasible = false;
  bool slack_previous = false;  ///< lambda (c_{t-1} + a_{t-1} y_{t-1} - y_t) = 0
  bool slack_next = false;      ///< mu (c_t - y_{t+1} + a_t y_t) = 0
  bool slack_box = false;       ///< gamma (b - y_t) = 0
  bool stationarity = false;    ///< lambda - a_t mu + gamma >= p_t
  bool value_equality = false;  ///< (lambda - a_t mu + gamma) y_t = p_t y_t
  bool idle_upper = false;      ///< lambda = gamma = 0 when a larger y is feasible
  bool reduced = false;         ///< reduced form keeps stationarity and value equality
  Rational transversality_term;  ///< (lambda - mu a_t + gamma) y_t

  bool ok() const {
    return nonnegative && primal_feasible && slack_previous && slack_next && slack_box &&
           stationarity && value_equality && idle_upper && reduced;
  }
};

struct CertificateReport {
  std::vector<PeriodChecks> periods;
  bool coverage = false;  ///< certificates for every head period after the start
  /// The transversality sequence vanishes exactly past the head (zero tail)
  /// and is bounded by b |p_t| within it.
  bool transversality = false;
  std::optional<std::string> first_failure;

  bool ok() const { return !first_failure.has_value(); }
};

CertificateReport verify_certificate(const Problem& problem, const Trajectory& trajectory,
                                     const std::vector<PeriodCertificate>& certificates);

}  // namespace ldolc
