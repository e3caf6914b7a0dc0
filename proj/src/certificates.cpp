#include "ldolc/certificates.hpp"

#include <map>

#include "ldolc/errors.hpp"

namespace ldolc {

namespace {

struct LocalLp {
  Rational y;
  Rational y_next;
  Rational previous_bound;  // c_{t-1} + a_{t-1} y_{t-1}
  Rational next_slack;      // c_t - y_{t+1} + a_t y_t
  Coefficients k;
};

LocalLp local_lp(const Problem& problem, const Trajectory& trajectory, std::size_t t) {
  LocalLp lp;
  lp.y = trajectory.at(t);
  lp.y_next = trajectory.at(t + 1);
  lp.previous_bound = problem.reach(t - 1, trajectory.at(t - 1));
  lp.k = problem.at(t);
  lp.next_slack = lp.k.c - lp.y_next + lp.k.a * lp.y;
  return lp;
}

std::string at_period(const std::string& what, std::size_t t) {
  return what + " at t=" + std::to_string(t);
}

}  // namespace

PeriodCertificate compute_certificate(const Problem& problem, const Trajectory& trajectory,
                                      std::size_t t) {
  if (t <= trajectory.start()) throw PreconditionError(at_period("certificate needs t > start", t));
  if (!is_feasible(problem, trajectory).feasible) {
    throw PreconditionError("certificate requested for an infeasible trajectory");
  }
  const LocalLp lp = local_lp(problem, trajectory, t);
  const Rational& p = lp.k.p;
  const Rational& a = lp.k.a;
  PeriodCertificate cert{t, 0, 0, 0};
  if (p == 0) return cert;

  if (p > 0) {
    // y_t must sit at the smallest upper bound.
    Rational upper = min(lp.previous_bound, problem.b);
    std::optional<Rational> next_bound;
    if (a < 0) {
      next_bound = (lp.y_next - lp.k.c) / a;
      upper = min(upper, *next_bound);
    }
    if (lp.y != upper) {
      throw PreconditionError(at_period("y_t below its upper bound while p_t > 0", t));
    }
    if (lp.y == lp.previous_bound) {
      cert.lambda = p;
    } else if (next_bound && lp.y == *next_bound) {
      cert.mu = -p / a;
    } else {
      cert.gamma = p;
    }
    return cert;
  }

  // p < 0: y_t must sit at the largest lower bound.
  Rational lower = 0;
  if (a > 0) lower = max(lower, Rational((lp.y_next - lp.k.c) / a));
  if (lp.y != lower) {
    throw PreconditionError(at_period("y_t above its lower bound while p_t < 0", t));
  }
  if (lp.y > 0) cert.mu = -p / a;
  return cert;
}

std::vector<PeriodCertificate> compute_certificates(const Problem& problem,
                                                    const Trajectory& trajectory,
                                                    std::optional<std::size_t> through) {
  const std::size_t last = through.value_or(trajectory.last());
  std::vector<PeriodCertificate> certificates;
  for (std::size_t t = trajectory.start() + 1; t <= last; ++t) {
    certificates.push_back(compute_certificate(problem, trajectory, t));
  }
  return certificates;
}

ReducedCertificate reduce_certificate(const PeriodCertificate& certificate) {
  return {certificate.t, certificate.lambda + certificate.gamma, certificate.mu};
}

CertificateReport verify_certificate(const Problem& problem, const Trajectory& trajectory,
                                     const std::vector<PeriodCertificate>& certificates) {
  CertificateReport report;
  auto fail = [&report](std::string message) {
    if (!report.first_failure) report.first_failure = std::move(message);
  };

  std::map<std::size_t, const PeriodCertificate*> by_period;
  for (const auto& cert : certificates) {
    if (cert.t <= trajectory.start() || !by_period.emplace(cert.t, &cert).second) {
      fail(at_period("certificate for an invalid or repeated period", cert.t));
    }
  }
  report.coverage = true;
  for (std::size_t t = trajectory.start() + 1; t <= trajectory.last(); ++t) {
    if (!by_period.contains(t)) {
      report.coverage = false;
      fail(at_period("missing certificate", t));
      break;
    }
  }

  report.transversality = true;
  for (const auto& [t, cert] : by_period) {
    const LocalLp lp = local_lp(problem, trajectory, t);
    const Rational& a = lp.k.a;
    PeriodChecks checks;
    checks.t = t;
    checks.nonnegative = cert->lambda >= 0 && cert->mu >= 0 && cert->gamma >= 0;
    checks.primal_feasible = lp.y >= 0 && lp.y <= problem.b && lp.y <= lp.previous_bound &&
                             lp.next_slack >= 0;
    checks.slack_previous = cert->lambda * (lp.previous_bound - lp.y) == 0;
    checks.slack_next = cert->mu * lp.next_slack == 0;
    checks.slack_box = cert->gamma * (problem.b - lp.y) == 0;
    const Rational support = cert->lambda - a * cert->mu + cert->gamma;
    checks.stationarity = support >= lp.k.p;
    checks.value_equality = support * lp.y == lp.k.p * lp.y;

    const auto room = feasible_interval_at(problem, t, trajectory.at(t - 1), lp.y_next);
    const bool larger_feasible = room && room->hi > lp.y;
    checks.idle_upper = !larger_feasible || (cert->lambda == 0 && cert->gamma == 0);

    const ReducedCertificate reduced = reduce_certificate(*cert);
    const Rational reduced_support = reduced.xi - a * reduced.mu;
    checks.reduced = reduced.xi >= 0 && reduced_support >= lp.k.p &&
                     reduced_support * lp.y == lp.k.p * lp.y;

    checks.transversality_term = support * lp.y;
    const bool bounded = abs(checks.transversality_term) <= abs(lp.k.p) * problem.b;
    const bool vanishes = t <= trajectory.last() || checks.transversality_term == 0;
    if (!bounded || !vanishes) {
      report.transversality = false;
      fail(at_period("transversality term out of bounds", t));
    }
    if (!checks.ok()) {
      const char* which = !checks.nonnegative       ? "negative multiplier"
                          : !checks.primal_feasible ? "y_t infeasible for its LP"
                          : !checks.slack_previous  ? "complementary slackness (previous-period bound)"
                          : !checks.slack_next      ? "complementary slackness (next-period bound)"
                          : !checks.slack_box       ? "complementary slackness (box bound)"
                          : !checks.stationarity    ? "stationarity"
                          : !checks.value_equality  ? "value equality"
                          : !checks.idle_upper      ? "upper multipliers nonzero with slack above y_t"
                                                    : "reduced certificate";
      fail(at_period(which, t));
    }
    report.periods.push_back(std::move(checks));
  }
  return report;
}

}  // namespace ldolc
