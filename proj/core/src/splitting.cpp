#include "phasefield/splitting.hpp"

#include "phasefield/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace phasefield {

std::string_view to_string(SplittingMode mode) noexcept {
  return mode == SplittingMode::Literal ? "literal" : "uniform_coefficient";
}

SplittingMode parse_splitting_mode(std::string_view text) {
  if (text == "literal") return SplittingMode::Literal;
  if (text == "uniform_coefficient") return SplittingMode::UniformCoefficient;
  throw InvalidArgument("unknown splitting mode '" + std::string(text) + "'");
}

void SplittingPolicy::validate() const {
  if (!(safety_factor >= 1.0)) throw InvalidArgument("splitting safety_factor must be >= 1");
  if (!(margin >= 0.0)) throw InvalidArgument("splitting margin must be >= 0");
  if (!std::isfinite(xi_at_zero_T)) throw InvalidArgument("splitting xi_at_zero_T must be finite");
}

double phi_max_estimate(const Field& phi, const SplittingPolicy& policy) {
  return policy.safety_factor * max_abs(phi);
}

std::optional<CriticalSplit> xi_critical(double T, double phi_max) noexcept {
  const double p2 = phi_max * phi_max;
  if (T < 0.0) return CriticalSplit{(T - 12.0 * p2) / (2.0 * T), SplitDirection::AtLeast};
  if (T > 0.0) return CriticalSplit{-6.0 * p2 / T, SplitDirection::AtMost};
  return std::nullopt;
}

double implicit_coefficient_floor(double T, double phi_max) noexcept {
  const double p2 = phi_max * phi_max;
  if (T < 0.0) return 0.5 * (T + 12.0 * p2);
  if (T > 0.0) return T + 6.0 * p2;
  return 0.0;
}

bool satisfies_split_condition(double xi, double T, double phi_max, double rel_tol) noexcept {
  const auto critical = xi_critical(T, phi_max);
  if (!critical) return true;
  const double slack = rel_tol * std::max(1.0, std::abs(critical->xi));
  return critical->direction == SplitDirection::AtLeast ? xi >= critical->xi - slack : xi <= critical->xi + slack;
}

Field xi_field(const Field& T, const Field& phi, const SplittingPolicy& policy) {
  require_same_shape(T, phi, "xi_field");
  const double phi_max = phi_max_estimate(phi, policy);
  const Matrix& t = T.values();
  Matrix xi(t.rows(), t.cols());

  if (policy.mode == SplittingMode::Literal) {
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) {
        const auto critical = xi_critical(t(i, j), phi_max);
        if (!critical) {
          xi(i, j) = policy.xi_at_zero_T;
        } else if (critical->direction == SplitDirection::AtLeast) {
          xi(i, j) = critical->xi + policy.margin;
        } else {
          xi(i, j) = critical->xi - policy.margin;
        }
      }
    }
    return T.with_values(std::move(xi));
  }

  // UniformCoefficient: one implicit coefficient c = (1 - xi) T for all cells,
  // the largest per-cell floor so every cell stays on its stable side.
  double c = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    for (Eigen::Index j = 0; j < t.cols(); ++j) {
      if (t(i, j) == 0.0) {
        throw InvalidArgument("uniform_coefficient splitting needs T != 0 in every cell");
      }
      c = std::max(c, implicit_coefficient_floor(t(i, j), phi_max) + policy.margin * std::abs(t(i, j)));
    }
  }
  xi = (1.0 - c / t.array()).matrix();
  return T.with_values(std::move(xi));
}

}  // namespace phasefield
