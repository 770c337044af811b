#pragma once

#include "phasefield/grid.hpp"

#include <optional>
#include <string_view>

namespace phasefield {

/// Eyre convex splitting of the Landau quartic.
///
/// Only the T phi^2 term is split: a fraction xi of it goes to the explicit
/// (expansive) part together with phi^4 and h phi, and (1 - xi) stays in the
/// implicit (contractive) part with the gradient energy. Unconditional
/// gradient stability then requires, per cell,
///
///   T < 0 :  xi >= (T - 12 phi_max^2) / (2 T)
///   T > 0 :  xi <= -6 phi_max^2 / T
///
/// or equivalently (1 - xi) T >= (T + 12 phi_max^2) / 2 for T < 0 and
/// (1 - xi) T >= T + 6 phi_max^2 for T > 0.

enum class SplitDirection { AtLeast, AtMost };

struct CriticalSplit {
  double xi;
  SplitDirection direction;
};

enum class SplittingMode {
  Literal,             // per-cell xi at its own critical value
  UniformCoefficient,  // per-cell xi chosen so (1 - xi) T is the same everywhere
};

std::string_view to_string(SplittingMode mode) noexcept;
SplittingMode parse_splitting_mode(std::string_view text);

struct SplittingPolicy {
  double safety_factor = 1.0;  // multiplies max |phi|
  double margin = 0.0;         // pushed past xi_cri in the stable direction
  double xi_at_zero_T = 1.0;   // used where T == 0
  SplittingMode mode = SplittingMode::Literal;

  void validate() const;
};

/// safety_factor * max |phi|.
double phi_max_estimate(const Field& phi, const SplittingPolicy& policy);

/// Critical weight and its stable direction; nullopt when T == 0.
std::optional<CriticalSplit> xi_critical(double T, double phi_max) noexcept;

/// Lower bound on the implicit coefficient (1 - xi) T implied by the
/// stability condition. Zero for T == 0.
double implicit_coefficient_floor(double T, double phi_max) noexcept;

/// True when xi satisfies the stability inequality for this T (T == 0 is
/// always accepted).
bool satisfies_split_condition(double xi, double T, double phi_max, double rel_tol = 1e-12) noexcept;

/// Per-cell splitting weight for the current field. Throws InvalidArgument
/// in UniformCoefficient mode when any T is zero.
Field xi_field(const Field& T, const Field& phi, const SplittingPolicy& policy);

}  // namespace phasefield
