#pragma once

#include <string_view>

namespace phasefield {

enum class Model { AllenCahn, CahnHilliard };

enum class SolverKind { Explicit, Implicit };

/// "ac" / "ch".
std::string_view to_string(Model model) noexcept;
Model parse_model(std::string_view text);

/// "explicit" / "implicit".
std::string_view to_string(SolverKind solver) noexcept;
SolverKind parse_solver(std::string_view text);

}  // namespace phasefield
