#include "phasefield/model.hpp"

#include "phasefield/errors.hpp"

#include <string>

namespace phasefield {

std::string_view to_string(Model model) noexcept { return model == Model::AllenCahn ? "ac" : "ch"; }

Model parse_model(std::string_view text) {
  if (text == "ac" || text == "allen_cahn") return Model::AllenCahn;
  if (text == "ch" || text == "cahn_hilliard") return Model::CahnHilliard;
  throw InvalidArgument("unknown model '" + std::string(text) + "' (expected ac or ch)");
}

std::string_view to_string(SolverKind solver) noexcept {
  return solver == SolverKind::Explicit ? "explicit" : "implicit";
}

SolverKind parse_solver(std::string_view text) {
  if (text == "explicit") return SolverKind::Explicit;
  if (text == "implicit") return SolverKind::Implicit;
  throw InvalidArgument("unknown solver '" + std::string(text) + "' (expected explicit or implicit)");
}

}  // namespace phasefield
