#include "weyl/spaces.hpp"

namespace weyl {

std::string space_name(SpaceTag t) {
  switch (t) {
    case SpaceTag::GenCurv: return "GenCurv";
    case SpaceTag::Algebraic: return "Algebraic";
    case SpaceTag::Weyl: return "Weyl";
    case SpaceTag::W6: return "W6";
    case SpaceTag::W7: return "W7";
    case SpaceTag::W8: return "W8";
    case SpaceTag::Sym: return "Sym";
    case SpaceTag::Sym0: return "Sym0";
    case SpaceTag::Alt: return "Alt";
  }
  return "?";
}

std::optional<SpaceTag> space_from_name(const std::string& name) {
  if (name == "GenCurv" || name == "R") return SpaceTag::GenCurv;
  if (name == "Algebraic" || name == "A") return SpaceTag::Algebraic;
  if (name == "Weyl" || name == "W") return SpaceTag::Weyl;
  if (name == "W6") return SpaceTag::W6;
  if (name == "W7") return SpaceTag::W7;
  if (name == "W8") return SpaceTag::W8;
  if (name == "Sym" || name == "S2") return SpaceTag::Sym;
  if (name == "Sym0" || name == "S20") return SpaceTag::Sym0;
  if (name == "Alt" || name == "L2") return SpaceTag::Alt;
  return std::nullopt;
}

}  // namespace weyl
