#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace tait {

// The five three-parameter conic families.
enum class Family { circle, hooke, kepler, vparabola, flinear };

inline constexpr std::array<Family, 5> all_families = {Family::circle, Family::hooke, Family::kepler,
                                                       Family::vparabola, Family::flinear};

inline constexpr std::string_view family_name(Family f) {
  switch (f) {
    case Family::circle: return "circle";
    case Family::hooke: return "hooke";
    case Family::kepler: return "kepler";
    case Family::vparabola: return "vparabola";
    case Family::flinear: return "flinear";
  }
  return "?";
}

inline std::optional<Family> family_from_name(std::string_view name) {
  for (Family f : all_families)
    if (family_name(f) == name) return f;
  return std::nullopt;
}

using Vec3 = std::array<double, 3>;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

}  // namespace tait
