#include "lbmlift/velocity_set.hpp"

#include <stdexcept>

namespace lbmlift {

std::string_view to_string(VelocitySetId id) {
  switch (id) {
    case VelocitySetId::D1Q3: return "D1Q3";
    case VelocitySetId::D2Q5: return "D2Q5";
    case VelocitySetId::D2Q9: return "D2Q9";
  }
  return "?";
}

VelocitySetId velocity_set_from_string(std::string_view name) {
  if (name == "D1Q3" || name == "d1q3") return VelocitySetId::D1Q3;
  if (name == "D2Q5" || name == "d2q5") return VelocitySetId::D2Q5;
  if (name == "D2Q9" || name == "d2q9") return VelocitySetId::D2Q9;
  throw std::invalid_argument("unknown velocity set '" + std::string(name) + "'");
}

VelocitySet::VelocitySet(VelocitySetId id, int dimension, std::vector<std::array<int, 2>> directions,
                         std::vector<double> weights, double cs2_factor)
    : id_(id),
      dimension_(dimension),
      directions_(std::move(directions)),
      weights_(std::move(weights)),
      cs2_factor_(cs2_factor) {
  for (int i = 0; i < q(); ++i) {
    if (directions_[i][0] == 0 && directions_[i][1] == 0) rest_ = i;
  }
}

// D1Q3 is ordered (+1, 0, -1) to match the row order of the moment matrix.
const VelocitySet& VelocitySet::d1q3() {
  static const VelocitySet set(VelocitySetId::D1Q3, 1, {{1, 0}, {0, 0}, {-1, 0}},
                               {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 2.0 / 3.0);
  return set;
}

const VelocitySet& VelocitySet::d2q5() {
  static const VelocitySet set(VelocitySetId::D2Q5, 2, {{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}},
                               {1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0}, 1.0 / 3.0);
  return set;
}

const VelocitySet& VelocitySet::d2q9() {
  static const VelocitySet set(
      VelocitySetId::D2Q9, 2,
      {{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}},
      {4.0 / 9.0, 1.0 / 9.0, 1.0 / 9.0, 1.0 / 9.0, 1.0 / 9.0, 1.0 / 36.0, 1.0 / 36.0, 1.0 / 36.0,
       1.0 / 36.0},
      1.0 / 3.0);
  return set;
}

const VelocitySet& VelocitySet::get(VelocitySetId id) {
  switch (id) {
    case VelocitySetId::D1Q3: return d1q3();
    case VelocitySetId::D2Q5: return d2q5();
    case VelocitySetId::D2Q9: return d2q9();
  }
  throw std::invalid_argument("unknown velocity set id");
}

}  // namespace lbmlift
