#include "owpt/units.hpp"

#include <cmath>

namespace owpt {

double source_rms_from_dc(double v_dc) {
  return 2.0 * std::numbers::sqrt2 * v_dc / kPi;
}

}  // namespace owpt
