// Prints aperture radius against pressure for the default gripper and the
// pressure needed to open it to 22 mm.

#include <cstdio>

#include "softgrip/softgrip.hpp"

int main() {
  const softgrip::GripperAssembly gripper;
  for (double p = 0.0; p <= 40.0; p += 5.0) {
    const auto fw = softgrip::forward(gripper, p);
    std::printf("%5.1f kPa  theta0 %7.3f deg  D %7.4f mm  R_g %8.4f mm\n", p,
                softgrip::rad_to_deg(fw.state.half_angle), fw.wall_distance_mm, fw.aperture_mm);
  }
  std::printf("R_g = 22 mm needs %.4f kPa\n", softgrip::inverse_pressure(gripper, 22.0));
  return 0;
}
