#pragma once

namespace homsim {

/// The four input pulses of one coincidence trial (slots i and j of inputs A
/// and B) and the relative phase of each slot after the optical delay.
struct TrialFields {
  double i_a_i = 0.0;
  double i_a_j = 0.0;
  double i_b_i = 0.0;
  double i_b_j = 0.0;
  double dphi_i = 0.0;  // [0, 2*pi)
  double dphi_j = 0.0;  // [0, 2*pi)
};

}  // namespace homsim
