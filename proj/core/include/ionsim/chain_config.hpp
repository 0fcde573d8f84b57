#pragma once

#include <string>

#include "ionsim/errors.hpp"

namespace ionsim {

enum class HoppingModel {
    PbcDipolar,   // periodic chain, dipolar 1/d^3 hopping (image-summed kernel)
    OpenDipolar,  // open chain, dipolar 1/d^3 hopping
    OpenNN,       // open chain, nearest-neighbor hopping only
};

HoppingModel hopping_model_from_string(const std::string& name);
std::string to_string(HoppingModel model);

// Parameters of a simulated spin-phonon chain in the paper's units
// (delta_{N/2} = g = 1 by default). delta_target is the zigzag detuning;
// the on-site frequency delta_x is derived from it, never stored.
struct ChainConfig {
    int N = 20;
    double t_C = 1.0;          // Coulomb hopping strength
    double delta_target = 1.0; // target zigzag detuning delta_{N/2} > 0
    double g = 1.0;            // spin-phonon coupling
    double dk_d0 = 0.0;        // optical phase step per site, in [0, 2*pi)
    HoppingModel hopping_model = HoppingModel::PbcDipolar;

    void validate() const; // throws config_error
};

} // namespace ionsim
