#pragma once

#include <vector>

#include "scatternet/harness/verify.hpp"

namespace scatternet::harness::detail {

void add_wavefield_checks(std::vector<Check>& out);
void add_scattering_checks(std::vector<Check>& out);
void add_neuralnet_checks(std::vector<Check>& out);
void add_energymodel_checks(std::vector<Check>& out);
void add_optim_checks(std::vector<Check>& out);
void add_harness_checks(std::vector<Check>& out);

}  // namespace scatternet::harness::detail
