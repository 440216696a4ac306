#pragma once

#include "ouc/synth/ouc.hpp"
#include "ouc/vessel/vessel.hpp"

namespace fixtures {

inline const ouc::vessel::PlantModel& benchmark_plant() {
  static const auto plant = ouc::vessel::assemble_plant(ouc::vessel::benchmark_vessel(), ouc::vessel::benchmark_autopilot());
  return plant;
}

inline const ouc::synth::OucController& benchmark_controller() {
  static const auto ctrl = ouc::synth::synthesize(benchmark_plant(), {}, {1.15});
  return ctrl;
}

}  // namespace fixtures
