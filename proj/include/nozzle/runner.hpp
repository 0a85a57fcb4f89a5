#pragma once

#include "nozzle/config.hpp"

namespace nozzle {

// Exit-code contract shared by all subcommands.
namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kCheckFailure = 2;
inline constexpr int kAbortedMarch = 3;
inline constexpr int kUsage = 64;
inline constexpr int kIo = 74;
}  // namespace exit_code

int run_background(const ExperimentConfig& cfg);
int run_march(const ExperimentConfig& cfg);
int run_verify(const ExperimentConfig& cfg);
int run_ineq(const ExperimentConfig& cfg);

}  // namespace nozzle
