#pragma once

#include "bohm/config.hpp"

namespace bohm {

// Each command writes its files under config.output_path and returns the
// process exit code: 0 success, 1 verification failure, 2 config error,
// 3 solver failure.
int cmd_reconstruct(const RunConfig& config);
int cmd_ensemble(const RunConfig& config);
int cmd_verify(const RunConfig& config);
int cmd_figure1(const RunConfig& config);
int cmd_tdse_check(const RunConfig& config);

// `<binary> <subcommand> --config <path> [--output <dir>]`
int run_cli(int argc, const char* const* argv);

}  // namespace bohm
