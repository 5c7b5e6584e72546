#pragma once

#include <stdexcept>
#include <string>

#include "superlase/config.hpp"

namespace superlase {

struct RunOptions {
    std::string out_dir;  // empty: use config output.path
    int threads = 1;
};

// Thrown when a command's primary computation fails to converge (exit code 2).
struct NonConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_nonconverged = 2;

// steady | sweep | spectrum | linewidth | pulling | tlm | figures.
// Writes artifacts under the output directory; returns the process exit code.
int run_command(const std::string& cmd, const RunConfig& cfg, const RunOptions& opts);

}  // namespace superlase
