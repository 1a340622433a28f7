#ifndef OPLAB_GRID_EXPORT_HPP
#define OPLAB_GRID_EXPORT_HPP

#include <string>

#include "oplab/config.hpp"

namespace oplab {

/**
 * Writes "x,y,value" rows (one per grid point, %.17g, LF endings) for one of
 * Q1 | Q2 | Q3 | ratio | L_mineig.  L_mineig slides an 8-point window over
 * the grid ordering and uses lambda = the measured sup of Im z/Im phi(z).
 * Returns the process exit code (0 ok, 2 usage/config, 3 numerical).
 */
int run_grid_export(const AnalysisConfig& cfg, const std::string& quantity,
                    const std::string& out_path);

/**
 * Writes the Gram matrix of the configured space kind over the config's norm
 * points as CSV: one matrix row per line, entries flattened row-major into
 * "re,im" pairs (%.17g).  Same exit-code contract as run_grid_export.
 */
int run_gram_export(const AnalysisConfig& cfg, const std::string& out_path);

}  // namespace oplab

#endif
