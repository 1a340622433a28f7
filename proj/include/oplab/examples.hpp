#ifndef OPLAB_EXAMPLES_HPP
#define OPLAB_EXAMPLES_HPP

#include <string>
#include <vector>

namespace oplab {

std::vector<std::string> example_names();

/// Runs a canned workbook ("3.6", "3.7", "model-translation"), printing a
/// table of computed constants against their closed forms.  Returns 0 when
/// every check passes, 3 on a numeric mismatch, 2 for an unknown name.
int run_example(const std::string& name, bool explain);

}  // namespace oplab

#endif
