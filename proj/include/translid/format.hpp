#pragma once

#include <string>

namespace translid {

// Shortest decimal string that round-trips to the same double.  Used for
// every number written to TSV output so files are byte-reproducible.
std::string format_double(double value);

}  // namespace translid
