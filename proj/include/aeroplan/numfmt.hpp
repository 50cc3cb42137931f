#pragma once

#include <string>

namespace aeroplan {

// Canonical float rendering for every CSV/JSON surface: 6 significant
// digits, IEEE round-half-even (printf %.6g), negative zero normalized
// to zero. Fixed formatting keeps golden-file outputs byte-identical.
std::string format_sig6(double v);

}  // namespace aeroplan
