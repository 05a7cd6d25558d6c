#pragma once

// Declarative measure descriptions:
//   zero | delta(a) | atoms[(a,w),...] | gauss(center,scale) | box(a,b)
//   | cantor | sum[c1*m1, c2*m2, ...] | restrict(m, a, b)
// Weights/coefficients accept complex literals like 1.5, -2i, 0.5+0.25i.

#include <string>

#include "mustar/errors.hpp"
#include "mustar/measure.hpp"

namespace mustar {

Measure parse_measure(const std::string& text);

}  // namespace mustar
