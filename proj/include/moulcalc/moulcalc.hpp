#pragma once

// Umbrella header for the mould calculus library.

#include "moulcalc/arbor.hpp"
#include "moulcalc/catalog.hpp"
#include "moulcalc/ilsym.hpp"
#include "moulcalc/io.hpp"
#include "moulcalc/normalform.hpp"
#include "moulcalc/sampling.hpp"
#include "moulcalc/symmetry.hpp"
#include "moulcalc/tensor.hpp"
