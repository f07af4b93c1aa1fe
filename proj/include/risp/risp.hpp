#pragma once

// Rational inner skew-products on the bidisk: construction, validation,
// fixed-point curves, rotation belts, and torus orbit datasets.

#include "risp/core.hpp"
#include "risp/unipoly.hpp"
#include "risp/bipoly.hpp"
#include "risp/roots.hpp"
#include "risp/mobius.hpp"
#include "risp/rif.hpp"
#include "risp/analysis.hpp"
#include "risp/iterate.hpp"
#include "risp/io.hpp"
#include "risp/svg.hpp"
