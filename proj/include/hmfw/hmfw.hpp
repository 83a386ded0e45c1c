#ifndef HMFW_HMFW_HPP
#define HMFW_HMFW_HPP

// Weight combinatorics for mod p Hilbert modular forms: companion-weight transfer,
// Hasse-invariant descent, theorem hypothesis checks, and tame inertial character
// arithmetic. Everything is header-only; include this to get the lot.

#include "analyze.hpp"
#include "descent.hpp"
#include "enumerate.hpp"
#include "errors.hpp"
#include "hypotheses.hpp"
#include "inertial.hpp"
#include "io.hpp"
#include "shift_operators.hpp"
#include "transfer.hpp"
#include "version.hpp"
#include "weight_space.hpp"

#endif
