#pragma once

// Umbrella header for the library.

#include "algtel/bases.hpp"
#include "algtel/cli.hpp"
#include "algtel/expr.hpp"
#include "algtel/hermite.hpp"
#include "algtel/irreducible.hpp"
#include "algtel/polyred.hpp"
#include "algtel/telescoping.hpp"
