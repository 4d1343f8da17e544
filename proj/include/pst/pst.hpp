// Umbrella header.

#pragma once

#include "pst/charpoly.hpp"
#include "pst/decider.hpp"
#include "pst/io.hpp"
#include "pst/matrix.hpp"
#include "pst/nullspace.hpp"
#include "pst/numeric.hpp"
#include "pst/oracle.hpp"
#include "pst/poly.hpp"
#include "pst/quad.hpp"
#include "pst/support.hpp"
