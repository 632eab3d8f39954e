// Everything except the operator checks (which need GMP); include
// ncsurf/opcheck.hpp for those.
#pragma once

#include "cohomology.hpp"
#include "cones.hpp"
#include "coxeter.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "latenum.hpp"
#include "lattice.hpp"
#include "marking.hpp"
#include "presets.hpp"
#include "smith.hpp"
#include "surface.hpp"
