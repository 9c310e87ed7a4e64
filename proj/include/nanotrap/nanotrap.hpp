#pragma once

#include "nanotrap/analysis.hpp"
#include "nanotrap/atom.hpp"
#include "nanotrap/bessel.hpp"
#include "nanotrap/bound.hpp"
#include "nanotrap/constants.hpp"
#include "nanotrap/dielectric.hpp"
#include "nanotrap/errors.hpp"
#include "nanotrap/fiber.hpp"
#include "nanotrap/quadrature.hpp"
#include "nanotrap/trap.hpp"
#include "nanotrap/vdw.hpp"
