#pragma once

// Everything except io.hpp, which also needs nlohmann/json.

#include "bjacobi/bidiagonal.hpp"
#include "bjacobi/constants.hpp"
#include "bjacobi/densities.hpp"
#include "bjacobi/errors.hpp"
#include "bjacobi/experiments.hpp"
#include "bjacobi/hyperg.hpp"
#include "bjacobi/jack.hpp"
#include "bjacobi/log_value.hpp"
#include "bjacobi/partitions.hpp"
#include "bjacobi/quadrature.hpp"
#include "bjacobi/rng.hpp"
#include "bjacobi/sampler.hpp"
