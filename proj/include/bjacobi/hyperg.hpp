#pragma once

#include "bjacobi/hyperg/at_one.hpp"
#include "bjacobi/hyperg/classical.hpp"
#include "bjacobi/hyperg/identity_2f1.hpp"
#include "bjacobi/hyperg/mhg.hpp"
