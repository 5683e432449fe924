#pragma once

#include "subfourier/analysis.hpp"
#include "subfourier/errors.hpp"
#include "subfourier/kernels.hpp"
#include "subfourier/oracle.hpp"
#include "subfourier/states.hpp"
#include "subfourier/units.hpp"
