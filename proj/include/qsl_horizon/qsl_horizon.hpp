#pragma once

#include "core.hpp"
#include "dephasing_model.hpp"
#include "figures.hpp"
#include "hawking.hpp"
#include "jc_model.hpp"
#include "numerics.hpp"
#include "qsl_bounds.hpp"
#include "validation.hpp"
