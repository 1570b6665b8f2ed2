#pragma once

// Umbrella header for the whole engine.

#include "dotprod/adaptability.hpp"
#include "dotprod/constructions.hpp"
#include "dotprod/counting.hpp"
#include "dotprod/experiments.hpp"
#include "dotprod/geometry.hpp"
#include "dotprod/incidence.hpp"
#include "dotprod/io.hpp"
#include "dotprod/rational.hpp"
