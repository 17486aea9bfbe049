#pragma once
// Umbrella header.

#include "polyreg/numth.hpp"
#include "polyreg/polygonal.hpp"
#include "polyreg/localrep.hpp"
#include "polyreg/watson.hpp"
#include "polyreg/density.hpp"
#include "polyreg/prodineq.hpp"
#include "polyreg/pipeline.hpp"
#include "polyreg/replay.hpp"
#include "polyreg/regcheck.hpp"
