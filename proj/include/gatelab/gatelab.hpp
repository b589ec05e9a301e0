#pragma once

#include "gatelab/constants.hpp"
#include "gatelab/coupling.hpp"
#include "gatelab/dynamics.hpp"
#include "gatelab/errors.hpp"
#include "gatelab/gates.hpp"
#include "gatelab/limits.hpp"
#include "gatelab/species.hpp"
#include "gatelab/thermal.hpp"
