#pragma once

#include "tsallis_ea/engine.hpp"
#include "tsallis_ea/error.hpp"
#include "tsallis_ea/genome.hpp"
#include "tsallis_ea/objectives.hpp"
#include "tsallis_ea/random.hpp"
#include "tsallis_ea/schedules.hpp"
#include "tsallis_ea/selection.hpp"
#include "tsallis_ea/variation.hpp"
