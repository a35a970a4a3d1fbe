// Umbrella header for the qudit teleportation library.

#pragma once

#include "gbt/bell.hpp"
#include "gbt/eig.hpp"
#include "gbt/linalg.hpp"
#include "gbt/measure.hpp"
#include "gbt/rng.hpp"
#include "gbt/teleport.hpp"
#include "gbt/verify.hpp"
#include "gbt/weyl.hpp"
