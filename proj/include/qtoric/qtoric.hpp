#pragma once

#include "qtoric/exactmath.hpp"
#include "qtoric/git_model.hpp"
#include "qtoric/curve_classes.hpp"
#include "qtoric/sectors.hpp"
#include "qtoric/cohomology.hpp"
#include "qtoric/insertion.hpp"
#include "qtoric/iseries.hpp"
#include "qtoric/serialize.hpp"
