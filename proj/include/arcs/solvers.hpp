#pragma once

#include "arcs/arcs_solver.hpp"
#include "arcs/baselines.hpp"
#include "arcs/schedule.hpp"
