#pragma once

#include "spinstat/angle.hpp"
#include "spinstat/beam.hpp"
#include "spinstat/cond_prob.hpp"
#include "spinstat/error.hpp"
#include "spinstat/ket.hpp"
#include "spinstat/measurement.hpp"
#include "spinstat/perm_stats.hpp"
#include "spinstat/radical.hpp"
#include "spinstat/rational.hpp"
#include "spinstat/rotations.hpp"
#include "spinstat/spin_algebra.hpp"
#include "spinstat/state_file.hpp"
