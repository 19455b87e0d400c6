#pragma once

#include "helmreg/energy.hpp"
#include "helmreg/grid.hpp"
#include "helmreg/helmholtz_filter.hpp"
#include "helmreg/norms.hpp"
#include "helmreg/regularizers.hpp"
#include "helmreg/solver.hpp"
#include "helmreg/stencil.hpp"
#include "helmreg/stopping.hpp"
