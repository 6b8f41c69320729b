#pragma once

#include "medmax/scalar.hpp"
#include "medmax/grid.hpp"
#include "medmax/step_curve.hpp"
#include "medmax/rearrangement.hpp"
#include "medmax/params.hpp"
#include "medmax/median.hpp"
#include "medmax/maximal.hpp"
#include "medmax/lorentz.hpp"
#include "medmax/bv.hpp"
#include "medmax/corpus.hpp"
#include "medmax/io.hpp"
#include "medmax/suites.hpp"
