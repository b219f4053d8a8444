#pragma once

#include "urnlab/closedform.hpp"
#include "urnlab/distribution.hpp"
#include "urnlab/error.hpp"
#include "urnlab/limits.hpp"
#include "urnlab/moments.hpp"
#include "urnlab/numerics.hpp"
#include "urnlab/oracle.hpp"
#include "urnlab/plotdata.hpp"
#include "urnlab/polynomial.hpp"
#include "urnlab/process.hpp"
#include "urnlab/scalar.hpp"
#include "urnlab/series.hpp"
#include "urnlab/simulate.hpp"
#include "urnlab/weights.hpp"
