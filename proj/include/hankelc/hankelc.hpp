#pragma once

#include "hankelc/bessel.hpp"
#include "hankelc/cutoff.hpp"
#include "hankelc/distributions.hpp"
#include "hankelc/error.hpp"
#include "hankelc/grid.hpp"
#include "hankelc/hankel.hpp"
#include "hankelc/json_io.hpp"
#include "hankelc/liouville.hpp"
#include "hankelc/multiindex.hpp"
#include "hankelc/multiplier.hpp"
#include "hankelc/polynomial.hpp"
#include "hankelc/quadrature.hpp"
#include "hankelc/rational.hpp"
#include "hankelc/seminorm.hpp"
#include "hankelc/symbolic.hpp"
#include "hankelc/verify.hpp"
