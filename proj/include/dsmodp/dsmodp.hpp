#pragma once

#include "dsmodp/error.hpp"
#include "dsmodp/gfpoly.hpp"
#include "dsmodp/kodaira.hpp"
#include "dsmodp/surface.hpp"
#include "dsmodp/transform.hpp"
#include "dsmodp/ds.hpp"
#include "dsmodp/integral.hpp"
#include "dsmodp/expr.hpp"
