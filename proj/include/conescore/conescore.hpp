#pragma once

#include "matrix.hpp"
#include "linalg.hpp"
#include "generators.hpp"
#include "lp.hpp"
#include "cone.hpp"
#include "ranks.hpp"
#include "design.hpp"
#include "verify.hpp"
