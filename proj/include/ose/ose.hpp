#pragma once

#include "ose/basis.hpp"
#include "ose/checks.hpp"
#include "ose/dependence.hpp"
#include "ose/estimators.hpp"
#include "ose/harness.hpp"
#include "ose/quadrature.hpp"
#include "ose/random.hpp"
#include "ose/selection.hpp"
#include "ose/targets.hpp"
