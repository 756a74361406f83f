#pragma once

#include "corank/applications.hpp"
#include "corank/asymptotics.hpp"
#include "corank/closed_form.hpp"
#include "corank/errors.hpp"
#include "corank/geometry.hpp"
#include "corank/linalg.hpp"
#include "corank/montecarlo.hpp"
#include "corank/rmt.hpp"
#include "corank/specfun.hpp"
#include "corank/structure_constants.hpp"
#include "corank/sturm.hpp"
#include "corank/validation.hpp"
