#pragma once

#include "meshfree/analysis.hpp"
#include "meshfree/basis.hpp"
#include "meshfree/collocation.hpp"
#include "meshfree/errors.hpp"
#include "meshfree/models.hpp"
#include "meshfree/nodes.hpp"
#include "meshfree/ode_system.hpp"
#include "meshfree/shape_functions.hpp"
#include "meshfree/weights.hpp"
