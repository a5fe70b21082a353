#pragma once

#include "kloost/error.hpp"
#include "kloost/cyclo.hpp"
#include "kloost/field.hpp"
#include "kloost/fqpoly.hpp"
#include "kloost/intpoly.hpp"
#include "kloost/combinat.hpp"
#include "kloost/matrix.hpp"
#include "kloost/enumerate.hpp"
#include "kloost/oracle.hpp"
#include "kloost/kpoly.hpp"
#include "kloost/symbolic.hpp"
#include "kloost/evaluator.hpp"
#include "kloost/json_io.hpp"
