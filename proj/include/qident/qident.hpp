#pragma once

#include "qident/arith.hpp"
#include "qident/bigfloat.hpp"
#include "qident/closed_form.hpp"
#include "qident/dsl.hpp"
#include "qident/etasolve.hpp"
#include "qident/expr.hpp"
#include "qident/io.hpp"
#include "qident/numerics.hpp"
#include "qident/qforms.hpp"
#include "qident/registry.hpp"
#include "qident/series.hpp"
