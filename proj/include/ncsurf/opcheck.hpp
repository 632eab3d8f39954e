// Operator identity checks.
#pragma once

#include "opcheck/cases.hpp"
#include "opcheck/field.hpp"
#include "opcheck/ore.hpp"
#include "opcheck/poly.hpp"
#include "opcheck/series.hpp"
