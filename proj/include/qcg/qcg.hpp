#pragma once

#include "qcg/bounds.hpp"
#include "qcg/core.hpp"
#include "qcg/errors.hpp"
#include "qcg/families.hpp"
#include "qcg/field.hpp"
#include "qcg/integrate.hpp"
#include "qcg/quadrature.hpp"
#include "qcg/radial_table.hpp"
#include "qcg/sweep.hpp"
#include "qcg/weights.hpp"
