#pragma once

#include "growthlab/characters.hpp"
#include "growthlab/common.hpp"
#include "growthlab/extremal.hpp"
#include "growthlab/family.hpp"
#include "growthlab/field.hpp"
#include "growthlab/fit.hpp"
#include "growthlab/fp_set.hpp"
#include "growthlab/grid.hpp"
#include "growthlab/incidence.hpp"
#include "growthlab/proof_lab.hpp"
#include "growthlab/rational.hpp"
#include "growthlab/report.hpp"
