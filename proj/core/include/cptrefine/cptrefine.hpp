#pragma once

#include "cptrefine/causal.hpp"
#include "cptrefine/cpt.hpp"
#include "cptrefine/error.hpp"
#include "cptrefine/ga.hpp"
#include "cptrefine/grouping.hpp"
#include "cptrefine/io.hpp"
#include "cptrefine/metrics.hpp"
#include "cptrefine/parallel.hpp"
#include "cptrefine/partitions.hpp"
#include "cptrefine/refinement.hpp"
#include "cptrefine/report.hpp"
#include "cptrefine/search.hpp"
#include "cptrefine/structural.hpp"
