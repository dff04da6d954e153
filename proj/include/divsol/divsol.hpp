#pragma once

#include "divsol/adapters.hpp"
#include "divsol/color_coding.hpp"
#include "divsol/diverse_bases.hpp"
#include "divsol/errors.hpp"
#include "divsol/framework.hpp"
#include "divsol/graph.hpp"
#include "divsol/matroid.hpp"
#include "divsol/matroid_union.hpp"
#include "divsol/oracle.hpp"
#include "divsol/rational.hpp"
#include "divsol/subset.hpp"
