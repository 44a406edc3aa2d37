#pragma once

#include "equiwing/baseline.hpp"
#include "equiwing/decomposition.hpp"
#include "equiwing/dynamic.hpp"
#include "equiwing/equiwing_comp.hpp"
#include "equiwing/equiwing_index.hpp"
#include "equiwing/errors.hpp"
#include "equiwing/generator.hpp"
#include "equiwing/graph.hpp"
#include "equiwing/serialization.hpp"
#include "equiwing/super_graph.hpp"
#include "equiwing/wing_result.hpp"
