#pragma once

#include "cli.hpp"
#include "dag.hpp"
#include "decomposition.hpp"
#include "edge_list.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "json_io.hpp"
#include "metrics.hpp"
#include "node_set.hpp"
#include "oracle.hpp"
#include "solver.hpp"
