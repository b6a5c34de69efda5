#pragma once

#include "gbpq/clustering.hpp"
#include "gbpq/engine.hpp"
#include "gbpq/geometry.hpp"
#include "gbpq/pathfinding.hpp"
#include "gbpq/regions.hpp"
#include "gbpq/report.hpp"
#include "gbpq/road_graph.hpp"
#include "gbpq/synthetic.hpp"
#include "gbpq/workload.hpp"
