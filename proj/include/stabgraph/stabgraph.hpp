#pragma once

#include "stabgraph/error.hpp"
#include "stabgraph/exactalg.hpp"
#include "stabgraph/polylin.hpp"
#include "stabgraph/graph.hpp"
#include "stabgraph/construct.hpp"
#include "stabgraph/boundary.hpp"
#include "stabgraph/contact.hpp"
#include "stabgraph/level_set.hpp"
#include "stabgraph/harness.hpp"
