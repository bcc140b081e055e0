#pragma once

#include "lrw/bitset.hpp"
#include "lrw/coloring.hpp"
#include "lrw/decomposition.hpp"
#include "lrw/ehchi.hpp"
#include "lrw/error.hpp"
#include "lrw/generators.hpp"
#include "lrw/gf2.hpp"
#include "lrw/graph.hpp"
#include "lrw/io.hpp"
#include "lrw/lowerbound.hpp"
#include "lrw/lowrw.hpp"
#include "lrw/orderings.hpp"
#include "lrw/parallel.hpp"
#include "lrw/random.hpp"
#include "lrw/width.hpp"
