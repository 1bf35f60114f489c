#pragma once

#include "polyrank/error.hpp"
#include "polyrank/arith.hpp"
#include "polyrank/dd.hpp"
#include "polyrank/polyhedron.hpp"
#include "polyrank/lattice.hpp"
#include "polyrank/closure.hpp"
#include "polyrank/reverse_rank.hpp"
#include "polyrank/families.hpp"
#include "polyrank/io.hpp"
